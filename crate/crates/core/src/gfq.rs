//! Exact arithmetic in `F_q`, `q = p^r`.
//!
//! Elements are stored as their coordinate vector in the power basis
//! `1, t, ..., t^{r-1}` of `F_p[t]/(m(t))`, packed into a single integer code
//! `c_0 + c_1 p + ... + c_{r-1} p^{r-1}`. The natural order on codes is the
//! lexicographic order on coordinates read from `c_{r-1}` down to `c_0`; it is
//! the order used for "least" choices (default modulus, primitive element).
//!
//! Multiplication goes through discrete log tables built once per field.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_FIELD_ORDER: u64 = 1 << 16;

/// An element of some `F_q`. Only meaningful together with its [`FieldTable`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// The packed coordinate code.
    pub fn code(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// The field `F_p[t]/(m(t))` with precomputed log/antilog tables.
#[derive(Clone, Debug)]
pub struct FieldTable {
    p: u32,
    r: u32,
    q: u32,
    /// Coefficients of the modulus, constant term first; monic of degree r.
    modulus: Vec<u32>,
    generator: FieldElement,
    exp: Vec<u32>,
    log: Vec<u32>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// Dense polynomials over F_p, constant term first, no trailing zeros.

fn poly_trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut a = a.to_vec();
    poly_trim(&mut a);
    let dm = m.len() - 1;
    let lead_inv = mod_inverse(m[dm], p);
    while a.len() > dm {
        let shift = a.len() - 1 - dm;
        let c = (a[a.len() - 1] as u64 * lead_inv as u64 % p as u64) as u32;
        for (i, &mi) in m.iter().enumerate() {
            let sub = (c as u64 * mi as u64 % p as u64) as u32;
            a[shift + i] = (a[shift + i] + p - sub) % p;
        }
        poly_trim(&mut a);
    }
    a
}

fn poly_mul_mod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    let prod: Vec<u32> = prod.into_iter().map(|c| c as u32).collect();
    poly_rem(&prod, m, p)
}

fn mod_inverse(a: u32, p: u32) -> u32 {
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p as u64 - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    result as u32
}

/// Renders a coefficient list (constant term first) as a polynomial in `x`.
pub fn format_poly(coeffs: &[u32], var: &str) -> String {
    let mut terms = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        terms.push(match (c, i) {
            (_, 0) => c.to_string(),
            (1, _) => mono,
            _ => format!("{c}{mono}"),
        });
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join("+")
    }
}

/// True if the monic polynomial `m` of degree `r` has no monic factor of
/// degree `1..=r/2` over F_p.
pub fn is_irreducible(m: &[u32], p: u32) -> bool {
    let r = m.len() - 1;
    for d in 1..=r / 2 {
        let count = (p as u64).pow(d as u32);
        for low in 0..count {
            let mut f = Vec::with_capacity(d + 1);
            let mut k = low;
            for _ in 0..d {
                f.push((k % p as u64) as u32);
                k /= p as u64;
            }
            f.push(1);
            if poly_rem(m, &f, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Least monic irreducible of degree `r`, ordering lower coefficients by their
/// packed code.
pub fn least_irreducible(p: u32, r: u32) -> Vec<u32> {
    let count = (p as u64).pow(r);
    for low in 0..count {
        let mut m = Vec::with_capacity(r as usize + 1);
        let mut k = low;
        for _ in 0..r {
            m.push((k % p as u64) as u32);
            k /= p as u64;
        }
        m.push(1);
        if is_irreducible(&m, p) {
            return m;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl FieldTable {
    /// Builds `F_{p^r}`. With `modulus = None` the least monic irreducible is used.
    pub fn new(p: u32, r: u32, modulus: Option<&[u32]>) -> Result<FieldTable> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if r == 0 {
            return Err(Error::ZeroDegree);
        }
        let q = (p as u64).checked_pow(r).unwrap_or(u64::MAX);
        if q > MAX_FIELD_ORDER {
            return Err(Error::FieldTooLarge { p: p as u64, r });
        }
        let q = q as u32;
        let modulus = match modulus {
            Some(m) => {
                if m.len() != r as usize + 1 || m[r as usize] != 1 || m.iter().any(|&c| c >= p) {
                    return Err(Error::MalformedModulus { degree: r, p });
                }
                if !is_irreducible(m, p) {
                    return Err(Error::ReducibleModulus(format_poly(m, "x")));
                }
                m.to_vec()
            }
            None => least_irreducible(p, r),
        };

        let to_poly = |code: u32| -> Vec<u32> {
            let mut v = Vec::with_capacity(r as usize);
            let mut k = code;
            for _ in 0..r {
                v.push(k % p);
                k /= p;
            }
            poly_trim(&mut v);
            v
        };
        let from_poly = |v: &[u32]| -> u32 { v.iter().rev().fold(0, |acc, &c| acc * p + c) };

        let order = q as u64 - 1;
        let factors = prime_factors(order);
        let pow_poly = |base: &[u32], mut e: u64| -> Vec<u32> {
            let mut result = vec![1u32];
            let mut b = base.to_vec();
            while e > 0 {
                if e & 1 == 1 {
                    result = poly_mul_mod(&result, &b, &modulus, p);
                }
                b = poly_mul_mod(&b, &b, &modulus, p);
                e >>= 1;
            }
            result
        };
        let generator = (1..q)
            .find(|&code| {
                let x = to_poly(code);
                pow_poly(&x, order) == vec![1]
                    && factors.iter().all(|&l| pow_poly(&x, order / l) != vec![1])
            })
            .expect("multiplicative group of a finite field is cyclic");

        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![0u32; q as usize];
        let g = to_poly(generator);
        let mut cur = vec![1u32];
        for i in 0..order as u32 {
            let code = from_poly(&cur);
            exp.push(code);
            log[code as usize] = i;
            cur = poly_mul_mod(&cur, &g, &modulus, p);
        }

        Ok(FieldTable {
            p,
            r,
            q,
            modulus,
            generator: FieldElement(generator),
            exp,
            log,
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Modulus coefficients, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, k: i64) -> FieldElement {
        FieldElement(k.rem_euclid(self.p as i64) as u32)
    }

    /// Element with the given power-basis coordinates (missing trailing
    /// coordinates are zero). Coordinates are reduced mod p.
    pub fn from_coords(&self, coords: &[u32]) -> FieldElement {
        assert!(coords.len() <= self.r as usize, "too many coordinates");
        FieldElement(
            coords
                .iter()
                .rev()
                .fold(0, |acc, &c| acc * self.p + c % self.p),
        )
    }

    pub fn coords(&self, x: FieldElement) -> Vec<u32> {
        let mut v = Vec::with_capacity(self.r as usize);
        let mut k = x.0;
        for _ in 0..self.r {
            v.push(k % self.p);
            k /= self.p;
        }
        v
    }

    /// Element from its packed code; panics if out of range.
    pub fn element(&self, code: u32) -> FieldElement {
        assert!(code < self.q, "code {code} out of range for F_{}", self.q);
        FieldElement(code)
    }

    /// All `q` elements in code order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(FieldElement)
    }

    /// All nonzero elements in code order.
    pub fn units(&self) -> impl Iterator<Item = FieldElement> {
        (1..self.q).map(FieldElement)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        if self.r == 1 {
            return FieldElement((a.0 + b.0) % self.p);
        }
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0, 1);
        for _ in 0..self.r {
            out += ((x % self.p + y % self.p) % self.p) * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        FieldElement(out)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if self.p == 2 {
            return a;
        }
        let (mut x, mut out, mut place) = (a.0, 0, 1);
        for _ in 0..self.r {
            out += ((self.p - x % self.p) % self.p) * place;
            x /= self.p;
            place *= self.p;
        }
        FieldElement(out)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        let order = self.q - 1;
        let s = (self.log[a.0 as usize] as u64 + self.log[b.0 as usize] as u64) % order as u64;
        FieldElement(self.exp[s as usize])
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        if a.0 == 0 {
            return None;
        }
        let order = self.q - 1;
        Some(FieldElement(
            self.exp[((order - self.log[a.0 as usize]) % order) as usize],
        ))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Option<FieldElement> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if a.0 == 0 {
            return FieldElement::ZERO;
        }
        let order = (self.q - 1) as u64;
        let s = (self.log[a.0 as usize] as u64 % order) * (e % order) % order;
        FieldElement(self.exp[s as usize])
    }

    /// Discrete log to the base of [`primitive_element`](Self::primitive_element).
    pub fn log(&self, a: FieldElement) -> Option<u32> {
        (a.0 != 0).then(|| self.log[a.0 as usize])
    }

    /// `x ↦ x^p`.
    pub fn frobenius(&self, x: FieldElement) -> FieldElement {
        self.pow(x, self.p as u64)
    }

    /// Least generator of `F_q^×` in code order.
    pub fn primitive_element(&self) -> FieldElement {
        self.generator
    }

    pub fn multiplicative_order(&self, a: FieldElement) -> Option<u64> {
        let l = self.log(a)? as u64;
        let order = (self.q - 1) as u64;
        Some(order / gcd(l, order))
    }

    /// Power basis `1, t, ..., t^{r-1}` of `F_q` over `F_p`.
    pub fn fp_basis(&self) -> Vec<FieldElement> {
        (0..self.r).map(|i| FieldElement(self.p.pow(i))).collect()
    }

    /// `{x^d : x ∈ F_q^×}`, the subgroup of index `d`.
    pub fn power_subgroup(&self, d: u64) -> Result<BTreeSet<FieldElement>> {
        let order = (self.q - 1) as u64;
        if d == 0 || order % d != 0 {
            return Err(Error::NotADivisor { d, order });
        }
        Ok(self.units().map(|x| self.pow(x, d)).collect())
    }

    pub fn display(&self, x: FieldElement) -> String {
        if self.r == 1 {
            x.0.to_string()
        } else {
            format_poly(&self.coords(x), "t")
        }
    }
}

impl fmt::Display for FieldTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.r == 1 {
            write!(f, "F_{}", self.p)
        } else {
            write!(
                f,
                "F_{} = F_{}[t]/({})",
                self.q,
                self.p,
                format_poly(&self.modulus, "t")
            )
        }
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f4() -> FieldTable {
        FieldTable::new(2, 2, Some(&[1, 1, 1])).unwrap()
    }

    #[test]
    fn f4_omega_squared() {
        let f = f4();
        let w = f.from_coords(&[0, 1]);
        assert_eq!(f.mul(w, w), f.from_coords(&[1, 1]));
        assert_eq!(f.frobenius(w), f.from_coords(&[1, 1]));
    }

    #[test]
    fn prime_field_is_integers_mod_p() {
        let f = FieldTable::new(3, 1, None).unwrap();
        assert_eq!(f.q(), 3);
        assert_eq!(f.modulus(), &[0, 1]);
        for a in 0..3u32 {
            for b in 0..3u32 {
                assert_eq!(f.add(f.element(a), f.element(b)).code(), (a + b) % 3);
                assert_eq!(f.mul(f.element(a), f.element(b)).code(), (a * b) % 3);
            }
        }
    }

    #[test]
    fn rejects_reducible_and_bad_input() {
        assert_eq!(
            FieldTable::new(2, 2, Some(&[1, 0, 1])).unwrap_err(),
            Error::ReducibleModulus("x^2+1".into())
        );
        assert_eq!(FieldTable::new(4, 1, None).unwrap_err(), Error::NotPrime(4));
        assert_eq!(FieldTable::new(3, 0, None).unwrap_err(), Error::ZeroDegree);
        assert!(matches!(
            FieldTable::new(2, 17, None),
            Err(Error::FieldTooLarge { .. })
        ));
        assert!(matches!(
            FieldTable::new(3, 2, Some(&[1, 1])),
            Err(Error::MalformedModulus { .. })
        ));
    }

    #[test]
    fn default_modulus_is_least() {
        assert_eq!(FieldTable::new(2, 2, None).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(FieldTable::new(3, 2, None).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(
            FieldTable::new(2, 3, None).unwrap().modulus(),
            &[1, 1, 0, 1]
        );
    }

    #[test]
    fn frobenius_fixes_prime_field_and_zero() {
        let f = FieldTable::new(5, 2, None).unwrap();
        for k in 0..5 {
            assert_eq!(f.frobenius(f.from_int(k)), f.from_int(k));
        }
        assert_eq!(f.frobenius(f.zero()), f.zero());
    }

    #[test]
    fn primitive_elements() {
        let f = f4();
        assert_eq!(f.primitive_element(), f.from_coords(&[0, 1]));
        assert_eq!(f.multiplicative_order(f.primitive_element()), Some(3));
        assert_eq!(
            FieldTable::new(3, 1, None)
                .unwrap()
                .primitive_element()
                .code(),
            2
        );
        let f5 = FieldTable::new(5, 1, None).unwrap();
        let g = f5.primitive_element();
        assert_eq!(g.code(), 2);
        let powers: Vec<u32> = (1..=4).map(|e| f5.pow(g, e).code()).collect();
        assert_eq!(powers, vec![2, 4, 3, 1]);
    }

    #[test]
    fn bases() {
        let f = f4();
        assert_eq!(f.fp_basis(), vec![f.one(), f.from_coords(&[0, 1])]);
        let f9 = FieldTable::new(3, 2, None).unwrap();
        assert_eq!(f9.fp_basis().len(), 2);
        let f3 = FieldTable::new(3, 1, None).unwrap();
        assert_eq!(f3.fp_basis(), vec![f3.one()]);
    }

    #[test]
    fn power_subgroups() {
        let f5 = FieldTable::new(5, 1, None).unwrap();
        let sq: Vec<u32> = f5
            .power_subgroup(2)
            .unwrap()
            .into_iter()
            .map(|x| x.code())
            .collect();
        assert_eq!(sq, vec![1, 4]);
        assert_eq!(f5.power_subgroup(1).unwrap().len(), 4);
        let f7 = FieldTable::new(7, 1, None).unwrap();
        let cubes: Vec<u32> = f7
            .power_subgroup(3)
            .unwrap()
            .into_iter()
            .map(|x| x.code())
            .collect();
        assert_eq!(cubes, vec![1, 6]);
        assert_eq!(
            f5.power_subgroup(3).unwrap_err(),
            Error::NotADivisor { d: 3, order: 4 }
        );
    }

    #[test]
    fn display() {
        let f = f4();
        assert_eq!(f.display(f.from_coords(&[1, 1])), "t+1");
        assert_eq!(f.to_string(), "F_4 = F_2[t]/(t^2+t+1)");
    }
}
