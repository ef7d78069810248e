//! The graded algebra `H*(F_q; F_p)` and its invariants under subgroups of
//! `F_q^×`.
//!
//! For odd `p`, `H*(F_q; F_p) = Λ(a_0, ..., a_{r-1}) ⊗ F_p[b_0, ..., b_{r-1}]`
//! with `|a_i| = 1`, `|b_i| = 2` and `b_i = β(a_i)`; for `p = 2` it is
//! `F_2[b_0, ..., b_{r-1}]` with `|b_i| = 1`. After extending scalars, the
//! multiplication action of `λ ∈ F_q^×` is diagonal with `a_i` and `b_i` both
//! scaled by `λ^{p^i}`. A monomial therefore has weight
//! `Σ (ε_i + e_i) p^i mod (q − 1)`, and it is invariant under the index-`d`
//! subgroup iff that weight vanishes modulo `(q − 1)/d`.

mod oracle;

use std::collections::BTreeMap;
use std::fmt;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gfq::is_prime;

pub use oracle::{
    brute_force_first_nonzero_degree, brute_force_invariant_dimension,
    brute_force_invariant_dimension_in, ORACLE_MAX_DEGREE,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedInvariantModel {
    p: u32,
    r: u32,
    index: u64,
    group_order: u64,
    weights: Vec<u64>,
}

impl GradedInvariantModel {
    /// Model for the invariants of the index-`index` subgroup of `F_{p^r}^×`.
    pub fn new(p: u32, r: u32, index: u64) -> Result<GradedInvariantModel> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if r == 0 {
            return Err(Error::ZeroDegree);
        }
        let q = (p as u64)
            .checked_pow(r)
            .filter(|&q| q <= 1 << 40)
            .ok_or(Error::FieldTooLarge { p: p as u64, r })?;
        let group_order = q - 1;
        if index == 0 || group_order % index != 0 {
            return Err(Error::NotADivisor {
                d: index,
                order: group_order,
            });
        }
        let weights = (0..r)
            .map(|i| (p as u64).pow(i) % group_order.max(1))
            .collect();
        Ok(GradedInvariantModel {
            p,
            r,
            index,
            group_order,
            weights,
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    /// `q − 1`.
    pub fn group_order(&self) -> u64 {
        self.group_order
    }

    /// Weights of `a_i` and `b_i`: `p^i mod (q − 1)`.
    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    /// Invariant weights are the multiples of `(q − 1)/d`.
    pub fn invariance_modulus(&self) -> u64 {
        self.group_order / self.index
    }

    pub fn has_exterior_part(&self) -> bool {
        self.p != 2
    }

    /// Degree of each `b_i`.
    pub fn polynomial_degree(&self) -> u32 {
        if self.p == 2 {
            1
        } else {
            2
        }
    }

    fn check(&self, m: &MonomialKey) -> Result<()> {
        let r = self.r as usize;
        if m.exterior.len() != r || m.exponents.len() != r {
            return Err(Error::Precondition(format!(
                "monomial must have {r} exterior and polynomial slots"
            )));
        }
        if !self.has_exterior_part() && m.exterior.iter().any(|&x| x) {
            return Err(Error::Precondition(
                "no exterior generators when p = 2".into(),
            ));
        }
        Ok(())
    }
}

/// The `ε`/`e` exponent data of a monomial `a^ε ⊗ b^e`, exterior factors in
/// increasing index order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct MonomialKey {
    pub exterior: Vec<bool>,
    pub exponents: Vec<u32>,
}

impl MonomialKey {
    pub fn new(exterior: Vec<bool>, exponents: Vec<u32>) -> MonomialKey {
        MonomialKey {
            exterior,
            exponents,
        }
    }

    pub fn one(r: usize) -> MonomialKey {
        MonomialKey::new(vec![false; r], vec![0; r])
    }

    pub fn degree(&self, model: &GradedInvariantModel) -> u32 {
        self.exterior.iter().filter(|&&x| x).count() as u32
            + model.polynomial_degree() * self.exponents.iter().sum::<u32>()
    }

    pub fn weight(&self, model: &GradedInvariantModel) -> u64 {
        let m = model.group_order.max(1);
        let mut w = 0u64;
        for (i, &p_i) in model.weights.iter().enumerate() {
            let count = self.exterior[i] as u64 + self.exponents[i] as u64;
            w = (w + count % m * p_i) % m;
        }
        w
    }

    pub fn is_invariant(&self, model: &GradedInvariantModel) -> bool {
        self.weight(model) % model.invariance_modulus() == 0
    }
}

impl fmt::Display for MonomialKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.exterior.len();
        let sub = |i: usize| if r == 1 { String::new() } else { i.to_string() };
        let wedge: Vec<String> = (0..r)
            .filter(|&i| self.exterior[i])
            .map(|i| format!("a{}", sub(i)))
            .collect();
        let poly: Vec<String> = (0..r)
            .filter(|&i| self.exponents[i] > 0)
            .map(|i| match self.exponents[i] {
                1 => format!("b{}", sub(i)),
                e => format!("b{}^{e}", sub(i)),
            })
            .collect();
        match (wedge.is_empty(), poly.is_empty()) {
            (true, true) => write!(f, "1"),
            (false, true) => write!(f, "{}", wedge.join("∧")),
            (true, false) => write!(f, "{}", poly.join("·")),
            (false, false) => write!(f, "{}⊗{}", wedge.join("∧"), poly.join("·")),
        }
    }
}

/// A monomial with a coefficient in `{0, ..., p − 1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Monomial {
    pub key: MonomialKey,
    pub coefficient: u32,
}

pub fn monomial_weight(m: &Monomial, model: &GradedInvariantModel) -> Result<u64> {
    model.check(&m.key)?;
    Ok(m.key.weight(model))
}

fn compositions(total: u32, parts: usize, out: &mut Vec<Vec<u32>>, cur: &mut Vec<u32>) {
    if parts == 1 {
        cur.push(total);
        out.push(cur.clone());
        cur.pop();
        return;
    }
    for first in 0..=total {
        cur.push(first);
        compositions(total - first, parts - 1, out, cur);
        cur.pop();
    }
}

/// Every monomial of the given degree.
pub fn monomials_of_degree(model: &GradedInvariantModel, degree: u32) -> Vec<MonomialKey> {
    let r = model.r as usize;
    let mut out = Vec::new();
    let ext_patterns: Vec<Vec<bool>> = if model.has_exterior_part() {
        (0..1u32 << r)
            .map(|mask| (0..r).map(|i| mask >> i & 1 == 1).collect())
            .collect()
    } else {
        vec![vec![false; r]]
    };
    let pd = model.polynomial_degree();
    for exterior in ext_patterns {
        let k = exterior.iter().filter(|&&x| x).count() as u32;
        if k > degree || (degree - k) % pd != 0 {
            continue;
        }
        let mut exps = Vec::new();
        compositions((degree - k) / pd, r, &mut exps, &mut Vec::new());
        for exponents in exps {
            out.push(MonomialKey::new(exterior.clone(), exponents));
        }
    }
    out.sort();
    out
}

/// Invariant monomials of the given degree.
pub fn invariant_monomials(model: &GradedInvariantModel, degree: u32) -> Vec<MonomialKey> {
    monomials_of_degree(model, degree)
        .into_iter()
        .filter(|m| m.is_invariant(model))
        .collect()
}

/// Dimension of the invariants in one degree, counted by weights.
pub fn invariant_dimension(model: &GradedInvariantModel, degree: u32) -> u64 {
    monomials_of_degree(model, degree)
        .iter()
        .filter(|m| m.is_invariant(model))
        .count() as u64
}

/// Degree by which an invariant is guaranteed: `Π b_i^{p−1}` has weight
/// `q − 1` (odd `p`), and `Π b_i` has weight `q − 1` for `p = 2`.
fn search_cap(model: &GradedInvariantModel) -> u32 {
    if model.p == 2 {
        model.r
    } else {
        2 * model.r * (model.p - 1)
    }
}

/// Least positive degree with a nonzero invariant.
pub fn first_nonzero_degree(model: &GradedInvariantModel) -> Result<u32> {
    (1..=search_cap(model))
        .find(|&m| invariant_dimension(model, m) > 0)
        .ok_or_else(|| Error::Verification("no invariant below the search cap".into()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExplicitGenerator {
    pub monomial: MonomialKey,
    pub degree: u32,
    pub weight: u64,
    pub invariance_modulus: u64,
}

/// `a_0∧…∧a_{r−1} ⊗ (b_0⋯b_{r−1})^k` with `k = (p−3)/2` for the squares
/// (`d = 2`, degree `r(p−2)`) and `k = p−2` for all of `F_q^×` (`d = 1`,
/// degree `r(2p−3)`). Degree and invariance are computed and checked.
pub fn explicit_generator(model: &GradedInvariantModel) -> Result<ExplicitGenerator> {
    let p = model.p;
    if p == 2 {
        return Err(Error::Precondition("explicit generator needs odd p".into()));
    }
    let (k, expected_degree) = match model.index {
        1 => (p - 2, model.r * (2 * p - 3)),
        2 => ((p - 3) / 2, model.r * (p - 2)),
        d => {
            return Err(Error::Precondition(format!(
                "explicit generator defined for index 1 or 2, not {d}"
            )))
        }
    };
    let r = model.r as usize;
    let monomial = MonomialKey::new(vec![true; r], vec![k; r]);
    let degree = monomial.degree(model);
    let weight = monomial.weight(model);
    if degree != expected_degree || !monomial.is_invariant(model) {
        return Err(Error::Verification(format!(
            "{monomial}: degree {degree}, weight {weight} mod {}",
            model.group_order
        )));
    }
    Ok(ExplicitGenerator {
        monomial,
        degree,
        weight,
        invariance_modulus: model.invariance_modulus(),
    })
}

/// A finite sum of monomials with coefficients in `F_p`; zero terms are
/// never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedElement {
    terms: BTreeMap<MonomialKey, u32>,
}

impl GradedElement {
    pub fn zero() -> GradedElement {
        GradedElement::default()
    }

    pub fn monomial(key: MonomialKey, coefficient: u32, p: u32) -> GradedElement {
        let mut e = GradedElement::zero();
        e.add_term(key, coefficient as i64, p);
        e
    }

    pub fn add_term(&mut self, key: MonomialKey, coefficient: i64, p: u32) {
        let c = coefficient.rem_euclid(p as i64) as u32;
        let entry = self.terms.entry(key).or_insert(0);
        *entry = (*entry + c) % p;
        if *entry == 0 {
            let zero_keys: Vec<MonomialKey> = self
                .terms
                .iter()
                .filter(|(_, &c)| c == 0)
                .map(|(k, _)| k.clone())
                .collect();
            for k in zero_keys {
                self.terms.remove(&k);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = Monomial> + '_ {
        self.terms.iter().map(|(k, &c)| Monomial {
            key: k.clone(),
            coefficient: c,
        })
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Every term has weight divisible by the model's invariance modulus.
    pub fn is_invariant(&self, model: &GradedInvariantModel) -> bool {
        self.terms.keys().all(|k| k.is_invariant(model))
    }

    pub fn weights(&self, model: &GradedInvariantModel) -> Vec<u64> {
        self.terms.keys().map(|k| k.weight(model)).collect()
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(k, &c)| {
                if c == 1 {
                    k.to_string()
                } else {
                    format!("{c}·{k}")
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// The Bockstein: the derivation with `β(a_i) = b_i`, `β(b_i) = 0` and
/// `β(xy) = β(x)y + (−1)^{|x|} xβ(y)`.
pub fn bockstein(x: &GradedElement, model: &GradedInvariantModel) -> Result<GradedElement> {
    let p = model.p;
    if p == 2 {
        return Err(Error::Precondition(
            "Bockstein is only modelled for odd p".into(),
        ));
    }
    let mut out = GradedElement::zero();
    for (key, &c) in &x.terms {
        model.check(key)?;
        let mut position = 0;
        for i in 0..model.r as usize {
            if !key.exterior[i] {
                continue;
            }
            let mut image = key.clone();
            image.exterior[i] = false;
            image.exponents[i] += 1;
            let sign = if position % 2 == 0 { 1 } else { -1 };
            out.add_term(image, sign * c as i64, p);
            position += 1;
        }
    }
    Ok(out)
}

/// A sum of up to `max_terms` random monomials of degree at most `max_degree`.
pub fn random_element<R: Rng>(
    model: &GradedInvariantModel,
    rng: &mut R,
    max_terms: usize,
    max_degree: u32,
) -> GradedElement {
    let mut e = GradedElement::zero();
    let r = model.r as usize;
    for _ in 0..rng.gen_range(1..=max_terms) {
        let degree = rng.gen_range(0..=max_degree);
        let candidates = monomials_of_degree(model, degree);
        if candidates.is_empty() {
            continue;
        }
        let key = candidates[rng.gen_range(0..candidates.len())].clone();
        debug_assert_eq!(key.exterior.len(), r);
        e.add_term(key, rng.gen_range(1..model.p) as i64, model.p);
    }
    e
}

/// Number of seeded random elements (out of `samples`) on which `β∘β`
/// vanishes.
pub fn bockstein_square_vanishing(
    model: &GradedInvariantModel,
    samples: usize,
    seed: u64,
) -> Result<usize> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut zero = 0;
    for _ in 0..samples {
        let e = random_element(model, &mut rng, 6, 3 * (2 * model.p - 3));
        zero += bockstein(&bockstein(&e, model)?, model)?.is_zero() as usize;
    }
    Ok(zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model(p: u32, r: u32, d: u64) -> GradedInvariantModel {
        GradedInvariantModel::new(p, r, d).unwrap()
    }

    #[test]
    fn weights() {
        let m = model(3, 1, 1);
        let ab = MonomialKey::new(vec![true], vec![1]);
        assert_eq!(ab.weight(&m), 0);
        assert_eq!(ab.degree(&m), 3);
        assert_eq!(MonomialKey::one(1).weight(&m), 0);
        let m = model(5, 2, 1);
        let x = Monomial {
            key: MonomialKey::new(vec![true, true], vec![1, 1]),
            coefficient: 1,
        };
        assert_eq!(monomial_weight(&x, &m).unwrap(), 12);
    }

    #[test]
    fn dimensions() {
        let m = model(3, 1, 1);
        assert_eq!(invariant_dimension(&m, 3), 1);
        assert_eq!(invariant_dimension(&m, 1), 0);
        assert_eq!(invariant_dimension(&m, 0), 1);
        assert_eq!(invariant_dimension(&model(5, 2, 2), 0), 1);
    }

    #[test]
    fn first_degrees() {
        assert_eq!(first_nonzero_degree(&model(5, 1, 1)).unwrap(), 7);
        assert_eq!(first_nonzero_degree(&model(5, 2, 2)).unwrap(), 6);
        assert_eq!(first_nonzero_degree(&model(3, 1, 1)).unwrap(), 3);
        assert_eq!(first_nonzero_degree(&model(2, 1, 1)).unwrap(), 1);
        assert_eq!(first_nonzero_degree(&model(2, 3, 1)).unwrap(), 3);
    }

    #[test]
    fn generators() {
        let g = explicit_generator(&model(5, 1, 2)).unwrap();
        assert_eq!(g.monomial, MonomialKey::new(vec![true], vec![1]));
        assert_eq!((g.degree, g.weight), (3, 2));
        let g = explicit_generator(&model(3, 2, 2)).unwrap();
        assert_eq!(g.monomial, MonomialKey::new(vec![true, true], vec![0, 0]));
        assert_eq!((g.degree, g.weight, g.invariance_modulus), (2, 4, 4));
        let g = explicit_generator(&model(3, 1, 1)).unwrap();
        assert_eq!(g.monomial.to_string(), "a⊗b");
        assert_eq!(g.degree, 3);
        assert!(explicit_generator(&model(2, 2, 1)).is_err());
        assert!(explicit_generator(&model(7, 1, 3)).is_err());
    }

    #[test]
    fn bockstein_rules() {
        let m = model(5, 1, 1);
        let x = GradedElement::monomial(MonomialKey::new(vec![true], vec![3]), 1, 5);
        let bx = bockstein(&x, &m).unwrap();
        assert_eq!(
            bx,
            GradedElement::monomial(MonomialKey::new(vec![false], vec![4]), 1, 5)
        );
        let y = GradedElement::monomial(MonomialKey::new(vec![false], vec![2]), 1, 5);
        assert!(bockstein(&y, &m).unwrap().is_zero());

        let m2 = model(3, 2, 1);
        let a0a1 = GradedElement::monomial(MonomialKey::new(vec![true, true], vec![0, 0]), 1, 3);
        let mut expected = GradedElement::zero();
        expected.add_term(MonomialKey::new(vec![false, true], vec![1, 0]), 1, 3);
        expected.add_term(MonomialKey::new(vec![true, false], vec![0, 1]), -1, 3);
        assert_eq!(bockstein(&a0a1, &m2).unwrap(), expected);
        assert!(bockstein(&bockstein(&a0a1, &m2).unwrap(), &m2)
            .unwrap()
            .is_zero());
        assert!(bockstein(&a0a1, &model(2, 2, 1)).is_err());
    }

    #[test]
    fn model_validation() {
        assert!(GradedInvariantModel::new(4, 1, 1).is_err());
        assert!(GradedInvariantModel::new(2, 2, 2).is_err());
        assert!(GradedInvariantModel::new(3, 0, 1).is_err());
    }

    #[test]
    fn coefficients_cancel() {
        let mut e = GradedElement::zero();
        let k = MonomialKey::new(vec![true], vec![0]);
        e.add_term(k.clone(), 2, 3);
        e.add_term(k, 1, 3);
        assert!(e.is_zero());
    }
}
