//! Matrix models of `GL_n`, `SL_n` and `Sp_{2m}` over `F_q` with their
//! diagonal torus `T`, upper unitriangular Sylow subgroup `U`, and root
//! subgroups `X_α = {x_α(c)}`.
//!
//! Every root is realized by a nilpotent matrix `X_α` with `X_α² = 0` whose
//! support is the set of matrix positions `(i, j)` carrying the torus weight
//! `α`; then `x_α(c) = I + c·X_α`. The first such position is the *primary*
//! position of `α`, where the coordinate of `x_α(c)` is read off.
//!
//! For `Sp_{2m}` the basis is ordered `e_1, ..., e_m, e_{-m}, ..., e_{-1}` and
//! the form is `J = antidiag(1, ..., 1, -1, ..., -1)`, so the Borel subgroup is
//! upper triangular and the torus is `diag(t_1, ..., t_m, t_m⁻¹, ..., t_1⁻¹)`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gfq::{FieldElement, FieldTable};
use crate::limits::Limits;
use crate::matrix::FqMatrix;
use crate::rootdata::{DynkinType, Root, RootSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    GL,
    SL,
    Sp,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "GL" => Ok(Family::GL),
            "SL" => Ok(Family::SL),
            "SP" => Ok(Family::Sp),
            _ => Err(Error::InvalidGroup(format!("unknown family {s:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
struct RootMatrix {
    /// Support of `X_α` with coefficients; the first entry has coefficient 1.
    entries: Vec<(usize, usize, FieldElement)>,
}

impl RootMatrix {
    fn primary(&self) -> (usize, usize) {
        (self.entries[0].0, self.entries[0].1)
    }
}

#[derive(Clone, Debug)]
pub struct LieGroupData {
    family: Family,
    n: usize,
    field: FieldTable,
    root_system: RootSystem,
    form: Option<FqMatrix>,
    positive: Vec<RootMatrix>,
    negative: Vec<RootMatrix>,
    limits: Limits,
}

/// Order of `x`: least `k ≥ 1` with `x^k = 1`.
///
/// Unipotent elements are handled by iterated `p`-th powers, all others by
/// plain repeated multiplication.
pub fn element_order(x: &FqMatrix, f: &FieldTable) -> Result<u64> {
    if x.det(f).is_zero() {
        return Err(Error::Singular);
    }
    if is_unipotent(x, f) {
        return Ok(unipotent_order(x, f));
    }
    let n = x.n();
    let cap = (f.q() as u64).saturating_pow(n as u32);
    let mut y = x.clone();
    let mut k = 1;
    while !y.is_identity() {
        y = y.mul(x, f);
        k += 1;
        assert!(k <= cap, "order exceeds |GL_n(F_q)| bound");
    }
    Ok(k)
}

fn pth_power(x: &FqMatrix, f: &FieldTable) -> FqMatrix {
    let mut y = x.clone();
    for _ in 1..f.p() {
        y = y.mul(x, f);
    }
    y
}

/// Order of a unipotent matrix, a power of `p`, found by iterating `x ↦ x^p`.
pub fn unipotent_order(x: &FqMatrix, f: &FieldTable) -> u64 {
    let mut y = x.clone();
    let mut order = 1;
    while !y.is_identity() {
        y = pth_power(&y, f);
        order *= f.p() as u64;
    }
    order
}

/// `(x - I)^n = 0`.
pub fn is_unipotent(x: &FqMatrix, f: &FieldTable) -> bool {
    let n = x.n();
    let nil = x.sub(&FqMatrix::identity(n), f);
    nil.pow(n as u64, f).is_zero()
}

impl LieGroupData {
    pub fn new(family: Family, n: usize, field: FieldTable) -> Result<LieGroupData> {
        LieGroupData::with_limits(family, n, field, Limits::default())
    }

    pub fn with_limits(
        family: Family,
        n: usize,
        field: FieldTable,
        limits: Limits,
    ) -> Result<LieGroupData> {
        let root_system = match family {
            Family::GL | Family::SL => {
                if n < 2 {
                    return Err(Error::InvalidGroup(format!("{family}_{n}: n ≥ 2 required")));
                }
                RootSystem::new(DynkinType::A, n - 1)?
            }
            Family::Sp => {
                if n < 2 || n % 2 != 0 {
                    return Err(Error::InvalidGroup(format!(
                        "Sp_{n}: n must be even and positive"
                    )));
                }
                if n == 2 {
                    // C_1 coincides with A_1.
                    RootSystem::new(DynkinType::A, 1)?
                } else {
                    RootSystem::new(DynkinType::C, n / 2)?
                }
            }
        };
        let form = (family == Family::Sp).then(|| {
            let mut j = FqMatrix::zero(n);
            for i in 0..n {
                let v = if i < n / 2 {
                    field.one()
                } else {
                    field.neg(field.one())
                };
                j.set(i, n - 1 - i, v);
            }
            j
        });
        let mut g = LieGroupData {
            family,
            n,
            field,
            root_system,
            form,
            positive: Vec::new(),
            negative: Vec::new(),
            limits,
        };
        let mut positive = Vec::new();
        let mut negative = Vec::new();
        for root in g.root_system.positive_roots() {
            positive.push(g.realize(root)?);
            negative.push(g.realize(&root.neg())?);
        }
        g.positive = positive;
        g.negative = negative;
        g.verify_structure()?;
        Ok(g)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &FieldTable {
        &self.field
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.root_system
    }

    pub fn symplectic_form(&self) -> Option<&FqMatrix> {
        self.form.as_ref()
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    pub fn rank(&self) -> usize {
        self.root_system.rank()
    }

    pub fn coxeter_number(&self) -> u32 {
        self.root_system.coxeter_number()
    }

    pub fn name(&self) -> String {
        format!("{}_{}(F_{})", self.family, self.n, self.field.q())
    }

    /// Coordinates of a root in the character group of the diagonal torus:
    /// `e_i - e_j` for GL/SL, `±ε_i ± ε_j` and `±2ε_i` for Sp.
    pub fn epsilon_coords(&self, root: &Root) -> Vec<i64> {
        let c = root.coords();
        match self.family {
            Family::GL | Family::SL => (0..self.n)
                .map(|k| {
                    let cur = if k < self.n - 1 { c[k] } else { 0 };
                    let prev = if k > 0 { c[k - 1] } else { 0 };
                    cur - prev
                })
                .collect(),
            Family::Sp => {
                let m = self.n / 2;
                (0..m)
                    .map(|k| {
                        let prev = if k > 0 { c[k - 1] } else { 0 };
                        if k + 1 == m {
                            2 * c[k] - prev
                        } else {
                            c[k] - prev
                        }
                    })
                    .collect()
            }
        }
    }

    fn position_weight(&self, x: usize) -> Vec<i64> {
        match self.family {
            Family::GL | Family::SL => {
                let mut w = vec![0; self.n];
                w[x] = 1;
                w
            }
            Family::Sp => {
                let m = self.n / 2;
                let mut w = vec![0; m];
                if x < m {
                    w[x] = 1;
                } else {
                    w[self.n - 1 - x] = -1;
                }
                w
            }
        }
    }

    fn realize(&self, root: &Root) -> Result<RootMatrix> {
        let f = &self.field;
        let target = self.epsilon_coords(root);
        let mut support = Vec::new();
        for x in 0..self.n {
            for y in 0..self.n {
                if x == y {
                    continue;
                }
                let wx = self.position_weight(x);
                let wy = self.position_weight(y);
                if wx
                    .iter()
                    .zip(&wy)
                    .map(|(a, b)| a - b)
                    .eq(target.iter().copied())
                {
                    support.push((x, y));
                }
            }
        }
        if support.is_empty() {
            return Err(Error::Verification(format!(
                "no matrix position carries weight {root}"
            )));
        }
        let build = |signs: &[FieldElement]| -> FqMatrix {
            let mut m = FqMatrix::zero(self.n);
            for (&(x, y), &s) in support.iter().zip(signs) {
                m.set(x, y, s);
            }
            m
        };
        let entries_for = |signs: &[FieldElement]| -> Vec<(usize, usize, FieldElement)> {
            support
                .iter()
                .zip(signs)
                .map(|(&(x, y), &s)| (x, y, s))
                .collect()
        };
        let one = f.one();
        let candidates: Vec<Vec<FieldElement>> = match support.len() {
            1 => vec![vec![one]],
            2 => vec![vec![one, one], vec![one, f.neg(one)]],
            k => {
                return Err(Error::Verification(format!(
                    "weight {root} occupies {k} positions"
                )))
            }
        };
        for signs in candidates {
            let x = build(&signs);
            if !x.mul(&x, f).is_zero() {
                continue;
            }
            if let Some(j) = &self.form {
                // x_α(c) = I + cX preserves J iff JX is symmetric (given X² = 0).
                let jx = j.mul(&x, f);
                if jx != jx.transpose() {
                    continue;
                }
            }
            return Ok(RootMatrix {
                entries: entries_for(&signs),
            });
        }
        Err(Error::Verification(format!(
            "no sign choice realizes root {root}"
        )))
    }

    fn root_matrix(&self, root: &Root) -> Result<&RootMatrix> {
        if let Some(i) = self.root_system.positive_index(root) {
            return Ok(&self.positive[i]);
        }
        if root.coords().len() == self.rank() {
            if let Some(i) = self.root_system.positive_index(&root.neg()) {
                return Ok(&self.negative[i]);
            }
        }
        Err(Error::NotARoot(root.coords().to_vec()))
    }

    /// Matrix position where the coordinate of `x_α(c)` is read.
    pub fn primary_position(&self, root: &Root) -> Result<(usize, usize)> {
        Ok(self.root_matrix(root)?.primary())
    }

    /// `x_α(c) = I + c·X_α`.
    pub fn root_subgroup_element(&self, root: &Root, c: FieldElement) -> Result<FqMatrix> {
        let rm = self.root_matrix(root)?;
        Ok(self.root_element_from(rm, c))
    }

    fn root_element_from(&self, rm: &RootMatrix, c: FieldElement) -> FqMatrix {
        let mut m = FqMatrix::identity(self.n);
        for &(x, y, s) in &rm.entries {
            m.set(x, y, self.field.mul(c, s));
        }
        m
    }

    /// `x_α(c) · v`, as row operations.
    fn left_mul_root(&self, rm: &RootMatrix, c: FieldElement, v: &FqMatrix) -> FqMatrix {
        let f = &self.field;
        let mut out = v.clone();
        for &(x, y, s) in &rm.entries {
            let k = f.mul(c, s);
            for col in 0..self.n {
                let val = f.add(out.get(x, col), f.mul(k, v.get(y, col)));
                out.set(x, col, val);
            }
        }
        out
    }

    /// Number of free torus parameters accepted by [`torus_element`](Self::torus_element).
    pub fn torus_parameter_count(&self) -> usize {
        match self.family {
            Family::GL | Family::SL => self.n,
            Family::Sp => self.n / 2,
        }
    }

    pub fn torus_diagonal(&self, params: &[FieldElement]) -> Result<Vec<FieldElement>> {
        let f = &self.field;
        let expected = self.torus_parameter_count();
        if params.len() != expected {
            return Err(Error::ParameterCount {
                expected,
                got: params.len(),
            });
        }
        if params.iter().any(|x| x.is_zero()) {
            return Err(Error::ZeroParameter);
        }
        match self.family {
            Family::GL => Ok(params.to_vec()),
            Family::SL => {
                let prod = params.iter().fold(f.one(), |acc, &x| f.mul(acc, x));
                if prod != f.one() {
                    return Err(Error::DeterminantNotOne);
                }
                Ok(params.to_vec())
            }
            Family::Sp => {
                let mut d = params.to_vec();
                d.extend(params.iter().rev().map(|&x| f.inv(x).expect("nonzero")));
                Ok(d)
            }
        }
    }

    pub fn torus_element(&self, params: &[FieldElement]) -> Result<FqMatrix> {
        Ok(FqMatrix::diagonal(&self.torus_diagonal(params)?))
    }

    pub fn torus_order(&self) -> u128 {
        let units = self.field.q() as u128 - 1;
        match self.family {
            Family::GL => units.pow(self.n as u32),
            Family::SL => units.pow(self.n as u32 - 1),
            Family::Sp => units.pow(self.n as u32 / 2),
        }
    }

    /// Every element of `T`.
    pub fn enumerate_torus(&self) -> Result<Vec<FqMatrix>> {
        let needed = self.torus_order();
        if needed > self.limits.elements as u128 {
            return Err(Error::BoundExceeded {
                what: "torus enumeration",
                needed,
                bound: self.limits.elements,
            });
        }
        let f = &self.field;
        let free = match self.family {
            Family::SL => self.n - 1,
            _ => self.torus_parameter_count(),
        };
        let units: Vec<FieldElement> = f.units().collect();
        let mut out = Vec::with_capacity(needed as usize);
        let mut idx = vec![0usize; free];
        loop {
            let mut params: Vec<FieldElement> = idx.iter().map(|&i| units[i]).collect();
            if self.family == Family::SL {
                let prod = params.iter().fold(f.one(), |acc, &x| f.mul(acc, x));
                params.push(f.inv(prod).expect("nonzero"));
            }
            out.push(self.torus_element(&params)?);
            if !advance(&mut idx, units.len()) {
                break;
            }
        }
        Ok(out)
    }

    /// Generators of `T`: a primitive element in one slot (paired with its
    /// inverse in the next slot for SL).
    pub fn torus_generators(&self) -> Vec<FqMatrix> {
        let f = &self.field;
        let g = f.primitive_element();
        let k = self.torus_parameter_count();
        let slots = if self.family == Family::SL { k - 1 } else { k };
        (0..slots)
            .map(|i| {
                let mut params = vec![f.one(); k];
                params[i] = g;
                if self.family == Family::SL {
                    params[i + 1] = f.inv(g).expect("nonzero");
                }
                self.torus_element(&params).expect("valid torus parameters")
            })
            .collect()
    }

    /// `α(t)` for a diagonal `t`: the scalar by which `t` acts on `X_α`.
    pub fn character(&self, root: &Root, t: &FqMatrix) -> Result<FieldElement> {
        if !t.is_diagonal() {
            return Err(Error::Precondition("torus element must be diagonal".into()));
        }
        let (x, y) = self.primary_position(root)?;
        self.field
            .div(t.get(x, x), t.get(y, y))
            .ok_or(Error::Singular)
    }

    /// Membership in `G`.
    pub fn contains(&self, x: &FqMatrix) -> bool {
        if x.n() != self.n {
            return false;
        }
        let f = &self.field;
        match self.family {
            Family::GL => !x.det(f).is_zero(),
            Family::SL => x.det(f) == f.one(),
            Family::Sp => {
                let j = self.form.as_ref().expect("Sp carries a form");
                x.transpose().mul(j, f).mul(x, f) == *j
            }
        }
    }

    /// Normal-form coordinates `(c_α)` with `x = Π x_α(c_α)` over `Φ⁺` in the
    /// root system's order, computed by peeling factors off the left.
    pub fn u_coordinates(&self, x: &FqMatrix) -> Result<Vec<FieldElement>> {
        if x.n() != self.n || !x.is_upper_unitriangular() {
            return Err(Error::NotInU);
        }
        let f = &self.field;
        let mut v = x.clone();
        let mut coords = Vec::with_capacity(self.positive.len());
        for rm in &self.positive {
            let (i, j) = rm.primary();
            let c = v.get(i, j);
            if !c.is_zero() {
                v = self.left_mul_root(rm, f.neg(c), &v);
            }
            coords.push(c);
        }
        if v.is_identity() {
            Ok(coords)
        } else {
            Err(Error::NotInU)
        }
    }

    /// `Π x_α(c_α)` over `Φ⁺` in order.
    pub fn u_element(&self, coords: &[FieldElement]) -> FqMatrix {
        assert_eq!(coords.len(), self.positive.len());
        let mut m = FqMatrix::identity(self.n);
        for (rm, &c) in self.positive.iter().zip(coords).rev() {
            if !c.is_zero() {
                m = self.left_mul_root(rm, c, &m);
            }
        }
        m
    }

    pub fn in_u(&self, x: &FqMatrix) -> bool {
        self.u_coordinates(x).is_ok()
    }

    /// Coordinate of `x ∈ U` at the simple root `α_s`: the image of `x` in
    /// `U/U_s ≅ X_s ≅ F_q`.
    pub fn simple_coordinate(&self, x: &FqMatrix, s: usize) -> Result<FieldElement> {
        if s >= self.rank() {
            return Err(Error::Precondition(format!(
                "simple index {s} out of range"
            )));
        }
        let coords = self.u_coordinates(x)?;
        let idx = self
            .root_system
            .positive_index(&self.root_system.simple_root(s))
            .expect("simple roots are positive");
        Ok(coords[idx])
    }

    /// `x ∈ U_s`, the product of all positive root subgroups except `X_s`.
    pub fn in_u_s(&self, x: &FqMatrix, s: usize) -> Result<bool> {
        Ok(self.simple_coordinate(x, s)?.is_zero())
    }

    pub fn u_order(&self) -> u128 {
        (self.field.q() as u128).pow(self.positive.len() as u32)
    }

    /// Generators `x_α(λ)` of `U`, one per positive root and `F_p`-basis
    /// element `λ`.
    pub fn u_generators(&self) -> Vec<FqMatrix> {
        let basis = self.field.fp_basis();
        self.positive
            .iter()
            .flat_map(|rm| basis.iter().map(move |&l| self.root_element_from(rm, l)))
            .collect()
    }

    /// Every element of `U` exactly once, as ordered products of root
    /// subgroup elements.
    pub fn enumerate_u(&self) -> Result<impl Iterator<Item = FqMatrix> + '_> {
        let needed = self.u_order();
        if needed > self.limits.elements as u128 {
            return Err(Error::BoundExceeded {
                what: "enumeration of U",
                needed,
                bound: self.limits.elements,
            });
        }
        let q = self.field.q() as usize;
        let mut idx = vec![0usize; self.positive.len()];
        let mut done = false;
        Ok(std::iter::from_fn(move || {
            if done {
                return None;
            }
            let coords: Vec<FieldElement> =
                idx.iter().map(|&i| self.field.element(i as u32)).collect();
            done = !advance(&mut idx, q);
            Some(self.u_element(&coords))
        }))
    }

    fn verify_structure(&self) -> Result<()> {
        let f = &self.field;
        let g = f.primitive_element();
        let roots = self.root_system.all_roots();
        for root in &roots {
            let x = self.root_subgroup_element(root, f.one())?;
            if !self.contains(&x) {
                return Err(Error::Verification(format!(
                    "x_{root}(1) is not in {}",
                    self.name()
                )));
            }
        }
        for t in self.torus_generators() {
            if !self.contains(&t) {
                return Err(Error::Verification(
                    "torus generator outside the group".into(),
                ));
            }
            for root in &roots {
                let a = self.character(root, &t)?;
                for c in [f.one(), g] {
                    let lhs = self.root_subgroup_element(root, c)?.conjugate_by(&t, f);
                    let rhs = self.root_subgroup_element(root, f.mul(a, c))?;
                    if lhs != rhs {
                        return Err(Error::Verification(format!(
                            "T does not normalize X_{root}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Odometer step over `[0, base)^len`; false once it wraps around.
pub(crate) fn advance(idx: &mut [usize], base: usize) -> bool {
    for d in idx.iter_mut() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn field(p: u32, r: u32) -> FieldTable {
        FieldTable::new(p, r, None).unwrap()
    }

    #[test]
    fn orders_of_u_and_t() {
        let g = LieGroupData::new(Family::GL, 3, field(3, 1)).unwrap();
        assert_eq!(g.u_order(), 27);
        assert_eq!(g.torus_order(), 8);
        assert_eq!(g.enumerate_torus().unwrap().len(), 8);
        let sp = LieGroupData::new(Family::Sp, 4, field(3, 1)).unwrap();
        assert_eq!(sp.u_order(), 81);
        assert_eq!(sp.root_system().name(), "C_2");
        assert!(matches!(
            LieGroupData::new(Family::GL, 1, field(2, 1)),
            Err(Error::InvalidGroup(_))
        ));
        assert!(LieGroupData::new(Family::Sp, 3, field(3, 1)).is_err());
    }

    #[test]
    fn root_elements_in_gl() {
        let f = field(3, 1);
        let g = LieGroupData::new(Family::GL, 3, f.clone()).unwrap();
        let x = g.root_subgroup_element(&Root(vec![1, 0]), f.one()).unwrap();
        assert_eq!(
            x,
            FqMatrix::from_ints(&f, &[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]])
        );
        let y = g
            .root_subgroup_element(&Root(vec![-1, -1]), f.from_int(2))
            .unwrap();
        assert_eq!(
            y,
            FqMatrix::from_ints(&f, &[&[1, 0, 0], &[0, 1, 0], &[2, 0, 1]])
        );
        for root in g.root_system().all_roots() {
            assert!(g
                .root_subgroup_element(&root, f.zero())
                .unwrap()
                .is_identity());
        }
        assert!(g
            .root_subgroup_element(&Root(vec![1, -1]), f.one())
            .is_err());
    }

    #[test]
    fn root_elements_are_additive() {
        for (family, n, p, r) in [
            (Family::GL, 3, 2, 2),
            (Family::Sp, 4, 3, 1),
            (Family::Sp, 6, 5, 1),
        ] {
            let f = field(p, r);
            let g = LieGroupData::new(family, n, f.clone()).unwrap();
            for root in g.root_system().all_roots() {
                for a in f.elements() {
                    for b in f.elements() {
                        let lhs = g
                            .root_subgroup_element(&root, a)
                            .unwrap()
                            .mul(&g.root_subgroup_element(&root, b).unwrap(), &f);
                        assert_eq!(lhs, g.root_subgroup_element(&root, f.add(a, b)).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn sp4_long_simple_root() {
        let f = field(5, 1);
        let g = LieGroupData::new(Family::Sp, 4, f.clone()).unwrap();
        let x = g.root_subgroup_element(&Root(vec![0, 1]), f.one()).unwrap();
        let mut expected = FqMatrix::identity(4);
        expected.set(1, 2, f.one());
        assert_eq!(x, expected);
        assert!(g.contains(&x));
        let short = g.root_subgroup_element(&Root(vec![1, 0]), f.one()).unwrap();
        assert!(g.contains(&short));
        assert!(!short.get(0, 1).is_zero() && !short.get(2, 3).is_zero());
    }

    #[test]
    fn torus_elements() {
        let f3 = field(3, 1);
        let g = LieGroupData::new(Family::GL, 2, f3.clone()).unwrap();
        assert_eq!(
            g.torus_element(&[f3.one(), f3.from_int(2)]).unwrap(),
            FqMatrix::from_ints(&f3, &[&[1, 0], &[0, 2]])
        );
        assert_eq!(
            g.torus_element(&[f3.one(), f3.zero()]),
            Err(Error::ZeroParameter)
        );
        let f5 = field(5, 1);
        let sp = LieGroupData::new(Family::Sp, 4, f5.clone()).unwrap();
        let t = sp.torus_element(&[f5.from_int(2), f5.from_int(3)]).unwrap();
        assert_eq!(t, FqMatrix::diagonal(&[2, 3, 2, 3].map(|k| f5.from_int(k))));
        assert!(sp.contains(&t));
        let sl = LieGroupData::new(Family::SL, 2, f5.clone()).unwrap();
        assert_eq!(
            sl.torus_element(&[f5.from_int(2), f5.from_int(2)]),
            Err(Error::DeterminantNotOne)
        );
        assert!(sl.torus_element(&[f5.from_int(2), f5.from_int(3)]).is_ok());
        assert_eq!(sl.enumerate_torus().unwrap().len(), 4);
    }

    #[test]
    fn u_s_membership() {
        let f = field(3, 1);
        let g = LieGroupData::new(Family::GL, 3, f.clone()).unwrap();
        let e23 = FqMatrix::from_ints(&f, &[&[1, 0, 0], &[0, 1, 1], &[0, 0, 1]]);
        let e12 = FqMatrix::from_ints(&f, &[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert!(g.in_u_s(&e23, 0).unwrap());
        assert!(!g.in_u_s(&e12, 0).unwrap());
        assert!(g.in_u_s(&FqMatrix::identity(3), 1).unwrap());
        let diag = FqMatrix::from_ints(&f, &[&[2, 0, 0], &[0, 1, 0], &[0, 0, 2]]);
        assert_eq!(g.in_u_s(&diag, 0), Err(Error::NotInU));
    }

    #[test]
    fn orders_and_unipotence() {
        let f3 = field(3, 1);
        let x = FqMatrix::from_ints(&f3, &[&[1, 1], &[0, 1]]);
        assert_eq!(element_order(&x, &f3).unwrap(), 3);
        let j4 = FqMatrix::from_ints(
            &f3,
            &[&[1, 1, 0, 0], &[0, 1, 1, 0], &[0, 0, 1, 1], &[0, 0, 0, 1]],
        );
        assert_eq!(element_order(&j4, &f3).unwrap(), 9);
        assert_eq!(element_order(&FqMatrix::identity(3), &f3).unwrap(), 1);
        let d = FqMatrix::from_ints(&f3, &[&[1, 0], &[0, 2]]);
        assert!(!is_unipotent(&d, &f3));
        assert_eq!(element_order(&d, &f3).unwrap(), 2);
        let f2 = field(2, 1);
        let e13 = FqMatrix::from_ints(&f2, &[&[1, 0, 1], &[0, 1, 0], &[0, 0, 1]]);
        assert!(is_unipotent(&e13, &f2));
        assert_eq!(element_order(&FqMatrix::zero(2), &f3), Err(Error::Singular));
    }

    #[test]
    fn enumeration_of_u() {
        let g = LieGroupData::new(Family::GL, 2, field(2, 2)).unwrap();
        assert_eq!(g.enumerate_u().unwrap().count(), 4);
        let g = LieGroupData::new(Family::GL, 3, field(3, 1)).unwrap();
        let all: HashSet<FqMatrix> = g.enumerate_u().unwrap().collect();
        assert_eq!(all.len(), 27);
        let sp = LieGroupData::new(Family::Sp, 4, field(3, 1)).unwrap();
        let all: Vec<FqMatrix> = sp.enumerate_u().unwrap().collect();
        assert_eq!(all.len(), 81);
        assert_eq!(all.iter().collect::<HashSet<_>>().len(), 81);
        assert!(all.iter().all(|x| sp.contains(x) && sp.in_u(x)));
        let small = LieGroupData::with_limits(
            Family::GL,
            3,
            field(3, 1),
            Limits {
                elements: 26,
                flags: 10,
            },
        )
        .unwrap();
        assert!(matches!(
            small.enumerate_u(),
            Err(Error::BoundExceeded { needed: 27, .. })
        ));
    }

    #[test]
    fn normal_form_round_trip() {
        let f = field(3, 1);
        let sp = LieGroupData::new(Family::Sp, 4, f.clone()).unwrap();
        for x in sp.enumerate_u().unwrap() {
            let c = sp.u_coordinates(&x).unwrap();
            assert_eq!(sp.u_element(&c), x);
        }
        // Upper unitriangular but not symplectic.
        let mut bad = FqMatrix::identity(4);
        bad.set(0, 3, f.one());
        bad.set(0, 1, f.one());
        assert_eq!(sp.u_coordinates(&bad), Err(Error::NotInU));
    }
}
