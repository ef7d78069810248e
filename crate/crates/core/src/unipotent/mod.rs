//! Regular unipotent elements, elementary abelian subgroups of them, and
//! the structure of the Sylow subgroup `U` (height filtration, commutators,
//! exponent).
//!
//! For `x ∈ U`, regularity is tested by the coordinate criterion: `x` is
//! regular iff its image in every `U/U_s ≅ F_q` is nonzero. For GL and SL this
//! can be compared against the geometric definition (a unique fixed flag)
//! through [`fixed_flags`].

mod flags;
mod series;
mod subgroup;

use std::collections::HashSet;

pub use flags::{enumerate_flags, fixed_flags, flag_count, orbit_decomposition, rref, Flag};
pub use series::{
    chevalley_commutator_check, exponent_of_u, height_filtration, is_central_series,
    lower_central_series, nilpotency_class,
};
pub use subgroup::Subgroup;

use crate::error::{Error, Result};
use crate::groups::{Family, LieGroupData};
use crate::matrix::FqMatrix;

/// `x ∈ U` lies in no `U_s`.
pub fn is_regular_unipotent(g: &LieGroupData, x: &FqMatrix) -> Result<bool> {
    for s in 0..g.rank() {
        if g.in_u_s(x, s)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// An elementary abelian `p`-subgroup of rank `r` of `U` whose nontrivial
/// elements are all regular unipotent.
#[derive(Clone, Debug)]
pub struct RegularSubgroup {
    generators: Vec<FqMatrix>,
    elements: Vec<FqMatrix>,
}

impl RegularSubgroup {
    pub fn generators(&self) -> &[FqMatrix] {
        &self.generators
    }

    /// All `p^r` elements, in matrix order.
    pub fn elements(&self) -> &[FqMatrix] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

/// `I + J` with `J` the full superdiagonal nilpotent.
fn superdiagonal(g: &LieGroupData, lambda: crate::gfq::FieldElement) -> FqMatrix {
    let mut m = FqMatrix::identity(g.n());
    for i in 0..g.n() - 1 {
        m.set(i, i + 1, lambda);
    }
    m
}

/// The group generated by `I + λJ` for `λ` in the `F_p`-basis of `F_q`.
///
/// Defined for GL and SL of any size; when `n > p` it is abelian but not
/// elementary abelian.
pub fn superdiagonal_subgroup(g: &LieGroupData) -> Result<Subgroup> {
    if g.family() == Family::Sp {
        return Err(Error::Precondition(
            "superdiagonal subgroup is defined for GL and SL".into(),
        ));
    }
    let f = g.field();
    let gens = f
        .fp_basis()
        .into_iter()
        .map(|l| superdiagonal(g, l))
        .collect();
    Subgroup::generate(gens, g.n(), f, g.limits().elements)
}

/// Builds the subgroup `A`:
///
/// * GL/SL with `n ≤ p`: generated by `I + λJ`, `λ` running over the
///   `F_p`-basis of `F_q`;
/// * Sp with Coxeter number at most `p` and `q = p`: the cyclic group
///   generated by `Π_s x_{α_s}(1)`.
///
/// All defining properties are checked before returning.
pub fn build_regular_subgroup(g: &LieGroupData) -> Result<RegularSubgroup> {
    let f = g.field();
    let p = f.p() as u64;
    let h = g.coxeter_number() as u64;
    if h > p {
        return Err(Error::Precondition(format!(
            "{} has Coxeter number {h} > p = {p}",
            g.name()
        )));
    }
    let generators: Vec<FqMatrix> = match g.family() {
        Family::GL | Family::SL => f
            .fp_basis()
            .into_iter()
            .map(|l| superdiagonal(g, l))
            .collect(),
        Family::Sp => {
            if f.r() != 1 {
                return Err(Error::NotConstructed(format!(
                    "{}: a rank-{} subgroup is only constructed for GL/SL or q = p",
                    g.name(),
                    f.r()
                )));
            }
            let mut x = FqMatrix::identity(g.n());
            for s in 0..g.rank() {
                let root = g.root_system().simple_root(s);
                x = x.mul(&g.root_subgroup_element(&root, f.one())?, f);
            }
            vec![x]
        }
    };
    let closure = Subgroup::generate(generators.clone(), g.n(), f, g.limits().elements)?;
    let a = RegularSubgroup {
        generators,
        elements: closure.elements(),
    };
    verify_regular_subgroup(g, &a)?;
    Ok(a)
}

fn verify_regular_subgroup(g: &LieGroupData, a: &RegularSubgroup) -> Result<()> {
    let f = g.field();
    let expected = (f.p() as usize).pow(f.r());
    let fail = |msg: String| Err(Error::Verification(format!("{}: {msg}", g.name())));
    if a.order() != expected {
        return fail(format!("|A| = {}, expected {expected}", a.order()));
    }
    for (i, x) in a.generators.iter().enumerate() {
        for y in &a.generators[i + 1..] {
            if x.mul(y, f) != y.mul(x, f) {
                return fail("generators do not commute".into());
            }
        }
    }
    for x in &a.elements {
        if !g.contains(x) {
            return fail("element outside the group".into());
        }
        if x.is_identity() {
            continue;
        }
        if !x.pow(f.p() as u64, f).is_identity() {
            return fail("element of order other than p".into());
        }
        if !is_regular_unipotent(g, x)? {
            return fail("nontrivial element is not regular".into());
        }
    }
    Ok(())
}

/// Whether `a ↦ (coordinate of a at α_s)` maps `elements` bijectively onto
/// `F_q`, i.e. whether `A → U → U/U_s` is an isomorphism.
pub fn composite_iso_check(g: &LieGroupData, elements: &[FqMatrix], s: usize) -> Result<bool> {
    let distinct: HashSet<&FqMatrix> = elements.iter().collect();
    let mut image = HashSet::new();
    for x in &distinct {
        image.insert(g.simple_coordinate(x, s)?);
    }
    let q = g.field().q() as usize;
    Ok(distinct.len() == q && image.len() == q)
}
