//! The torus action on root subgroups: `t·x_α(c)·t⁻¹ = x_α(α(t)c)`, the image
//! of `α: T → F_q^×`, and its index compared against lattice divisibility.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gfq::{gcd, FieldElement};
use crate::groups::{Family, LieGroupData};
use crate::rootdata::{all_types_up_to_rank, LatticeKind, Root, RootSystem};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootActionReport {
    pub root: Root,
    pub label: String,
    /// Codes of the elements of `α(T)`, ascending.
    pub image: Vec<u32>,
    pub index: u64,
    /// Divisors of `q − 1` dividing the weight-lattice divisibility of `α`.
    pub predicted_divisors: Vec<u64>,
}

/// Sweeps `T` and reads off `α(t)` from `t·x_α(1)·t⁻¹`.
pub fn root_action_image(g: &LieGroupData, alpha: &Root) -> Result<RootActionReport> {
    let f = g.field();
    let rs = g.root_system();
    if !rs.is_root(alpha) {
        return Err(Error::NotARoot(alpha.0.clone()));
    }
    let x1 = g.root_subgroup_element(alpha, f.one())?;
    let (px, py) = g.primary_position(alpha)?;
    let scale = x1.get(px, py);
    let mut image: BTreeSet<FieldElement> = BTreeSet::new();
    for t in g.enumerate_torus()? {
        let conj = x1.conjugate_by(&t, f);
        let c = f.div(conj.get(px, py), scale).ok_or(Error::Singular)?;
        if conj != g.root_subgroup_element(alpha, c)? {
            return Err(Error::Verification(format!(
                "{}: conjugate of x_{alpha}(1) is not in the root subgroup",
                g.name()
            )));
        }
        image.insert(c);
    }
    let order = f.q() as u64 - 1;
    for &a in &image {
        if !image.contains(&f.inv(a).ok_or(Error::Singular)?)
            || image.iter().any(|&b| !image.contains(&f.mul(a, b)))
        {
            return Err(Error::Verification(format!(
                "{}: image of {alpha} is not a subgroup",
                g.name()
            )));
        }
    }
    let size = image.len() as u64;
    if size == 0 || order % size != 0 {
        return Err(Error::Verification(format!(
            "{}: |image| = {size} does not divide {order}",
            g.name()
        )));
    }
    Ok(RootActionReport {
        root: alpha.clone(),
        label: alpha.to_string(),
        image: image.iter().map(|x| x.code()).collect(),
        index: order / size,
        predicted_divisors: predicted_index_divisors(
            rs,
            LatticeKind::WeightLattice,
            alpha,
            f.q() as u64,
        )?
        .into_iter()
        .collect(),
    })
}

/// `{n : n | q − 1 and n | divisibility of α in the lattice}`.
pub fn predicted_index_divisors(
    rs: &RootSystem,
    lattice: LatticeKind,
    alpha: &Root,
    q: u64,
) -> Result<BTreeSet<u64>> {
    let m = rs.divisibility_in_lattice(alpha, lattice)?;
    let order = q - 1;
    Ok((1..=order)
        .filter(|n| order % n == 0 && m % n == 0)
        .collect())
}

/// Divisibility of `α` in the character lattice of the diagonal torus of
/// `g`: `Z^n` for GL and Sp, `Z^n/Z(1, ..., 1)` for SL.
pub fn group_lattice_divisibility(g: &LieGroupData, alpha: &Root) -> u64 {
    let e = g.epsilon_coords(alpha);
    match g.family() {
        Family::GL | Family::Sp => e.iter().fold(0, |acc, &c| gcd(acc, c.unsigned_abs())),
        Family::SL => e
            .iter()
            .flat_map(|&a| e.iter().map(move |&b| (a - b).unsigned_abs()))
            .fold(0, gcd),
    }
}

/// The index predicted from the group's own character lattice:
/// `gcd(divisibility, q − 1)`.
pub fn expected_index(g: &LieGroupData, alpha: &Root) -> u64 {
    gcd(
        group_lattice_divisibility(g, alpha),
        g.field().q() as u64 - 1,
    )
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossCheckEntry {
    pub report: RootActionReport,
    pub expected_index: u64,
    pub weight_divisibility: u64,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossCheck {
    pub group: String,
    pub entries: Vec<CrossCheckEntry>,
    pub pass: bool,
}

/// For every root: the computed index equals the prediction from the
/// group's character lattice and divides the weight-lattice divisibility.
pub fn cross_check(g: &LieGroupData) -> Result<CrossCheck> {
    let rs = g.root_system();
    let mut entries = Vec::new();
    for alpha in rs.all_roots() {
        let report = root_action_image(g, &alpha)?;
        let expected = expected_index(g, &alpha);
        let weight_divisibility = rs.divisibility_in_lattice(&alpha, LatticeKind::WeightLattice)?;
        let pass = report.index == expected
            && weight_divisibility % report.index == 0
            && report.predicted_divisors.contains(&report.index);
        entries.push(CrossCheckEntry {
            report,
            expected_index: expected,
            weight_divisibility,
            pass,
        });
    }
    let pass = entries.iter().all(|e| e.pass);
    Ok(CrossCheck {
        group: g.name(),
        entries,
        pass,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisibleRoot {
    pub system: String,
    pub root: String,
    pub divisibility: u64,
    pub long: bool,
}

/// Every positive root, over all Dynkin types of rank at most `max_rank`,
/// whose weight-lattice divisibility exceeds 1.
pub fn weight_lattice_scan(max_rank: usize) -> Result<Vec<DivisibleRoot>> {
    let mut out = Vec::new();
    for (t, rank) in all_types_up_to_rank(max_rank) {
        let rs = RootSystem::new(t, rank)?;
        for alpha in rs.positive_roots() {
            let m = rs.divisibility_in_lattice(alpha, LatticeKind::WeightLattice)?;
            if m > 1 {
                out.push(DivisibleRoot {
                    system: rs.name(),
                    root: alpha.to_string(),
                    divisibility: m,
                    long: rs.is_long(alpha),
                });
            }
        }
    }
    Ok(out)
}

/// The scan finds exactly the long roots of the symplectic-type systems
/// (`C_n`, together with `B_2 ≅ C_2` and `A_1 ≅ C_1`), each with value 2.
pub fn scan_matches_symplectic_long_roots(max_rank: usize) -> Result<bool> {
    let found = weight_lattice_scan(max_rank)?;
    let mut expected = BTreeSet::new();
    for (t, rank) in all_types_up_to_rank(max_rank) {
        let rs = RootSystem::new(t, rank)?;
        if rs.is_symplectic_type() {
            for alpha in rs.positive_roots().iter().filter(|a| rs.is_long(a)) {
                expected.insert((rs.name(), alpha.to_string()));
            }
        }
    }
    let got: BTreeSet<(String, String)> = found
        .iter()
        .map(|d| (d.system.clone(), d.root.clone()))
        .collect();
    Ok(got == expected && found.iter().all(|d| d.divisibility == 2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfq::FieldTable;
    use crate::rootdata::DynkinType;

    fn group(family: Family, n: usize, p: u32, r: u32) -> LieGroupData {
        LieGroupData::new(family, n, FieldTable::new(p, r, None).unwrap()).unwrap()
    }

    fn long_simple(g: &LieGroupData) -> Root {
        let rs = g.root_system();
        (0..rs.rank())
            .map(|s| rs.simple_root(s))
            .find(|a| rs.is_long(a))
            .unwrap()
    }

    #[test]
    fn images() {
        let g = group(Family::GL, 3, 5, 1);
        let rep = root_action_image(&g, &g.root_system().simple_root(0)).unwrap();
        assert_eq!((rep.index, rep.image.len()), (1, 4));

        let sp = group(Family::Sp, 4, 5, 1);
        let rep = root_action_image(&sp, &long_simple(&sp)).unwrap();
        assert_eq!(rep.index, 2);
        assert_eq!(rep.image, vec![1, 4]);

        let sp4 = group(Family::Sp, 4, 2, 2);
        assert_eq!(
            root_action_image(&sp4, &long_simple(&sp4)).unwrap().index,
            1
        );
    }

    #[test]
    fn predictions() {
        let c2 = RootSystem::new(DynkinType::C, 2).unwrap();
        let long = c2.simple_root(1);
        let set = |v: &[u64]| v.iter().copied().collect::<BTreeSet<u64>>();
        assert_eq!(
            predicted_index_divisors(&c2, LatticeKind::WeightLattice, &long, 5).unwrap(),
            set(&[1, 2])
        );
        assert_eq!(
            predicted_index_divisors(&c2, LatticeKind::RootLattice, &long, 5).unwrap(),
            set(&[1])
        );
        let a2 = RootSystem::new(DynkinType::A, 2).unwrap();
        for alpha in a2.positive_roots() {
            assert_eq!(
                predicted_index_divisors(&a2, LatticeKind::WeightLattice, alpha, 7).unwrap(),
                set(&[1])
            );
        }
    }

    #[test]
    fn cross_checks() {
        for g in [
            group(Family::GL, 3, 2, 2),
            group(Family::Sp, 4, 3, 1),
            group(Family::Sp, 4, 2, 1),
            group(Family::SL, 2, 5, 1),
        ] {
            assert!(cross_check(&g).unwrap().pass, "{}", g.name());
        }
        let sp = group(Family::Sp, 4, 3, 1);
        let c = cross_check(&sp).unwrap();
        for e in &c.entries {
            let long = sp.root_system().is_long(&e.report.root);
            assert_eq!(e.report.index, if long { 2 } else { 1 });
        }
        let sl2 = cross_check(&group(Family::SL, 2, 5, 1)).unwrap();
        assert!(sl2.entries.iter().all(|e| e.report.index == 2));
    }

    #[test]
    fn scan() {
        assert!(scan_matches_symplectic_long_roots(4).unwrap());
        let found = weight_lattice_scan(3).unwrap();
        assert!(found.iter().any(|d| d.system == "C_3"));
        assert!(!found.iter().any(|d| d.system == "A_3"));
    }
}
