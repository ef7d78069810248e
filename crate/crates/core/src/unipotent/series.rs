//! Height filtration, central series, commutator containment and exponent of `U`.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::groups::{unipotent_order, LieGroupData};
use crate::matrix::FqMatrix;
use crate::rootdata::Root;

use super::Subgroup;

/// `U_{≥k} = ⟨X_α : ht(α) ≥ k⟩` for `k = 1, ..., h`; the last entry is trivial.
pub fn height_filtration(g: &LieGroupData) -> Result<Vec<Subgroup>> {
    let f = g.field();
    let basis = f.fp_basis();
    let rs = g.root_system();
    let h = rs.coxeter_number() as i64;
    let mut chain = Vec::new();
    for k in 1..=h {
        let mut gens = Vec::new();
        for root in rs.positive_roots().iter().filter(|r| r.level() >= k) {
            for &l in &basis {
                gens.push(g.root_subgroup_element(root, l)?);
            }
        }
        chain.push(Subgroup::generate(gens, g.n(), f, g.limits().elements)?);
    }
    Ok(chain)
}

/// Checks that `chain` runs from `U` down to `1`, each term is normal in `U`,
/// and `[U, chain[k]] ⊆ chain[k+1]`.
///
/// Commutators are taken between generators only, which suffices once every
/// term is known to be normal in `U`.
pub fn is_central_series(g: &LieGroupData, chain: &[Subgroup]) -> Result<bool> {
    let f = g.field();
    let (Some(first), Some(last)) = (chain.first(), chain.last()) else {
        return Ok(false);
    };
    if first.order() as u128 != g.u_order() || !first.iter().all(|x| g.in_u(x)) || last.order() != 1
    {
        return Ok(false);
    }
    let u_gens = g.u_generators();
    for pair in chain.windows(2) {
        let (upper, lower) = (&pair[0], &pair[1]);
        if !lower.is_subgroup_of(upper) {
            return Ok(false);
        }
        for u in &u_gens {
            let ui = u.inverse(f).ok_or(Error::Singular)?;
            for w in lower.generators() {
                if !lower.contains(&u.mul(w, f).mul(&ui, f)) {
                    return Ok(false);
                }
            }
            for v in upper.generators() {
                if !lower.contains(&FqMatrix::commutator(u, v, f)) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// For all positive `α ≠ β` and nonzero `c, c'`, the commutator
/// `[x_α(c), x_β(c')]` has normal-form support inside
/// `{iα + jβ : i, j > 0} ∩ Φ`.
pub fn chevalley_commutator_check(g: &LieGroupData) -> Result<bool> {
    let f = g.field();
    let rs = g.root_system();
    let roots = rs.positive_roots();
    for (ia, alpha) in roots.iter().enumerate() {
        for (ib, beta) in roots.iter().enumerate() {
            if ia == ib {
                continue;
            }
            let mut allowed = HashSet::new();
            for i in 1..=3 {
                for j in 1..=3 {
                    let gamma: Root = alpha.scale(i).add(&beta.scale(j));
                    if let Some(idx) = rs.positive_index(&gamma) {
                        allowed.insert(idx);
                    }
                }
            }
            for c in f.units() {
                let xa = g.root_subgroup_element(alpha, c)?;
                for d in f.units() {
                    let xb = g.root_subgroup_element(beta, d)?;
                    let coords = g.u_coordinates(&FqMatrix::commutator(&xa, &xb, f))?;
                    let escapes = coords
                        .iter()
                        .enumerate()
                        .any(|(idx, c)| !c.is_zero() && !allowed.contains(&idx));
                    if escapes {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// `γ_1 = U`, `γ_{i+1} = [U, γ_i]`, ending with the trivial group.
pub fn lower_central_series(g: &LieGroupData) -> Result<Vec<Subgroup>> {
    let f = g.field();
    let n = g.n();
    let bound = g.limits().elements;
    let u_gens = g.u_generators();
    let mut series = vec![Subgroup::generate(u_gens.clone(), n, f, bound)?];
    // A nilpotent group of order p^N has class below N + 1.
    let max_steps = g.root_system().positive_roots().len() * f.r() as usize + 1;
    while series.last().expect("nonempty").order() > 1 {
        if series.len() > max_steps {
            return Err(Error::Verification(
                "lower central series does not terminate".into(),
            ));
        }
        let current = series.last().expect("nonempty");
        let mut next = Subgroup::trivial(n);
        let mut gens: Vec<FqMatrix> = Vec::new();
        let mut pending: Vec<FqMatrix> = Vec::new();
        for a in &u_gens {
            for v in current.iter() {
                pending.push(FqMatrix::commutator(a, v, f));
            }
        }
        // Normal closure under conjugation by the generators of U.
        while let Some(c) = pending.pop() {
            if next.contains(&c) {
                continue;
            }
            gens.push(c.clone());
            next = Subgroup::generate(gens.clone(), n, f, bound)?;
            for a in &u_gens {
                pending.push(c.conjugate_by(a, f));
            }
        }
        series.push(next);
    }
    Ok(series)
}

/// Nilpotence class: the number of steps for the lower central series to
/// reach `1`.
pub fn nilpotency_class(g: &LieGroupData) -> Result<usize> {
    Ok(lower_central_series(g)?.len() - 1)
}

/// Largest element order in `U` (all orders are powers of `p`, so this is
/// the exponent).
pub fn exponent_of_u(g: &LieGroupData) -> Result<u64> {
    let f = g.field();
    let mut exponent = 1;
    for x in g.enumerate_u()? {
        exponent = exponent.max(unipotent_order(&x, f));
    }
    Ok(exponent)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfq::FieldTable;
    use crate::groups::Family;

    fn group(family: Family, n: usize, p: u32, r: u32) -> LieGroupData {
        LieGroupData::new(family, n, FieldTable::new(p, r, None).unwrap()).unwrap()
    }

    fn orders(chain: &[Subgroup]) -> Vec<usize> {
        chain.iter().map(Subgroup::order).collect()
    }

    #[test]
    fn filtration_orders() {
        assert_eq!(
            orders(&height_filtration(&group(Family::GL, 3, 2, 1)).unwrap()),
            vec![8, 2, 1]
        );
        assert_eq!(
            orders(&height_filtration(&group(Family::GL, 2, 2, 2)).unwrap()),
            vec![4, 1]
        );
        assert_eq!(
            orders(&height_filtration(&group(Family::GL, 2, 5, 1)).unwrap()),
            vec![5, 1]
        );
        assert_eq!(
            orders(&height_filtration(&group(Family::Sp, 4, 3, 1)).unwrap()),
            vec![81, 9, 3, 1]
        );
    }

    #[test]
    fn central_series() {
        for g in [group(Family::GL, 3, 3, 1), group(Family::GL, 4, 3, 1)] {
            let chain = height_filtration(&g).unwrap();
            assert!(is_central_series(&g, &chain).unwrap());
        }
        let g = group(Family::GL, 3, 3, 1);
        let chain = height_filtration(&g).unwrap();
        let artificial = vec![chain[0].clone(), Subgroup::trivial(3)];
        assert!(!is_central_series(&g, &artificial).unwrap());
    }

    #[test]
    fn exponents() {
        assert_eq!(exponent_of_u(&group(Family::GL, 3, 3, 1)).unwrap(), 3);
        assert_eq!(exponent_of_u(&group(Family::GL, 4, 3, 1)).unwrap(), 9);
        assert_eq!(exponent_of_u(&group(Family::GL, 2, 2, 2)).unwrap(), 2);
        assert_eq!(exponent_of_u(&group(Family::GL, 3, 2, 1)).unwrap(), 4);
    }

    #[test]
    fn nilpotency() {
        assert_eq!(nilpotency_class(&group(Family::GL, 4, 2, 1)).unwrap(), 3);
        assert_eq!(nilpotency_class(&group(Family::GL, 2, 3, 1)).unwrap(), 1);
        assert_eq!(nilpotency_class(&group(Family::Sp, 4, 3, 1)).unwrap(), 3);
    }

    #[test]
    fn commutator_containment() {
        assert!(chevalley_commutator_check(&group(Family::GL, 4, 2, 1)).unwrap());
        assert!(chevalley_commutator_check(&group(Family::Sp, 4, 3, 1)).unwrap());
    }
}
