//! Complete flags in `F_q^n`, the points of `G/B` for `GL_n` and `SL_n`.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::gfq::{FieldElement, FieldTable};
use crate::groups::{Family, LieGroupData};
use crate::matrix::FqMatrix;

type Row = Vec<FieldElement>;

/// A chain `V_1 ⊂ ... ⊂ V_{n-1}` with each `V_k` stored as its `k × n` reduced
/// row echelon basis, so two flags are equal iff they are the same flag.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Flag {
    n: usize,
    subspaces: Vec<Vec<Row>>,
}

/// Reduced row echelon form; zero rows are dropped.
pub fn rref(mut rows: Vec<Row>, f: &FieldTable) -> Vec<Row> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = f.inv(rows[rank][col]).expect("nonzero pivot");
        for x in rows[rank].iter_mut() {
            *x = f.mul(inv, *x);
        }
        for r in 0..rows.len() {
            if r == rank || rows[r][col].is_zero() {
                continue;
            }
            let factor = rows[r][col];
            for c in 0..ncols {
                let v = f.sub(rows[r][c], f.mul(factor, rows[rank][c]));
                rows[r][c] = v;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    rows
}

fn apply(x: &FqMatrix, rows: &[Row], f: &FieldTable) -> Vec<Row> {
    let n = x.n();
    rows.iter()
        .map(|v| {
            (0..n)
                .map(|i| (0..n).fold(f.zero(), |acc, k| f.add(acc, f.mul(x.get(i, k), v[k]))))
                .collect()
        })
        .collect()
}

fn pivots(rows: &[Row]) -> Vec<usize> {
    rows.iter()
        .map(|r| {
            r.iter()
                .position(|x| !x.is_zero())
                .expect("echelon rows are nonzero")
        })
        .collect()
}

/// The `(k+1)`-dimensional subspaces containing `rows` (a `k`-dimensional
/// subspace in echelon form), one per line in the complement spanned by the
/// non-pivot coordinates.
fn extensions(rows: &[Row], n: usize, f: &FieldTable) -> Vec<Vec<Row>> {
    let piv = pivots(rows);
    let free: Vec<usize> = (0..n).filter(|c| !piv.contains(c)).collect();
    let q = f.q() as usize;
    let mut out = Vec::new();
    // Normalized vectors: first nonzero free coordinate is 1.
    for lead in 0..free.len() {
        let tail = &free[lead + 1..];
        let mut idx = vec![0usize; tail.len()];
        loop {
            let mut w = vec![f.zero(); n];
            w[free[lead]] = f.one();
            for (&c, &i) in tail.iter().zip(&idx) {
                w[c] = f.element(i as u32);
            }
            let mut span = rows.to_vec();
            span.push(w);
            out.push(rref(span, f));
            if !crate::groups::advance(&mut idx, q) {
                break;
            }
        }
    }
    out
}

impl Flag {
    pub fn n(&self) -> usize {
        self.n
    }

    /// `V_k` for `k = 1..n`, as echelon bases.
    pub fn subspaces(&self) -> &[Vec<Row>] {
        &self.subspaces
    }

    /// The flag `span(e_1) ⊂ span(e_1, e_2) ⊂ ...`, fixed by `B`.
    pub fn standard(n: usize, f: &FieldTable) -> Flag {
        let subspaces = (1..n)
            .map(|k| {
                (0..k)
                    .map(|i| {
                        let mut row = vec![f.zero(); n];
                        row[i] = f.one();
                        row
                    })
                    .collect()
            })
            .collect();
        Flag { n, subspaces }
    }

    /// `x·F`, each subspace mapped by `v ↦ xv` and re-echelonized.
    pub fn act(&self, x: &FqMatrix, f: &FieldTable) -> Flag {
        Flag {
            n: self.n,
            subspaces: self
                .subspaces
                .iter()
                .map(|v| rref(apply(x, v, f), f))
                .collect(),
        }
    }
}

/// Number of complete flags in `F_q^n`: `Π_{k=1}^{n} (q^k − 1)/(q − 1)`.
pub fn flag_count(n: usize, q: u64) -> u128 {
    (1..=n as u32)
        .map(|k| (0..k).map(|i| (q as u128).pow(i)).sum::<u128>())
        .product()
}

fn check_flag_bound(n: usize, f: &FieldTable, bound: u64) -> Result<()> {
    let needed = flag_count(n, f.q() as u64);
    if needed > bound as u128 {
        return Err(Error::BoundExceeded {
            what: "flag enumeration",
            needed,
            bound,
        });
    }
    Ok(())
}

/// Every complete flag in `F_q^n`, each exactly once.
pub fn enumerate_flags(n: usize, f: &FieldTable, bound: u64) -> Result<Vec<Flag>> {
    check_flag_bound(n, f, bound)?;
    let mut partial: Vec<Vec<Vec<Row>>> = vec![Vec::new()];
    for _ in 1..n {
        let mut next = Vec::new();
        for chain in partial {
            let top: &[Row] = chain.last().map_or(&[], Vec::as_slice);
            for ext in extensions(top, n, f) {
                let mut c = chain.clone();
                c.push(ext);
                next.push(c);
            }
        }
        partial = next;
    }
    Ok(partial
        .into_iter()
        .map(|subspaces| Flag { n, subspaces })
        .collect())
}

fn require_flag_family(g: &LieGroupData) -> Result<()> {
    match g.family() {
        Family::GL | Family::SL => Ok(()),
        Family::Sp => Err(Error::Precondition(
            "flag computations are implemented for GL and SL only".into(),
        )),
    }
}

/// Flags fixed by every matrix in `set`, found by extending stable
/// subspaces one dimension at a time.
pub fn fixed_flags(g: &LieGroupData, set: &[FqMatrix]) -> Result<Vec<Flag>> {
    require_flag_family(g)?;
    let f = g.field();
    let n = g.n();
    check_flag_bound(n, f, g.limits().flags)?;
    if set.iter().any(|x| x.n() != n || x.det(f).is_zero()) {
        return Err(Error::Singular);
    }
    let stable = |rows: &[Row]| set.iter().all(|x| rref(apply(x, rows, f), f) == rows);
    let mut partial: Vec<Vec<Vec<Row>>> = vec![Vec::new()];
    for _ in 1..n {
        let mut next = Vec::new();
        for chain in partial {
            let top: &[Row] = chain.last().map_or(&[], Vec::as_slice);
            for ext in extensions(top, n, f) {
                if stable(&ext) {
                    let mut c = chain.clone();
                    c.push(ext);
                    next.push(c);
                }
            }
        }
        partial = next;
    }
    Ok(partial
        .into_iter()
        .map(|subspaces| Flag { n, subspaces })
        .collect())
}

/// Orbit sizes of the group generated by `generators` acting on all flags,
/// as a map from orbit size to the number of orbits of that size.
pub fn orbit_decomposition(
    g: &LieGroupData,
    generators: &[FqMatrix],
) -> Result<BTreeMap<usize, usize>> {
    require_flag_family(g)?;
    let f = g.field();
    let flags = enumerate_flags(g.n(), f, g.limits().flags)?;
    let index: HashMap<&Flag, usize> = flags.iter().enumerate().map(|(i, fl)| (fl, i)).collect();
    let mut seen = vec![false; flags.len()];
    let mut sizes = BTreeMap::new();
    for start in 0..flags.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut stack = vec![start];
        let mut size = 0;
        while let Some(i) = stack.pop() {
            size += 1;
            for x in generators {
                let image = flags[i].act(x, f);
                let j = *index.get(&image).ok_or_else(|| {
                    Error::Verification("flag image missing from enumeration".into())
                })?;
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        *sizes.entry(size).or_insert(0) += 1;
    }
    Ok(sizes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn flag_counts() {
        let f2 = FieldTable::new(2, 1, None).unwrap();
        let f3 = FieldTable::new(3, 1, None).unwrap();
        assert_eq!(enumerate_flags(3, &f2, 1000).unwrap().len(), 21);
        assert_eq!(enumerate_flags(2, &f3, 1000).unwrap().len(), 4);
        let all = enumerate_flags(3, &f3, 1000).unwrap();
        assert_eq!(all.len(), 52);
        assert_eq!(all.iter().collect::<HashSet<_>>().len(), 52);
        assert_eq!(flag_count(4, 5), 29016);
        assert!(matches!(
            enumerate_flags(3, &f3, 51),
            Err(Error::BoundExceeded { needed: 52, .. })
        ));
    }

    #[test]
    fn rref_is_canonical() {
        let f = FieldTable::new(3, 1, None).unwrap();
        let a = rref(
            vec![
                vec![f.from_int(2), f.from_int(1), f.zero()],
                vec![f.one(), f.one(), f.one()],
            ],
            &f,
        );
        let b = rref(
            vec![
                vec![f.from_int(0), f.from_int(1), f.from_int(2)],
                vec![f.one(), f.zero(), f.from_int(2)],
            ],
            &f,
        );
        assert_eq!(rref([a.clone(), b.clone()].concat(), &f).len(), 2);
        assert_eq!(a, b);
    }

    #[test]
    fn standard_flag_fixed_by_borel() {
        let f = FieldTable::new(3, 1, None).unwrap();
        let b = FqMatrix::from_ints(&f, &[&[2, 1, 1], &[0, 1, 2], &[0, 0, 2]]);
        let std = Flag::standard(3, &f);
        assert_eq!(std.act(&b, &f), std);
    }
}
