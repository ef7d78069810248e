//! Invariant dimensions computed from the linear action itself, without
//! weights: `λ ∈ F_q^×` acts on `H^1 = Hom(F_q, F_p)` by the contragredient
//! of multiplication, and on `Λ^j(H^1) ⊗ S^k(H^1)` by the induced matrices.
//! The invariants are the kernel of `M − I` over `F_p` for `M` the action of
//! a generator `g^d` of the index-`d` subgroup.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::gfq::FieldTable;

use super::GradedInvariantModel;

/// Largest degree the oracle accepts.
pub const ORACLE_MAX_DEGREE: u32 = 40;

const MAX_BLOCK_DIMENSION: usize = 4000;

type Mat = Vec<Vec<u32>>;

fn det_mod(mut m: Mat, p: u32) -> u32 {
    let n = m.len();
    let p64 = p as u64;
    let mut det = 1u64;
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| m[r][col] != 0) else {
            return 0;
        };
        if piv != col {
            m.swap(piv, col);
            det = (p64 - det) % p64;
        }
        det = det * m[col][col] as u64 % p64;
        let inv = inv_mod(m[col][col], p);
        for r in col + 1..n {
            if m[r][col] == 0 {
                continue;
            }
            let factor = m[r][col] as u64 * inv as u64 % p64;
            for c in col..n {
                m[r][c] = ((m[r][c] as u64 + p64 * p64 - factor * m[col][c] as u64) % p64) as u32;
            }
        }
    }
    det as u32
}

fn inv_mod(a: u32, p: u32) -> u32 {
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    result as u32
}

fn rank_mod(mut m: Mat, p: u32) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let p64 = p as u64;
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(piv, rank);
        let inv = inv_mod(m[rank][col], p) as u64;
        for r in rank + 1..rows {
            if m[r][col] == 0 {
                continue;
            }
            let factor = m[r][col] as u64 * inv % p64;
            for c in col..cols {
                m[r][c] = ((m[r][c] as u64 + p64 * p64 - factor * m[rank][c] as u64) % p64) as u32;
            }
        }
        rank += 1;
    }
    rank
}

fn subsets(r: usize, j: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 0u32..1 << r {
        if mask.count_ones() as usize == j {
            out.push((0..r).filter(|&i| mask >> i & 1 == 1).collect());
        }
    }
    out
}

/// `Λ^j(a)` in the basis of `j`-subsets: entry `[T][S]` is the minor on
/// rows `T`, columns `S`.
fn exterior_power(a: &Mat, j: usize, p: u32) -> Mat {
    let basis = subsets(a.len(), j);
    basis
        .iter()
        .map(|t| {
            basis
                .iter()
                .map(|s| {
                    det_mod(
                        t.iter()
                            .map(|&ti| s.iter().map(|&si| a[ti][si]).collect())
                            .collect(),
                        p,
                    )
                })
                .collect()
        })
        .collect()
}

fn exponent_vectors(r: usize, k: u32) -> Vec<Vec<u32>> {
    fn rec(total: u32, parts: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 1 {
            cur.push(total);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for first in 0..=total {
            cur.push(first);
            rec(total - first, parts - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, r, &mut Vec::new(), &mut out);
    out
}

type Poly = HashMap<Vec<u32>, u32>;

fn poly_mul(x: &Poly, y: &Poly, p: u32) -> Poly {
    let mut out: Poly = HashMap::new();
    for (ex, &cx) in x {
        for (ey, &cy) in y {
            let e: Vec<u32> = ex.iter().zip(ey).map(|(a, b)| a + b).collect();
            let entry = out.entry(e).or_insert(0);
            *entry = ((*entry as u64 + cx as u64 * cy as u64) % p as u64) as u32;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// `S^k(a)` in the monomial basis: `x^e ↦ Π_i (a x_i)^{e_i}`.
fn symmetric_power(a: &Mat, k: u32, p: u32) -> Mat {
    let r = a.len();
    let basis = exponent_vectors(r, k);
    let position: BTreeMap<&Vec<u32>, usize> =
        basis.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let images: Vec<Poly> = (0..r)
        .map(|i| {
            (0..r)
                .filter(|&l| a[l][i] != 0)
                .map(|l| {
                    let mut e = vec![0; r];
                    e[l] = 1;
                    (e, a[l][i])
                })
                .collect()
        })
        .collect();
    let mut m = vec![vec![0u32; basis.len()]; basis.len()];
    for (col, e) in basis.iter().enumerate() {
        let mut poly: Poly = HashMap::from([(vec![0; r], 1)]);
        for (i, &ei) in e.iter().enumerate() {
            for _ in 0..ei {
                poly = poly_mul(&poly, &images[i], p);
            }
        }
        for (mono, c) in poly {
            m[position[&mono]][col] = c;
        }
    }
    m
}

fn kronecker(x: &Mat, y: &Mat, p: u32) -> Mat {
    let (nx, ny) = (x.len(), y.len());
    let mut out = vec![vec![0u32; nx * ny]; nx * ny];
    for i in 0..nx {
        for j in 0..nx {
            if x[i][j] == 0 {
                continue;
            }
            for k in 0..ny {
                for l in 0..ny {
                    out[i * ny + k][j * ny + l] =
                        ((x[i][j] as u64 * y[k][l] as u64) % p as u64) as u32;
                }
            }
        }
    }
    out
}

fn fixed_dimension(m: Mat, p: u32) -> usize {
    let n = m.len();
    let mut shifted = m;
    for (i, row) in shifted.iter_mut().enumerate() {
        row[i] = (row[i] + p - 1) % p;
    }
    n - rank_mod(shifted, p)
}

/// Matrix of the action of `λ` on `Hom(F_q, F_p)` in the basis dual to the
/// power basis: the transpose of multiplication by `λ^{-1}`.
fn dual_action(field: &FieldTable, lambda_inverse: crate::gfq::FieldElement) -> Mat {
    let r = field.r() as usize;
    let mut m = vec![vec![0u32; r]; r];
    for j in 0..r {
        let mut unit = vec![0; r];
        unit[j] = 1;
        let image = field.coords(field.mul(lambda_inverse, field.from_coords(&unit)));
        for (i, &c) in image.iter().enumerate() {
            // Transpose: row j, column i.
            m[j][i] = c;
        }
    }
    m
}

/// Dimension of the invariants in `degree` for the index-`index` subgroup
/// of the units of `field`.
pub fn brute_force_invariant_dimension_in(
    field: &FieldTable,
    index: u64,
    degree: u32,
) -> Result<u64> {
    let p = field.p();
    let r = field.r() as usize;
    let order = field.q() as u64 - 1;
    if index == 0 || order % index != 0 {
        return Err(Error::NotADivisor { d: index, order });
    }
    if degree > ORACLE_MAX_DEGREE {
        return Err(Error::BoundExceeded {
            what: "oracle degree",
            needed: degree as u128,
            bound: ORACLE_MAX_DEGREE as u64,
        });
    }
    let h = field.pow(field.primitive_element(), index);
    let a = dual_action(field, field.inv(h).expect("unit"));
    let blocks: Vec<(usize, u32)> = if p == 2 {
        vec![(0, degree)]
    } else {
        (0..=r.min(degree as usize))
            .filter(|&j| (degree as usize - j) % 2 == 0)
            .map(|j| (j, (degree - j as u32) / 2))
            .collect()
    };
    let mut total = 0u64;
    for (j, k) in blocks {
        let ext = exterior_power(&a, j, p);
        let sym_dim = exponent_vectors(r, k).len();
        let needed = ext.len() * sym_dim;
        if needed > MAX_BLOCK_DIMENSION {
            return Err(Error::BoundExceeded {
                what: "oracle block dimension",
                needed: needed as u128,
                bound: MAX_BLOCK_DIMENSION as u64,
            });
        }
        let sym = symmetric_power(&a, k, p);
        total += fixed_dimension(kronecker(&ext, &sym, p), p) as u64;
    }
    Ok(total)
}

/// [`brute_force_invariant_dimension_in`] over the field with the default
/// modulus.
pub fn brute_force_invariant_dimension(model: &GradedInvariantModel, degree: u32) -> Result<u64> {
    let field = FieldTable::new(model.p(), model.r(), None)?;
    brute_force_invariant_dimension_in(&field, model.index(), degree)
}

/// Least positive degree with a nonzero invariant, found with the oracle.
pub fn brute_force_first_nonzero_degree(field: &FieldTable, index: u64) -> Result<u32> {
    let cap = if field.p() == 2 {
        field.r()
    } else {
        2 * field.r() * (field.p() - 1)
    };
    for m in 1..=cap {
        if brute_force_invariant_dimension_in(field, index, m)? > 0 {
            return Ok(m);
        }
    }
    Err(Error::Verification(
        "oracle found no invariant below the search cap".into(),
    ))
}
