//! Square matrices over `F_q`.

use std::fmt::Write as _;

use crate::gfq::{FieldElement, FieldTable};

/// An `n × n` matrix over some `F_q`, row-major. Equality and hashing are
/// entrywise, which makes matrices usable as canonical set keys.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FqMatrix {
    n: usize,
    entries: Vec<FieldElement>,
}

impl FqMatrix {
    pub fn zero(n: usize) -> FqMatrix {
        FqMatrix {
            n,
            entries: vec![FieldElement::ZERO; n * n],
        }
    }

    pub fn identity(n: usize) -> FqMatrix {
        let mut m = FqMatrix::zero(n);
        for i in 0..n {
            m.set(i, i, FieldElement::ONE);
        }
        m
    }

    pub fn diagonal(diag: &[FieldElement]) -> FqMatrix {
        let mut m = FqMatrix::zero(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m.set(i, i, d);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<FieldElement>>) -> FqMatrix {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        FqMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    /// Builds a matrix from small integers, reduced into the prime subfield.
    pub fn from_ints(f: &FieldTable, rows: &[&[i64]]) -> FqMatrix {
        FqMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| f.from_int(x)).collect())
                .collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: FieldElement) {
        self.entries[i * self.n + j] = x;
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn mul(&self, other: &FqMatrix, f: &FieldTable) -> FqMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = FqMatrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let cur = out.get(i, j);
                        out.set(i, j, f.add(cur, f.mul(a, b)));
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &FqMatrix, f: &FieldTable) -> FqMatrix {
        FqMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &FqMatrix, f: &FieldTable) -> FqMatrix {
        FqMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| f.sub(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, c: FieldElement, f: &FieldTable) -> FqMatrix {
        FqMatrix {
            n: self.n,
            entries: self.entries.iter().map(|&a| f.mul(c, a)).collect(),
        }
    }

    pub fn transpose(&self) -> FqMatrix {
        let mut t = FqMatrix::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn pow(&self, mut e: u64, f: &FieldTable) -> FqMatrix {
        let mut result = FqMatrix::identity(self.n);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base, f);
            }
            base = base.mul(&base, f);
            e >>= 1;
        }
        result
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| {
            (0..self.n).all(|j| {
                self.get(i, j)
                    == if i == j {
                        FieldElement::ONE
                    } else {
                        FieldElement::ZERO
                    }
            })
        })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|x| x.is_zero())
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn is_upper_unitriangular(&self) -> bool {
        (0..self.n).all(|i| {
            self.get(i, i) == FieldElement::ONE && (0..i).all(|j| self.get(i, j).is_zero())
        })
    }

    pub fn det(&self, f: &FieldTable) -> FieldElement {
        let n = self.n;
        let mut a = self.clone();
        let mut det = FieldElement::ONE;
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a.get(r, col).is_zero()) else {
                return FieldElement::ZERO;
            };
            if pivot != col {
                a.swap_rows(pivot, col);
                det = f.neg(det);
            }
            let pv = a.get(col, col);
            det = f.mul(det, pv);
            let inv = f.inv(pv).expect("nonzero pivot");
            for r in col + 1..n {
                let factor = f.mul(a.get(r, col), inv);
                if !factor.is_zero() {
                    for c in col..n {
                        let v = f.sub(a.get(r, c), f.mul(factor, a.get(col, c)));
                        a.set(r, c, v);
                    }
                }
            }
        }
        det
    }

    /// Gauss–Jordan inverse; `None` when singular.
    pub fn inverse(&self, f: &FieldTable) -> Option<FqMatrix> {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = FqMatrix::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a.get(r, col).is_zero())?;
            a.swap_rows(pivot, col);
            inv.swap_rows(pivot, col);
            let pinv = f.inv(a.get(col, col)).expect("nonzero pivot");
            for c in 0..n {
                a.set(col, c, f.mul(pinv, a.get(col, c)));
                inv.set(col, c, f.mul(pinv, inv.get(col, c)));
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = a.get(r, col);
                if factor.is_zero() {
                    continue;
                }
                for c in 0..n {
                    a.set(r, c, f.sub(a.get(r, c), f.mul(factor, a.get(col, c))));
                    inv.set(r, c, f.sub(inv.get(r, c), f.mul(factor, inv.get(col, c))));
                }
            }
        }
        Some(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.n {
            self.entries.swap(a * self.n + c, b * self.n + c);
        }
    }

    /// `x⁻¹ y⁻¹ x y`.
    pub fn commutator(x: &FqMatrix, y: &FqMatrix, f: &FieldTable) -> FqMatrix {
        let xi = x.inverse(f).expect("commutator of a singular matrix");
        let yi = y.inverse(f).expect("commutator of a singular matrix");
        xi.mul(&yi, f).mul(x, f).mul(y, f)
    }

    /// `g x g⁻¹`.
    pub fn conjugate_by(&self, g: &FqMatrix, f: &FieldTable) -> FqMatrix {
        let gi = g.inverse(f).expect("conjugation by a singular matrix");
        g.mul(self, f).mul(&gi, f)
    }

    /// Entries rendered through the field, rows separated by `;`.
    pub fn render(&self, f: &FieldTable) -> String {
        let mut s = String::from("[");
        for i in 0..self.n {
            if i > 0 {
                s.push_str("; ");
            }
            for j in 0..self.n {
                if j > 0 {
                    s.push(' ');
                }
                let _ = write!(s, "{}", f.display(self.get(i, j)));
            }
        }
        s.push(']');
        s
    }
}
