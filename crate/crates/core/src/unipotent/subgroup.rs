use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::gfq::FieldTable;
use crate::matrix::FqMatrix;

/// A finite matrix group materialized by closure from its generators.
#[derive(Clone, Debug)]
pub struct Subgroup {
    generators: Vec<FqMatrix>,
    elements: HashSet<FqMatrix>,
}

impl Subgroup {
    /// Breadth-first closure of `generators` under right multiplication.
    pub fn generate(
        generators: Vec<FqMatrix>,
        n: usize,
        f: &FieldTable,
        bound: u64,
    ) -> Result<Subgroup> {
        let identity = FqMatrix::identity(n);
        let mut elements = HashSet::new();
        elements.insert(identity.clone());
        let mut queue = VecDeque::from([identity]);
        while let Some(x) = queue.pop_front() {
            for g in &generators {
                let y = x.mul(g, f);
                if !elements.contains(&y) {
                    if elements.len() as u64 >= bound {
                        return Err(Error::BoundExceeded {
                            what: "subgroup closure",
                            needed: elements.len() as u128 + 1,
                            bound,
                        });
                    }
                    elements.insert(y.clone());
                    queue.push_back(y);
                }
            }
        }
        Ok(Subgroup {
            generators,
            elements,
        })
    }

    pub fn trivial(n: usize) -> Subgroup {
        Subgroup {
            generators: Vec::new(),
            elements: HashSet::from([FqMatrix::identity(n)]),
        }
    }

    pub fn generators(&self) -> &[FqMatrix] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: &FqMatrix) -> bool {
        self.elements.contains(x)
    }

    /// Elements in matrix order.
    pub fn elements(&self) -> Vec<FqMatrix> {
        let mut v: Vec<FqMatrix> = self.elements.iter().cloned().collect();
        v.sort();
        v
    }

    pub fn iter(&self) -> impl Iterator<Item = &FqMatrix> {
        self.elements.iter()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.generators.iter().all(|g| other.contains(g))
    }
}
