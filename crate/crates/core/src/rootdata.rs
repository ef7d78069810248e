//! Reduced crystallographic root systems in simple-root coordinates.
//!
//! Cartan matrices follow the convention `C[i][j] = <α_i^∨, α_j>`, so the
//! fundamental-weight coordinates of a root with simple-root coordinates `c`
//! are `C·c`, and the weight coordinates of `α_j` are column `j` of `C`.
//! Simple roots are numbered as in Bourbaki.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gfq::{gcd, is_prime};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum DynkinType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl DynkinType {
    pub const ALL: [DynkinType; 7] = [
        DynkinType::A,
        DynkinType::B,
        DynkinType::C,
        DynkinType::D,
        DynkinType::E,
        DynkinType::F,
        DynkinType::G,
    ];

    pub fn is_valid_rank(self, rank: usize) -> bool {
        match self {
            DynkinType::A => rank >= 1,
            DynkinType::B | DynkinType::C => rank >= 2,
            DynkinType::D => rank >= 4,
            DynkinType::E => (6..=8).contains(&rank),
            DynkinType::F => rank == 4,
            DynkinType::G => rank == 2,
        }
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for DynkinType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(DynkinType::A),
            "B" => Ok(DynkinType::B),
            "C" => Ok(DynkinType::C),
            "D" => Ok(DynkinType::D),
            "E" => Ok(DynkinType::E),
            "F" => Ok(DynkinType::F),
            "G" => Ok(DynkinType::G),
            _ => Err(Error::InvalidDynkin(s.to_string())),
        }
    }
}

/// Which lattice a root is regarded in: `ZΦ` (adjoint type) or the weight
/// lattice `Λ` (simply connected type).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum LatticeKind {
    RootLattice,
    WeightLattice,
}

impl FromStr for LatticeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "root" | "root-lattice" => Ok(LatticeKind::RootLattice),
            "weight" | "weight-lattice" => Ok(LatticeKind::WeightLattice),
            _ => Err(Error::Precondition(format!("unknown lattice {s:?}"))),
        }
    }
}

/// A root in simple-root coordinates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Root(pub Vec<i64>);

impl Root {
    pub fn simple(rank: usize, s: usize) -> Root {
        let mut v = vec![0; rank];
        v[s] = 1;
        Root(v)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    /// Signed height `Σ c_s`.
    pub fn level(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0) && self.0.iter().any(|&c| c > 0)
    }

    pub fn neg(&self) -> Root {
        Root(self.0.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &Root) -> Root {
        Root(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, k: i64) -> Root {
        Root(self.0.iter().map(|c| k * c).collect())
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, &c) in self.0.iter().enumerate() {
            match c {
                0 => {}
                1 => terms.push(format!("a{}", i + 1)),
                -1 => terms.push(format!("-a{}", i + 1)),
                _ => terms.push(format!("{c}a{}", i + 1)),
            }
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join("+").replace("+-", "-"))
        }
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    dynkin_type: DynkinType,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    /// Squared lengths of the simple roots, scaled so the shortest is 1 or 2.
    simple_norms: Vec<i64>,
    positive_roots: Vec<Root>,
}

fn cartan_matrix(t: DynkinType, n: usize) -> (Vec<Vec<i64>>, Vec<i64>) {
    let mut c = vec![vec![0i64; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize| {
        c[i][j] = -1;
        c[j][i] = -1;
    };
    let mut norms = vec![2i64; n];
    match t {
        DynkinType::A => (0..n.saturating_sub(1)).for_each(|i| link(i, i + 1)),
        DynkinType::B | DynkinType::C => (0..n - 1).for_each(|i| link(i, i + 1)),
        DynkinType::D => {
            (0..n - 2).for_each(|i| link(i, i + 1));
            link(n - 3, n - 1);
        }
        DynkinType::E => {
            link(0, 2);
            link(1, 3);
            (2..n - 1).for_each(|i| link(i, i + 1));
        }
        DynkinType::F => {
            link(0, 1);
            link(1, 2);
            link(2, 3);
        }
        DynkinType::G => link(0, 1),
    }
    match t {
        DynkinType::B => {
            // α_n short.
            c[n - 1][n - 2] = -2;
            norms = vec![2; n];
            norms[n - 1] = 1;
        }
        DynkinType::C => {
            // α_n long; its column is (0, ..., -2, 2).
            c[n - 2][n - 1] = -2;
            norms = vec![2; n];
            norms[n - 1] = 4;
        }
        DynkinType::F => {
            c[2][1] = -2;
            norms = vec![2, 2, 1, 1];
        }
        DynkinType::G => {
            c[0][1] = -3;
            norms = vec![2, 6];
        }
        _ => {}
    }
    (c, norms)
}

impl RootSystem {
    pub fn new(dynkin_type: DynkinType, rank: usize) -> Result<RootSystem> {
        if !dynkin_type.is_valid_rank(rank) {
            return Err(Error::InvalidDynkin(format!("{dynkin_type}_{rank}")));
        }
        let (cartan, simple_norms) = cartan_matrix(dynkin_type, rank);
        for i in 0..rank {
            for j in 0..rank {
                assert_eq!(
                    cartan[i][j] * simple_norms[i],
                    cartan[j][i] * simple_norms[j],
                    "Cartan matrix of {dynkin_type}_{rank} is not symmetrized by the norms"
                );
            }
        }
        if dynkin_type == DynkinType::C {
            let col = rank - 1;
            assert!(
                (0..rank).all(|i| cartan[i][col] % 2 == 0),
                "C_n convention: the long simple root column must be even"
            );
        }

        // Closure of the simple roots under simple reflections, positive part.
        let mut seen: BTreeSet<Root> = BTreeSet::new();
        let mut queue = VecDeque::new();
        for s in 0..rank {
            let r = Root::simple(rank, s);
            seen.insert(r.clone());
            queue.push_back(r);
        }
        while let Some(beta) = queue.pop_front() {
            for i in 0..rank {
                let pairing: i64 = (0..rank).map(|j| cartan[i][j] * beta.0[j]).sum();
                let mut image = beta.0.clone();
                image[i] -= pairing;
                let image = Root(image);
                if image.is_positive() && seen.insert(image.clone()) {
                    queue.push_back(image);
                }
            }
        }
        let mut positive_roots: Vec<Root> = seen.into_iter().collect();
        positive_roots.sort_by(|a, b| a.level().cmp(&b.level()).then_with(|| b.cmp(a)));

        let rs = RootSystem {
            dynkin_type,
            rank,
            cartan,
            simple_norms,
            positive_roots,
        };
        let h = rs.coxeter_number() as usize;
        assert_eq!(
            rs.positive_roots.len() * 2,
            rank * h,
            "|Φ+| = rank·h/2 fails"
        );
        Ok(rs)
    }

    pub fn dynkin_type(&self) -> DynkinType {
        self.dynkin_type
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Positive roots ordered by height, then with simple roots in index order.
    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    /// `Φ⁺` followed by `-Φ⁺`.
    pub fn all_roots(&self) -> Vec<Root> {
        let mut all = self.positive_roots.clone();
        all.extend(self.positive_roots.iter().map(Root::neg));
        all
    }

    pub fn simple_root(&self, s: usize) -> Root {
        Root::simple(self.rank, s)
    }

    pub fn is_root(&self, v: &Root) -> bool {
        v.0.len() == self.rank
            && (self.positive_index(v).is_some() || self.positive_index(&v.neg()).is_some())
    }

    /// Position of a positive root in [`positive_roots`](Self::positive_roots).
    pub fn positive_index(&self, v: &Root) -> Option<usize> {
        self.positive_roots.iter().position(|r| r == v)
    }

    pub fn height(&self, root: &Root) -> Result<u32> {
        if root.0.len() == self.rank && self.positive_index(root).is_some() {
            Ok(root.level() as u32)
        } else {
            Err(Error::NotARoot(root.0.clone()))
        }
    }

    pub fn max_height(&self) -> u32 {
        self.positive_roots.last().map_or(0, |r| r.level() as u32)
    }

    /// One plus the largest root height.
    pub fn coxeter_number(&self) -> u32 {
        self.max_height() + 1
    }

    pub fn highest_root(&self) -> &Root {
        self.positive_roots.last().expect("nonempty root system")
    }

    /// No nonzero simple-root coefficient of a positive root is divisible by `p`.
    pub fn is_good_prime(&self, p: u64) -> bool {
        self.positive_roots
            .iter()
            .all(|r| r.0.iter().all(|&c| c == 0 || c % p as i64 != 0))
    }

    pub fn good_primes_up_to(&self, bound: u64) -> Vec<u64> {
        (2..=bound)
            .filter(|&p| is_prime(p) && self.is_good_prime(p))
            .collect()
    }

    /// Coordinates in the fundamental-weight basis, `C·c`.
    pub fn weight_coords(&self, root: &Root) -> Result<Vec<i64>> {
        if !self.is_root(root) {
            return Err(Error::NotARoot(root.0.clone()));
        }
        Ok((0..self.rank)
            .map(|i| (0..self.rank).map(|j| self.cartan[i][j] * root.0[j]).sum())
            .collect())
    }

    /// Largest `m` with `root ∈ m·L` for the chosen lattice `L`.
    pub fn divisibility_in_lattice(&self, root: &Root, lattice: LatticeKind) -> Result<u64> {
        let coords = match lattice {
            LatticeKind::RootLattice => {
                if !self.is_root(root) {
                    return Err(Error::NotARoot(root.0.clone()));
                }
                root.0.clone()
            }
            LatticeKind::WeightLattice => self.weight_coords(root)?,
        };
        Ok(coords.iter().fold(0u64, |g, &c| gcd(g, c.unsigned_abs())))
    }

    /// `(α, α)`, scaled as in the Cartan data (2 for roots of a simply-laced
    /// system).
    pub fn norm(&self, root: &Root) -> i64 {
        let mut twice = 0;
        for i in 0..self.rank {
            for j in 0..self.rank {
                twice += root.0[i] * root.0[j] * self.cartan[i][j] * self.simple_norms[i];
            }
        }
        twice / 2
    }

    /// True for roots of maximal length (every root, in simply-laced types).
    pub fn is_long(&self, root: &Root) -> bool {
        let max = self.simple_norms.iter().copied().max().unwrap_or(0);
        self.norm(root) == max
    }

    /// Types isomorphic to some `C_n`: `C_n`, and also `B_2 = C_2` and `A_1 = C_1`.
    pub fn is_symplectic_type(&self) -> bool {
        matches!(
            (self.dynkin_type, self.rank),
            (DynkinType::C, _) | (DynkinType::B, 2) | (DynkinType::A, 1)
        )
    }

    pub fn name(&self) -> String {
        format!("{}_{}", self.dynkin_type, self.rank)
    }
}

/// Every valid Dynkin datum of rank at most `max_rank`.
pub fn all_types_up_to_rank(max_rank: usize) -> Vec<(DynkinType, usize)> {
    let mut out = Vec::new();
    for t in DynkinType::ALL {
        for rank in 1..=max_rank {
            if t.is_valid_rank(rank) {
                out.push((t, rank));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(t: DynkinType, n: usize) -> RootSystem {
        RootSystem::new(t, n).unwrap()
    }

    #[test]
    fn small_systems() {
        let a2 = rs(DynkinType::A, 2);
        assert_eq!(
            a2.positive_roots(),
            &[Root(vec![1, 0]), Root(vec![0, 1]), Root(vec![1, 1])]
        );
        let c2 = rs(DynkinType::C, 2);
        assert_eq!(c2.positive_roots().len(), 4);
        assert_eq!(c2.max_height(), 3);
        assert_eq!(c2.highest_root(), &Root(vec![2, 1]));
        let g2 = rs(DynkinType::G, 2);
        assert_eq!(g2.positive_roots().len(), 6);
        assert_eq!(g2.max_height(), 5);
        assert_eq!(g2.highest_root(), &Root(vec![3, 2]));
    }

    #[test]
    fn invalid_data() {
        assert!(RootSystem::new(DynkinType::D, 3).is_err());
        assert!(RootSystem::new(DynkinType::E, 9).is_err());
        assert!(RootSystem::new(DynkinType::B, 1).is_err());
        assert!(RootSystem::new(DynkinType::A, 0).is_err());
    }

    #[test]
    fn heights() {
        let a2 = rs(DynkinType::A, 2);
        assert_eq!(a2.height(&Root(vec![1, 0])).unwrap(), 1);
        assert_eq!(a2.height(&Root(vec![1, 1])).unwrap(), 2);
        assert_eq!(
            a2.height(&Root(vec![2, 1])),
            Err(Error::NotARoot(vec![2, 1]))
        );
        assert_eq!(
            a2.height(&Root(vec![-1, 0])),
            Err(Error::NotARoot(vec![-1, 0]))
        );
        let g2 = rs(DynkinType::G, 2);
        assert_eq!(g2.height(g2.highest_root()).unwrap(), 5);
    }

    #[test]
    fn coxeter_numbers() {
        for n in 1..=8 {
            assert_eq!(rs(DynkinType::A, n).coxeter_number(), n as u32 + 1);
        }
        assert_eq!(rs(DynkinType::C, 2).coxeter_number(), 4);
        assert_eq!(rs(DynkinType::A, 1).coxeter_number(), 2);
        assert_eq!(rs(DynkinType::E, 8).coxeter_number(), 30);
        assert_eq!(rs(DynkinType::F, 4).coxeter_number(), 12);
        assert_eq!(rs(DynkinType::D, 5).coxeter_number(), 8);
    }

    #[test]
    fn good_primes() {
        assert!(rs(DynkinType::A, 5).is_good_prime(2));
        assert!(!rs(DynkinType::C, 3).is_good_prime(2));
        assert!(rs(DynkinType::G, 2).is_good_prime(5));
        assert!(!rs(DynkinType::G, 2).is_good_prime(3));
        assert_eq!(rs(DynkinType::E, 8).good_primes_up_to(11), vec![7, 11]);
    }

    #[test]
    fn weight_coordinates() {
        let a2 = rs(DynkinType::A, 2);
        assert_eq!(a2.weight_coords(&Root(vec![1, 0])).unwrap(), vec![2, -1]);
        let c2 = rs(DynkinType::C, 2);
        let w = c2.weight_coords(&Root(vec![0, 1])).unwrap();
        assert!(w.iter().all(|c| c % 2 == 0), "{w:?}");
        let a1 = rs(DynkinType::A, 1);
        assert_eq!(a1.weight_coords(&Root(vec![1])).unwrap(), vec![2]);
        assert!(a2.weight_coords(&Root(vec![1, 2])).is_err());
    }

    #[test]
    fn divisibility() {
        let c3 = rs(DynkinType::C, 3);
        for root in c3.all_roots() {
            assert_eq!(
                c3.divisibility_in_lattice(&root, LatticeKind::RootLattice)
                    .unwrap(),
                1
            );
        }
        assert_eq!(
            c3.divisibility_in_lattice(&c3.simple_root(2), LatticeKind::WeightLattice)
                .unwrap(),
            2
        );
        let a3 = rs(DynkinType::A, 3);
        for root in a3.all_roots() {
            assert_eq!(
                a3.divisibility_in_lattice(&root, LatticeKind::WeightLattice)
                    .unwrap(),
                1
            );
        }
    }

    #[test]
    fn lengths() {
        let c3 = rs(DynkinType::C, 3);
        let long: Vec<_> = c3
            .positive_roots()
            .iter()
            .filter(|r| c3.is_long(r))
            .collect();
        assert_eq!(long.len(), 3);
        let b3 = rs(DynkinType::B, 3);
        assert_eq!(
            b3.positive_roots().iter().filter(|r| b3.is_long(r)).count(),
            6
        );
        let g2 = rs(DynkinType::G, 2);
        assert_eq!(
            g2.positive_roots().iter().filter(|r| g2.is_long(r)).count(),
            3
        );
    }

    #[test]
    fn display() {
        assert_eq!(Root(vec![2, 1]).to_string(), "2a1+a2");
        assert_eq!(Root(vec![-1, 0, -1]).to_string(), "-a1-a3");
    }
}
