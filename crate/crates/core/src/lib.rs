//! Finite groups of Lie type over small fields, checked by exhaustive
//! computation: field arithmetic, root data, matrix models of GL/SL/Sp,
//! regular unipotent subgroups and flag fixed points, the exponent of the
//! Sylow `p`-subgroup, torus actions on root subgroups, and the graded
//! invariants `H*(F_q; F_p)^H` for subgroups `H ≤ F_q^×`.

pub mod error;
pub mod gfq;
pub mod groups;
pub mod invariants;
pub mod limits;
pub mod matrix;
pub mod report;
pub mod rootaction;
pub mod rootdata;
pub mod suite;
pub mod unipotent;

pub use error::{Error, Result};
pub use gfq::{FieldElement, FieldTable};
pub use groups::{Family, LieGroupData};
pub use limits::Limits;
pub use matrix::FqMatrix;
pub use report::{Claim, VerificationReport};
pub use rootdata::{DynkinType, LatticeKind, Root, RootSystem};
