//! Exact construction, classification and verification of finite-rank
//! conformal quantum mechanics.
//!
//! Conformal Hamiltonians of rank `n` are the nilpotent Jordan matrices, one
//! per partition of `n`. For each of them this crate builds the canonical
//! dilation generator, computes circle correlators as exact polynomials in the
//! geometry, and checks the scaling (Ward) identities those correlators obey.

pub mod correlators;
pub mod error;
pub mod exact;
pub mod observables;
pub mod partitions;
pub mod random;
pub mod theory;
pub mod verify;
pub mod ward;

pub use error::{Error, Result};
pub use exact::{PolyMatrix, QMatrix, Rational, SparsePoly, VarRegistry};
pub use observables::{ConformalComponent, Observable};
pub use partitions::{enumerate_partitions, Partition};
pub use theory::{SpectrumReport, Theory};
pub use ward::WardReport;
