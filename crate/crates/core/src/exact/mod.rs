//! Exact coefficient substrate: rationals, sparse Laurent polynomials and
//! matrices over both.

pub mod linsolve;
pub mod poly;
pub mod polymatrix;
pub mod qmatrix;
pub mod rational;
pub mod registry;

pub use linsolve::{solve, LinearSolution};
pub use poly::{Monomial, PolyJson, SparsePoly, TermJson};
pub use polymatrix::PolyMatrix;
pub use qmatrix::QMatrix;
pub use rational::Rational;
pub use registry::{gap_name, VarRegistry, LAMBDA, TAU};
