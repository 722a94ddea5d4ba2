//! Exact decision, certification and construction of unit-cube tilings of
//! `R^d` whose translation sets are constrained to a lattice `A·Z^d`, plus the
//! corresponding orthogonal exponential basis statements for parallelepipeds.
//!
//! All arithmetic is arbitrary-precision rational; every predicate is decided
//! exactly.

pub mod constraint;
pub mod cube;
pub mod error;
pub mod exec;
pub mod format;
pub mod lattice;
pub mod linalg;
pub mod periodic;
pub mod spectral;

pub use error::{Error, Result};
pub use exec::Execution;
pub use lattice::Lattice;
pub use linalg::{IntMatrix, Permutation, QMatrix, QVector, Rational};
