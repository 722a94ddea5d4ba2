//! Exact rational linear algebra and integer normal forms.

pub mod hnf;
pub mod matrix;
pub mod permutation;
pub mod rational;

pub use hnf::{
    complete_to_unimodular, hermite_normal_form, integer_solve, reduce_modulo_kernel, HermiteForm,
    IntegerSolution,
};
pub use matrix::{int_to_q, vec_add, vec_neg, vec_sub, IntMatrix, IntVector, Matrix, QMatrix, QVector};
pub use permutation::Permutation;
pub use rational::{format_rational, parse_rational, Rational};

/// Exact determinant of a square rational matrix (0 when singular).
pub fn rat_det(m: &QMatrix) -> crate::Result<Rational> {
    m.det()
}

/// Exact inverse; fails with `SingularMatrix` when the determinant is 0.
pub fn rat_inverse(m: &QMatrix) -> crate::Result<QMatrix> {
    m.inverse()
}
