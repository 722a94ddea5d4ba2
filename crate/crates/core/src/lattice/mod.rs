//! Full-rank lattices `B·Z^d` with exact membership, equality, containment
//! and density.
//!
//! Bases are not canonical: two `Lattice` values describe the same set iff
//! [`Lattice::equals`] holds, which tests whether the transition matrix
//! between the bases is unimodular.

pub mod enumerate;

use num::{BigInt, Signed, Zero};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::linalg::matrix::check_dim;
use crate::linalg::{int_to_q, IntVector, QMatrix, Rational};
pub use enumerate::{integer_points_in_box, Boundary, BoxRegion};

#[derive(Clone)]
pub struct Lattice {
    basis: QMatrix,
    inverse: QMatrix,
}

impl std::fmt::Debug for Lattice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Lattice").field("basis", &self.basis).finish()
    }
}

impl Lattice {
    /// The lattice generated by the columns of `basis`.
    pub fn new(basis: QMatrix) -> Result<Self> {
        basis.dim()?;
        let inverse = basis.inverse()?;
        Ok(Lattice { basis, inverse })
    }

    pub fn integer(d: usize) -> Self {
        Lattice {
            basis: QMatrix::identity(d),
            inverse: QMatrix::identity(d),
        }
    }

    pub fn basis(&self) -> &QMatrix {
        &self.basis
    }

    pub fn basis_inverse(&self) -> &QMatrix {
        &self.inverse
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// Integer coordinates of `x` in this basis, if `x` is a lattice point.
    pub fn coordinates(&self, x: &[Rational]) -> Result<Option<IntVector>> {
        check_dim(self.dim(), x.len())?;
        let c = self.inverse.mul_vec(x)?;
        if c.iter().all(|v| v.is_integer()) {
            Ok(Some(c.iter().map(|v| v.to_integer()).collect()))
        } else {
            Ok(None)
        }
    }

    pub fn contains(&self, x: &[Rational]) -> Result<bool> {
        Ok(self.coordinates(x)?.is_some())
    }

    pub fn point(&self, k: &[BigInt]) -> Result<Vec<Rational>> {
        self.basis.mul_vec(&int_to_q(k))
    }

    /// `self^{-1}·other`, the coordinates of `other`'s basis in this basis.
    fn transition_to(&self, other: &Lattice) -> Result<QMatrix> {
        check_dim(self.dim(), other.dim())?;
        self.inverse.mul_mat(&other.basis)
    }

    pub fn equals(&self, other: &Lattice) -> Result<bool> {
        let t = self.transition_to(other)?;
        Ok(t.is_integral() && t.det()?.abs() == Rational::from_integer(1.into()))
    }

    /// `self ⊆ other`.
    pub fn is_sublattice_of(&self, other: &Lattice) -> Result<bool> {
        Ok(other.transition_to(self)?.is_integral())
    }

    pub fn determinant(&self) -> Rational {
        self.basis.det().expect("basis is square")
    }

    /// Points per unit volume, `1/|det basis|`.
    pub fn density(&self) -> Rational {
        self.determinant().abs().recip()
    }

    /// Index `[self : sub]` of a sublattice.
    pub fn index_of(&self, sub: &Lattice) -> Result<BigInt> {
        let t = self.transition_to(sub)?;
        let t = t.to_int().ok_or(Error::NotASublattice)?;
        let order = t.det()?.abs();
        debug_assert!(!order.is_zero());
        Ok(order)
    }

    /// Every lattice point `B·k` lying in `region`, ordered by `k`.
    pub fn points_in_box(&self, region: &BoxRegion, exec: Execution) -> Result<Vec<(IntVector, Vec<Rational>)>> {
        let ks = integer_points_in_box(&self.basis, &self.inverse, region, exec)?;
        ks.into_iter()
            .map(|k| {
                let p = self.point(&k)?;
                Ok((k, p))
            })
            .collect()
    }
}

pub fn lattice_membership(l: &Lattice, x: &[Rational]) -> Result<bool> {
    l.contains(x)
}

pub fn lattice_equal(l1: &Lattice, l2: &Lattice) -> Result<bool> {
    l1.equals(l2)
}

/// `l1 ⊆ l2`.
pub fn is_sublattice(l1: &Lattice, l2: &Lattice) -> Result<bool> {
    l1.is_sublattice_of(l2)
}

pub fn lattice_density(l: &Lattice) -> Rational {
    l.density()
}

/// Order of the quotient group `l_super / l_sub`.
pub fn quotient_order(l_sub: &Lattice, l_super: &Lattice) -> Result<BigInt> {
    l_super.index_of(l_sub)
}
