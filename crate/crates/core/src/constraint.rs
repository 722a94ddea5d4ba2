//! Deciding whether a lattice `A·Z^d` contains a lattice cube tiling, with
//! certificates `P·A·R = G` (`P` a permutation, `R` integral and nonsingular,
//! `G` unitriangular), and the factorization `Λ = P·G·Z^d` of tiling lattices.

use num::{BigInt, One, Signed, Zero};

use crate::cube::verify_lattice_tiling_with;
use crate::error::{Error, Result};
use crate::exec::{find_map_first, Execution};
use crate::lattice::Lattice;
use crate::linalg::matrix::check_dim;
use crate::linalg::rational::{common_denominator, reciprocal_integer};
use crate::linalg::{
    complete_to_unimodular, integer_solve, reduce_modulo_kernel, IntMatrix, Permutation, QMatrix, Rational,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TilingCertificate {
    pub p: Permutation,
    pub r: IntMatrix,
    pub g: QMatrix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Triangle {
    #[default]
    Lower,
    Upper,
}

impl Triangle {
    fn accepts(self, g: &QMatrix) -> bool {
        match self {
            Triangle::Lower => g.is_lower_unitriangular(),
            Triangle::Upper => g.is_upper_unitriangular(),
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct DecideOptions {
    pub target: Triangle,
    pub execution: Execution,
}

/// Writes a tiling lattice as `P·G·Z^d` with `G` lower unitriangular.
///
/// Entries below the diagonal of `G` are reduced into `[0, 1)`.
pub fn factorize_tiling_lattice(a: &QMatrix) -> Result<(Permutation, QMatrix)> {
    a.dim()?;
    if !verify_lattice_tiling_with(a, Execution::Sequential)? {
        return Err(Error::NotATilingLattice);
    }
    factorize(a)
}

fn factorize(a: &QMatrix) -> Result<(Permutation, QMatrix)> {
    let d = a.rows();
    if d == 1 {
        return Ok((Permutation::identity(1), QMatrix::identity(1)));
    }
    let lattice = Lattice::new(a.clone())?;
    let mut found = None;
    for j in (0..d).rev() {
        let mut e = vec![Rational::zero(); d];
        e[j] = Rational::one();
        if let Some(c) = lattice.coordinates(&e)? {
            found = Some((j, c));
            break;
        }
    }
    let (j, c) = found.ok_or(Error::NotATilingLattice)?;
    let u = complete_to_unimodular(&c).map_err(|_| Error::NotATilingLattice)?;
    let tau = Permutation::transposition(d, j, d - 1);
    // last column of b is e_{d-1}
    let b = tau.permute_rows(&a.mul_mat(&QMatrix::from_int(&u))?);
    let b11 = b.leading_block(d - 1, d - 1);
    let (p1, g1) = factorize(&b11)?;

    // b11 = p1·g1·v, and b·diag(v^{-1}, 1) = [[p1·g1, 0], [x, 1]]
    let v_inv = b11.inverse()?.mul_mat(&p1.qmatrix().mul_mat(&g1)?)?;
    let b21 = QMatrix::from_fn(1, d - 1, |_, k| b[(d - 1, k)].clone());
    let x = b21.mul_mat(&v_inv)?;

    let g = QMatrix::from_fn(d, d, |r, k| {
        if r < d - 1 && k < d - 1 {
            g1[(r, k)].clone()
        } else if r == d - 1 && k < d - 1 {
            let v = &x[(0, k)];
            v - v.floor()
        } else if r == k {
            Rational::one()
        } else {
            Rational::zero()
        }
    });
    let mut image = p1.image().to_vec();
    image.push(d - 1);
    let p = tau.compose(&Permutation::new(image)?);
    Ok((p, g))
}

/// Integer `R` with `B·R` unitriangular (lower by default), if one exists.
pub fn unitriangular_feasible(b: &QMatrix) -> Result<Option<IntMatrix>> {
    unitriangular_feasible_with(b, Triangle::Lower)
}

pub fn unitriangular_feasible_with(b: &QMatrix, target: Triangle) -> Result<Option<IntMatrix>> {
    let d = b.dim()?;
    if b.det()?.is_zero() {
        return Err(Error::SingularMatrix);
    }
    // each row scaled to integers once; column j only changes the right-hand side
    let scales: Vec<BigInt> = (0..d).map(|i| common_denominator(b.row(i))).collect();
    let scaled = IntMatrix::from_fn(d, d, |i, k| {
        let x = &b[(i, k)];
        x.numer() * (&scales[i] / x.denom())
    });
    let mut columns = Vec::with_capacity(d);
    for j in 0..d {
        let rows: Vec<usize> = match target {
            Triangle::Lower => (0..=j).collect(),
            Triangle::Upper => (j..d).collect(),
        };
        let m = IntMatrix::from_fn(rows.len(), d, |r, k| scaled[(rows[r], k)].clone());
        let rhs: Vec<BigInt> = rows
            .iter()
            .map(|&i| if i == j { scales[i].clone() } else { BigInt::zero() })
            .collect();
        let Some(solution) = integer_solve(&m, &rhs)? else {
            return Ok(None);
        };
        columns.push(reduce_modulo_kernel(solution.particular, &solution.kernel));
    }
    Ok(Some(IntMatrix::from_fn(d, d, |i, k| columns[k][i].clone())))
}

/// First certificate over permutations in lexicographic order, or `None`.
pub fn decide_constraint(a: &QMatrix) -> Result<Option<TilingCertificate>> {
    decide_constraint_with(a, DecideOptions::default())
}

pub fn decide_constraint_with(a: &QMatrix, options: DecideOptions) -> Result<Option<TilingCertificate>> {
    let d = a.dim()?;
    let det = a.det()?;
    if det.is_zero() {
        return Err(Error::SingularMatrix);
    }
    if reciprocal_integer(&det.abs()).is_none() {
        return Ok(None);
    }
    let perms = Permutation::all_lexicographic(d);
    let cert = find_map_first(options.execution, &perms, |p| {
        let pa = p.permute_rows(a);
        let r = unitriangular_feasible_with(&pa, options.target).ok().flatten()?;
        let g = pa.mul_mat(&QMatrix::from_int(&r)).ok()?;
        Some(TilingCertificate { p: p.clone(), r, g })
    });
    Ok(cert)
}

/// Recomputes `P·A·R` and checks it equals the lower unitriangular `G`.
pub fn verify_certificate(a: &QMatrix, cert: &TilingCertificate) -> Result<bool> {
    verify_certificate_with(a, cert, Triangle::Lower)
}

pub fn verify_certificate_with(a: &QMatrix, cert: &TilingCertificate, target: Triangle) -> Result<bool> {
    let d = a.dim()?;
    check_dim(d, cert.p.dim())?;
    check_dim(d, cert.r.dim()?)?;
    check_dim(d, cert.g.dim()?)?;
    if cert.r.det()?.is_zero() {
        return Ok(false);
    }
    let g = cert.p.permute_rows(a).mul_mat(&QMatrix::from_int(&cert.r))?;
    Ok(g == cert.g && target.accepts(&g))
}

/// The lattice `A·R·Z^d ⊆ A·Z^d`, a cube-tiling lattice, when a certificate exists.
pub fn construct_sublattice_tiling(a: &QMatrix) -> Result<Option<Lattice>> {
    construct_sublattice_tiling_with(a, Execution::default())
}

pub fn construct_sublattice_tiling_with(a: &QMatrix, exec: Execution) -> Result<Option<Lattice>> {
    let options = DecideOptions {
        execution: exec,
        ..DecideOptions::default()
    };
    let Some(cert) = decide_constraint_with(a, options)? else {
        return Ok(None);
    };
    let basis = a.mul_mat(&QMatrix::from_int(&cert.r))?;
    let sub = Lattice::new(basis)?;
    if !sub.is_sublattice_of(&Lattice::new(a.clone())?)? || !verify_lattice_tiling_with(sub.basis(), exec)? {
        return Err(Error::ConstructionFailed("certified lattice failed verification".into()));
    }
    Ok(Some(sub))
}

/// `|det R|` for a certificate, i.e. `N` with `|det A| = 1/N`.
pub fn certificate_index(cert: &TilingCertificate) -> Result<BigInt> {
    let det = cert.r.det()?;
    debug_assert!(!det.is_zero());
    Ok(det.abs())
}
