//! Orthogonal exponential bases on parallelepipeds `B·[0,1)^d + a`.
//!
//! `e^{2πi γ₁·x}` and `e^{2πi γ₂·x}` are orthogonal on `B·[0,1)^d` exactly when
//! `Bᵀ(γ₁ - γ₂)` has a nonzero integer coordinate, and `E(C·Z^d)` is an
//! orthogonal basis exactly when `Bᵀ·C·Z^d` is a cube-tiling lattice.

use num::{BigInt, Signed, Zero};

use crate::constraint::{decide_constraint_with, verify_certificate, DecideOptions, TilingCertificate};
use crate::cube::{keller_coordinate_check, verify_lattice_tiling_with};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::lattice::Lattice;
use crate::linalg::matrix::check_dim;
use crate::linalg::rational::reciprocal_integer;
use crate::linalg::{vec_add, vec_sub, QMatrix, QVector, Rational};

fn nonsingular(m: &QMatrix) -> Result<usize> {
    let d = m.dim()?;
    if m.det()?.is_zero() {
        return Err(Error::SingularMatrix);
    }
    Ok(d)
}

pub fn is_orthogonal_pair(b: &QMatrix, gamma1: &[Rational], gamma2: &[Rational]) -> Result<bool> {
    let d = b.dim()?;
    check_dim(d, gamma1.len())?;
    check_dim(d, gamma2.len())?;
    if gamma1 == gamma2 {
        return Err(Error::EqualFrequencies);
    }
    let mu = b.transpose().mul_vec(&vec_sub(gamma1, gamma2))?;
    Ok(keller_coordinate_check(&mu))
}

/// Whether `E(C·Z^d)` is an orthogonal basis of `L²(B·[0,1)^d)`.
pub fn lattice_spectrum_check(b: &QMatrix, c: &QMatrix) -> Result<bool> {
    lattice_spectrum_check_with(b, c, Execution::default())
}

pub fn lattice_spectrum_check_with(b: &QMatrix, c: &QMatrix, exec: Execution) -> Result<bool> {
    let d = nonsingular(b)?;
    check_dim(d, nonsingular(c)?)?;
    verify_lattice_tiling_with(&b.transpose().mul_mat(c)?, exec)
}

/// `offset + B·[0,1)^d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parallelepiped {
    pub matrix: QMatrix,
    pub offset: QVector,
}

impl Parallelepiped {
    pub fn new(matrix: QMatrix, offset: QVector) -> Result<Self> {
        let d = nonsingular(&matrix)?;
        check_dim(d, offset.len())?;
        Ok(Parallelepiped { matrix, offset })
    }

    pub fn at_origin(matrix: QMatrix) -> Result<Self> {
        let d = matrix.dim()?;
        Self::new(matrix, vec![Rational::zero(); d])
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn volume(&self) -> Rational {
        self.matrix.det().expect("square").abs()
    }
}

#[derive(Debug, Clone)]
pub enum FrequencySet {
    /// `shift + L`.
    Lattice { lattice: Lattice, shift: QVector },
    Finite(Vec<QVector>),
}

impl FrequencySet {
    pub fn lattice(lattice: Lattice) -> Self {
        let d = lattice.dim();
        FrequencySet::Lattice {
            lattice,
            shift: vec![Rational::zero(); d],
        }
    }

    pub fn finite(points: Vec<QVector>) -> Result<Self> {
        if let Some(first) = points.first() {
            for p in &points {
                check_dim(first.len(), p.len())?;
            }
        }
        let mut sorted = points.clone();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::EqualFrequencies);
        }
        Ok(FrequencySet::Finite(points))
    }

    fn shifted(&self, c: &[Rational]) -> Result<FrequencySet> {
        Ok(match self {
            FrequencySet::Lattice { lattice, shift } => {
                check_dim(lattice.dim(), c.len())?;
                FrequencySet::Lattice {
                    lattice: lattice.clone(),
                    shift: vec_add(shift, c),
                }
            }
            FrequencySet::Finite(points) => {
                for p in points {
                    check_dim(p.len(), c.len())?;
                }
                FrequencySet::Finite(points.iter().map(|p| vec_add(p, c)).collect())
            }
        })
    }

    fn mapped(&self, m: &QMatrix) -> Result<FrequencySet> {
        Ok(match self {
            FrequencySet::Lattice { lattice, shift } => FrequencySet::Lattice {
                lattice: Lattice::new(m.mul_mat(lattice.basis())?)?,
                shift: m.mul_vec(shift)?,
            },
            FrequencySet::Finite(points) => {
                FrequencySet::Finite(points.iter().map(|p| m.mul_vec(p)).collect::<Result<_>>()?)
            }
        })
    }
}

/// A frequency set together with the domain it is meant to be a spectrum for.
#[derive(Debug, Clone)]
pub struct SpectralPair {
    pub spectrum: FrequencySet,
    pub domain: Parallelepiped,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpectrumTransform {
    TranslateDomain(QVector),
    TranslateSpectrum(QVector),
    /// `Γ → M·Γ` together with `S → M^{-T}·S`.
    LinearMap(QMatrix),
}

pub fn transform_spectrum(pair: &SpectralPair, op: &SpectrumTransform) -> Result<SpectralPair> {
    let d = pair.domain.dim();
    match op {
        SpectrumTransform::TranslateDomain(a) => {
            check_dim(d, a.len())?;
            Ok(SpectralPair {
                spectrum: pair.spectrum.clone(),
                domain: Parallelepiped {
                    matrix: pair.domain.matrix.clone(),
                    offset: vec_add(&pair.domain.offset, a),
                },
            })
        }
        SpectrumTransform::TranslateSpectrum(c) => Ok(SpectralPair {
            spectrum: pair.spectrum.shifted(c)?,
            domain: pair.domain.clone(),
        }),
        SpectrumTransform::LinearMap(m) => {
            check_dim(d, nonsingular(m)?)?;
            let m_inv_t = m.inverse()?.transpose();
            Ok(SpectralPair {
                spectrum: pair.spectrum.mapped(m)?,
                domain: Parallelepiped {
                    matrix: m_inv_t.mul_mat(&pair.domain.matrix)?,
                    offset: m_inv_t.mul_vec(&pair.domain.offset)?,
                },
            })
        }
    }
}

/// Orthogonality of every pair `i < j` of a finite spectrum, row by row.
pub fn pairwise_orthogonality(domain: &Parallelepiped, points: &[QVector]) -> Result<Vec<bool>> {
    let mut out = Vec::with_capacity(points.len() * points.len().saturating_sub(1) / 2);
    for (i, g1) in points.iter().enumerate() {
        for g2 in &points[i + 1..] {
            out.push(is_orthogonal_pair(&domain.matrix, g1, g2)?);
        }
    }
    Ok(out)
}

/// Decides whether `E(Φ)` can be an orthogonal basis on `B·[0,1)^d` for some
/// `Φ ⊆ A·Z^d` by deciding the tiling constraint for `Bᵀ·A`.
pub fn decide_spectral_basis(a: &QMatrix, b: &QMatrix) -> Result<Option<TilingCertificate>> {
    decide_spectral_basis_with(a, b, DecideOptions::default())
}

pub fn decide_spectral_basis_with(a: &QMatrix, b: &QMatrix, options: DecideOptions) -> Result<Option<TilingCertificate>> {
    let d = nonsingular(a)?;
    check_dim(d, nonsingular(b)?)?;
    let m = b.transpose().mul_mat(a)?;
    let Some(cert) = decide_constraint_with(&m, options)? else {
        return Ok(None);
    };
    // B = A^{-T}·R^{-T}·Gᵀ·P^{-T}
    let r_inv = QMatrix::from_int(&cert.r).inverse()?;
    let rebuilt = a
        .inverse()?
        .transpose()
        .mul_mat(&r_inv.transpose())?
        .mul_mat(&cert.g.transpose())?
        .mul_mat(&cert.p.inverse().qmatrix().transpose())?;
    if !verify_certificate(&m, &cert)? || &rebuilt != b {
        return Err(Error::ConstructionFailed("certificate does not reproduce B".into()));
    }
    Ok(Some(cert))
}

/// `N` with `|det A| = 1/N`, if `|det A|` is the reciprocal of an integer.
pub fn volume_rationality_check(a: &QMatrix) -> Result<Option<BigInt>> {
    a.dim()?;
    let det = a.det()?;
    if det.is_zero() {
        return Err(Error::SingularMatrix);
    }
    Ok(reciprocal_integer(&det.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::{int, rat};
    use crate::linalg::{IntMatrix, Permutation};

    #[test]
    fn orthogonality_examples() {
        let id = QMatrix::identity(2);
        assert!(is_orthogonal_pair(&id, &[int(1), int(0)], &[int(0), int(0)]).unwrap());
        let b = QMatrix::diagonal(&[int(2), int(1)]);
        assert!(is_orthogonal_pair(&b, &[rat(1, 2), int(0)], &[int(0), int(0)]).unwrap());
        assert!(!is_orthogonal_pair(&id, &[rat(1, 3), rat(1, 3)], &[int(0), int(0)]).unwrap());
        assert_eq!(
            is_orthogonal_pair(&id, &[int(1), int(1)], &[int(1), int(1)]),
            Err(Error::EqualFrequencies)
        );
    }

    #[test]
    fn lattice_spectrum_examples() {
        let id = QMatrix::identity(2);
        assert!(lattice_spectrum_check(&id, &id).unwrap());
        let b = QMatrix::diagonal(&[rat(1, 2), int(1)]);
        let c = QMatrix::diagonal(&[int(2), int(1)]);
        assert!(lattice_spectrum_check(&b, &c).unwrap());
        assert!(!lattice_spectrum_check(&id, &QMatrix::diagonal(&[rat(1, 2), int(1)])).unwrap());
        assert_eq!(
            lattice_spectrum_check(&id, &QMatrix::zeros(2, 2)),
            Err(Error::SingularMatrix)
        );
    }

    #[test]
    fn scalar_linear_map() {
        let pair = SpectralPair {
            spectrum: FrequencySet::lattice(Lattice::integer(1)),
            domain: Parallelepiped::at_origin(QMatrix::identity(1)).unwrap(),
        };
        let out = transform_spectrum(&pair, &SpectrumTransform::LinearMap(QMatrix::diagonal(&[int(2)]))).unwrap();
        let FrequencySet::Lattice { lattice, .. } = &out.spectrum else {
            panic!("lattice spectrum expected");
        };
        assert_eq!(lattice.basis(), &QMatrix::diagonal(&[int(2)]));
        assert_eq!(out.domain.matrix, QMatrix::diagonal(&[rat(1, 2)]));
        assert!(lattice_spectrum_check(&out.domain.matrix, lattice.basis()).unwrap());
    }

    #[test]
    fn translations_keep_verdicts() {
        let b = QMatrix::from_rows(vec![vec![int(1), rat(1, 2)], vec![int(0), int(2)]]).unwrap();
        let points = vec![
            vec![int(0), int(0)],
            vec![int(1), int(0)],
            vec![rat(1, 2), rat(1, 4)],
            vec![int(0), rat(1, 2)],
        ];
        let pair = SpectralPair {
            spectrum: FrequencySet::finite(points.clone()).unwrap(),
            domain: Parallelepiped::at_origin(b).unwrap(),
        };
        let before = pairwise_orthogonality(&pair.domain, &points).unwrap();
        let moved = transform_spectrum(&pair, &SpectrumTransform::TranslateDomain(vec![rat(1, 3), int(5)])).unwrap();
        assert_eq!(pairwise_orthogonality(&moved.domain, &points).unwrap(), before);
        let shifted =
            transform_spectrum(&pair, &SpectrumTransform::TranslateSpectrum(vec![rat(2, 7), int(-1)])).unwrap();
        let FrequencySet::Finite(new_points) = &shifted.spectrum else {
            panic!("finite spectrum expected");
        };
        assert_eq!(pairwise_orthogonality(&shifted.domain, new_points).unwrap(), before);
    }

    #[test]
    fn duplicate_frequencies_rejected() {
        assert!(FrequencySet::finite(vec![vec![int(1)], vec![int(1)]]).is_err());
    }

    #[test]
    fn spectral_basis_examples() {
        let id = QMatrix::identity(2);
        let cert = decide_spectral_basis(&id, &id).unwrap().unwrap();
        assert_eq!(cert.p, Permutation::identity(2));
        assert_eq!(cert.r, IntMatrix::identity(2));
        assert_eq!(cert.g, id);

        let b = QMatrix::diagonal(&[int(3), int(1)]);
        let a = QMatrix::diagonal(&[rat(1, 3), int(1)]);
        assert!(decide_spectral_basis(&a, &b).unwrap().is_some());

        let a = QMatrix::diagonal(&[rat(1, 3), int(2)]);
        assert!(decide_spectral_basis(&a, &id).unwrap().is_none());
    }

    #[test]
    fn volume_examples() {
        assert_eq!(volume_rationality_check(&QMatrix::identity(3)).unwrap(), Some(BigInt::from(1)));
        let half = QMatrix::identity(2).scale(&rat(1, 2));
        assert_eq!(volume_rationality_check(&half).unwrap(), Some(BigInt::from(4)));
        let a = QMatrix::diagonal(&[rat(1, 3), int(2)]);
        assert_eq!(volume_rationality_check(&a).unwrap(), None);
        assert_eq!(volume_rationality_check(&QMatrix::zeros(2, 2)), Err(Error::SingularMatrix));
    }
}
