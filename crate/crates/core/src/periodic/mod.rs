//! Periodic cube tilings `Φ = L·Z^d ⊕ {t_1, ..., t_m}`.

mod build;
mod oracle;

pub use build::{build_lattice_from_tiling, BuildOptions, LatticeConstruction, TwinPoints, MAX_GUARANTEED_DIM};
pub use oracle::{find_twin, project_oracle, CoveringSource, FnSource, TilingOracle, TwinPair};

use num::{One, Signed, Zero};

use crate::cube::{in_unit_cube, GridRegion};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::lattice::{Boundary, BoxRegion, Lattice};
use crate::linalg::matrix::check_dim;
use crate::linalg::{vec_add, vec_neg, vec_sub, QVector, Rational};

#[derive(Debug, Clone)]
pub struct PeriodicTiling {
    lattice: Lattice,
    offsets: Vec<QVector>,
}

impl PeriodicTiling {
    pub fn new(lattice: Lattice, offsets: Vec<QVector>) -> Result<Self> {
        if offsets.is_empty() {
            return Err(Error::NotATiling("no offsets".into()));
        }
        for t in &offsets {
            check_dim(lattice.dim(), t.len())?;
        }
        Ok(PeriodicTiling { lattice, offsets })
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn offsets(&self) -> &[QVector] {
        &self.offsets
    }

    pub fn dim(&self) -> usize {
        self.lattice.dim()
    }

    /// `Φ + shift`.
    pub fn translated(&self, shift: &[Rational]) -> Result<PeriodicTiling> {
        check_dim(self.dim(), shift.len())?;
        Ok(PeriodicTiling {
            lattice: self.lattice.clone(),
            offsets: self.offsets.iter().map(|t| vec_add(t, shift)).collect(),
        })
    }

    /// Exact tiling test: `m = |det L|`, offsets distinct modulo `L`, and no
    /// two translates closer than 1 in every coordinate.
    ///
    /// Disjointness plus density 1 forces a partition, exactly as for lattices.
    pub fn validate(&self) -> Result<bool> {
        let m = Rational::from_integer(self.offsets.len().into());
        if self.lattice.determinant().abs() != m {
            return Ok(false);
        }
        for (i, ti) in self.offsets.iter().enumerate() {
            for (j, tj) in self.offsets.iter().enumerate().skip(i) {
                let delta = vec_sub(ti, tj);
                let close = self
                    .lattice
                    .points_in_box(&BoxRegion::open_unit_around(&delta), Execution::Sequential)?;
                for (_, lambda) in close {
                    if vec_add(&delta, &lambda).iter().any(|x| !x.is_zero()) {
                        return Ok(false);
                    }
                }
                if i != j && self.lattice.contains(&delta)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// The unique translate `φ ∈ Φ` with `x - φ ∈ [0,1)^d`.
    pub fn covering_translate(&self, x: &[Rational]) -> Result<QVector> {
        check_dim(self.dim(), x.len())?;
        let mut found: Option<QVector> = None;
        let one = Rational::one();
        for t in &self.offsets {
            // λ with t + λ ∈ (x - 1, x]
            let target = vec_sub(x, t);
            let region = BoxRegion {
                lo: target.iter().map(|v| v - &one).collect(),
                hi: target,
                lo_side: Boundary::Open,
                hi_side: Boundary::Closed,
            };
            for (_, lambda) in self.lattice.points_in_box(&region, Execution::Sequential)? {
                let phi = vec_add(t, &lambda);
                debug_assert!(in_unit_cube(x, &phi));
                if found.replace(phi).is_some() {
                    return Err(Error::NotATiling(format!("point {} is covered twice", fmt_vec(x))));
                }
            }
        }
        found.ok_or_else(|| Error::NotATiling(format!("point {} is not covered", fmt_vec(x))))
    }

    /// `Φ - φ_0`, so that the origin lies in the cube at the origin.
    pub fn normalize_to_origin(&self) -> Result<PeriodicTiling> {
        let phi0 = self.covering_translate(&vec![Rational::zero(); self.dim()])?;
        self.translated(&vec_neg(&phi0))
    }

    /// Every translate lying in `region`.
    pub fn translates_in(&self, region: &BoxRegion) -> Result<Vec<QVector>> {
        let mut out = Vec::new();
        for t in &self.offsets {
            let shifted = BoxRegion {
                lo: vec_sub(&region.lo, t),
                hi: vec_sub(&region.hi, t),
                ..region.clone()
            };
            for (_, lambda) in self.lattice.points_in_box(&shifted, Execution::Sequential)? {
                out.push(vec_add(t, &lambda));
            }
        }
        out.sort();
        Ok(out)
    }

    /// Translates whose cubes meet a grid region.
    pub fn window(&self, region: &GridRegion) -> Result<Vec<QVector>> {
        self.translates_in(&region.translate_window())
    }
}

pub(crate) fn fmt_vec(x: &[Rational]) -> String {
    let parts: Vec<String> = x.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

pub fn validate_periodic_tiling(t: &PeriodicTiling) -> Result<bool> {
    t.validate()
}

pub fn covering_translate(t: &PeriodicTiling, x: &[Rational]) -> Result<QVector> {
    t.covering_translate(x)
}

pub fn normalize_to_origin(t: &PeriodicTiling) -> Result<PeriodicTiling> {
    t.normalize_to_origin()
}

impl CoveringSource for PeriodicTiling {
    fn dimension(&self) -> usize {
        self.dim()
    }

    fn covering_translate(&self, x: &[Rational]) -> Result<QVector> {
        PeriodicTiling::covering_translate(self, x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::{grid_coverage_oracle, CoverageVerdict};
    use crate::linalg::rational::{int, rat};
    use crate::linalg::QMatrix;

    pub(crate) fn shifted_column() -> PeriodicTiling {
        let l = Lattice::new(QMatrix::diagonal(&[int(2), int(1)])).unwrap();
        PeriodicTiling::new(l, vec![vec![int(0), int(0)], vec![int(1), rat(1, 2)]]).unwrap()
    }

    fn standard(d: usize) -> PeriodicTiling {
        PeriodicTiling::new(Lattice::integer(d), vec![vec![int(0); d]]).unwrap()
    }

    #[test]
    fn validation_examples() {
        assert!(standard(2).validate().unwrap());
        assert!(shifted_column().validate().unwrap());
        let l = Lattice::new(QMatrix::diagonal(&[int(2), int(1)])).unwrap();
        let overlapping = PeriodicTiling::new(l, vec![vec![int(0), int(0)], vec![rat(1, 2), int(0)]]).unwrap();
        assert!(!overlapping.validate().unwrap());
    }

    #[test]
    fn validation_rejects_wrong_density_and_duplicates() {
        let l = Lattice::new(QMatrix::diagonal(&[int(2), int(1)])).unwrap();
        let sparse = PeriodicTiling::new(l.clone(), vec![vec![int(0), int(0)]]).unwrap();
        assert!(!sparse.validate().unwrap());
        let duplicate = PeriodicTiling::new(l, vec![vec![int(0), int(0)], vec![int(2), int(0)]]).unwrap();
        assert!(!duplicate.validate().unwrap());
    }

    #[test]
    fn shifted_column_passes_grid_oracle() {
        let t = shifted_column();
        let region = GridRegion::cube(2, int(-2), int(2), rat(1, 4)).unwrap();
        let report = grid_coverage_oracle(t.window(&region).unwrap(), &region).unwrap();
        assert_eq!(report.verdict, CoverageVerdict::ExactCover);
    }

    #[test]
    fn covering_examples() {
        assert_eq!(standard(2).covering_translate(&[int(0), int(0)]).unwrap(), vec![int(0), int(0)]);
        let t = shifted_column();
        assert_eq!(t.covering_translate(&[int(1), int(0)]).unwrap(), vec![int(1), rat(-1, 2)]);
        assert_eq!(t.covering_translate(&[int(0), int(1)]).unwrap(), vec![int(0), int(1)]);
    }

    #[test]
    fn covering_reports_gaps_and_overlaps() {
        let l = Lattice::new(QMatrix::diagonal(&[int(2), int(1)])).unwrap();
        let gap = PeriodicTiling::new(l.clone(), vec![vec![int(0), int(0)]]).unwrap();
        assert!(matches!(gap.covering_translate(&[int(1), int(0)]), Err(Error::NotATiling(_))));
        let overlap = PeriodicTiling::new(l, vec![vec![int(0), int(0)], vec![rat(1, 2), int(0)]]).unwrap();
        assert!(matches!(overlap.covering_translate(&[rat(3, 4), int(0)]), Err(Error::NotATiling(_))));
    }

    #[test]
    fn normalization_examples() {
        let t = standard(2);
        let n = t.normalize_to_origin().unwrap();
        assert_eq!(n.offsets(), t.offsets());

        let shifted = standard(2).translated(&[rat(1, 3), rat(1, 3)]).unwrap();
        assert_eq!(shifted.covering_translate(&[int(0), int(0)]).unwrap(), vec![rat(-2, 3), rat(-2, 3)]);
        let n = shifted.normalize_to_origin().unwrap();
        assert_eq!(n.covering_translate(&[int(0), int(0)]).unwrap(), vec![int(0), int(0)]);
        assert!(n.validate().unwrap());

        let moved = shifted_column().translated(&[int(0), rat(1, 2)]).unwrap();
        let n = moved.normalize_to_origin().unwrap();
        assert!(n.validate().unwrap());
        assert_eq!(n.covering_translate(&[int(0), int(0)]).unwrap(), vec![int(0), int(0)]);
    }

    #[test]
    fn translates_in_closed_window() {
        let t = shifted_column();
        let region = BoxRegion {
            lo: vec![int(0), int(0)],
            hi: vec![int(1), int(1)],
            lo_side: Boundary::Closed,
            hi_side: Boundary::Closed,
        };
        assert_eq!(
            t.translates_in(&region).unwrap(),
            vec![vec![int(0), int(0)], vec![int(0), int(1)], vec![int(1), rat(1, 2)]]
        );
    }
}
