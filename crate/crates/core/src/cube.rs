//! Lattice cube tilings: the exact open-cube criterion, Keller's
//! difference condition, and a brute-force grid oracle.
//!
//! Cubes are half-open, `Q = [0,1)^d`; a point on a shared face belongs to the
//! cube whose lower face it lies on.

use num::{BigInt, One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::lattice::{integer_points_in_box, BoxRegion, Lattice};
use crate::linalg::matrix::check_dim;
use crate::linalg::rational::ceil_int;
use crate::linalg::{int_to_q, IntVector, QMatrix, QVector, Rational};

/// All `k ∈ Z^d` with `A·k ∈ (-1,1)^d`; always contains `0`.
///
/// The search box for `k_i` is `|k_i| <= floor(‖row_i(A^{-1})‖_1)`, since
/// `k = A^{-1}(A·k)` and every coordinate of `A·k` has absolute value below 1.
pub fn enumerate_open_cube_points(a: &QMatrix) -> Result<Vec<IntVector>> {
    enumerate_open_cube_points_with(a, Execution::default())
}

pub fn enumerate_open_cube_points_with(a: &QMatrix, exec: Execution) -> Result<Vec<IntVector>> {
    let d = a.dim()?;
    let inv = a.inverse()?;
    let region = BoxRegion::open_unit_around(&vec![Rational::zero(); d]);
    integer_points_in_box(a, &inv, &region, exec)
}

/// Whether `(Q, A·Z^d)` is a tiling: `|det A| = 1` and the only lattice
/// point in the open cube `(-1,1)^d` is the origin.
pub fn verify_lattice_tiling(a: &QMatrix) -> Result<bool> {
    verify_lattice_tiling_with(a, Execution::default())
}

pub fn verify_lattice_tiling_with(a: &QMatrix, exec: Execution) -> Result<bool> {
    let det = a.det()?;
    if det.is_zero() {
        return Err(Error::SingularMatrix);
    }
    if !det.abs().is_one() {
        return Ok(false);
    }
    let points = enumerate_open_cube_points_with(a, exec)?;
    Ok(points.len() == 1)
}

/// True iff some coordinate is a nonzero integer.
pub fn keller_coordinate_check(diff: &[Rational]) -> bool {
    diff.iter().any(|x| x.is_integer() && !x.is_zero())
}

/// A point of `Q ∩ (Q + A·k)`, witnessing that two lattice cubes overlap.
pub fn overlap_witness(a: &QMatrix, k: &[BigInt]) -> Result<QVector> {
    let d = a.dim()?;
    check_dim(d, k.len())?;
    if k.iter().all(Zero::is_zero) {
        return Err(Error::InvalidWitnessInput);
    }
    let ak = a.mul_vec(&int_to_q(k))?;
    let one = Rational::one();
    if ak.iter().any(|y| y.abs() >= one) {
        return Err(Error::InvalidWitnessInput);
    }
    let x: QVector = ak.iter().map(|y| y.clone().max(Rational::zero())).collect();
    debug_assert!(in_unit_cube(&x, &vec![Rational::zero(); d]));
    debug_assert!(in_unit_cube(&x, &ak));
    Ok(x)
}

/// `x - corner ∈ [0,1)^d`.
pub fn in_unit_cube(x: &[Rational], corner: &[Rational]) -> bool {
    x.iter().zip(corner).all(|(xi, ci)| {
        let t = xi - ci;
        !t.is_negative() && t < Rational::one()
    })
}

/// Half-open box `[lo, hi)` sampled on the grid `lo + mesh·t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridRegion {
    pub lo: QVector,
    pub hi: QVector,
    pub mesh: Rational,
}

impl GridRegion {
    pub fn new(lo: QVector, hi: QVector, mesh: Rational) -> Result<Self> {
        check_dim(lo.len(), hi.len())?;
        if !mesh.is_positive() {
            return Err(Error::NonPositiveMesh);
        }
        if lo.is_empty() || lo.iter().zip(&hi).any(|(l, h)| l >= h) {
            return Err(Error::EmptyRegion);
        }
        Ok(GridRegion { lo, hi, mesh })
    }

    /// `[lo, hi)^d` with the same bounds on every axis.
    pub fn cube(d: usize, lo: Rational, hi: Rational, mesh: Rational) -> Result<Self> {
        GridRegion::new(vec![lo; d], vec![hi; d], mesh)
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    fn shape(&self) -> Vec<usize> {
        self.lo
            .iter()
            .zip(&self.hi)
            .map(|(l, h)| usize::try_from(ceil_int(&((h - l) / &self.mesh))).unwrap_or(usize::MAX))
            .collect()
    }

    pub fn point(&self, index: &[usize]) -> QVector {
        self.lo
            .iter()
            .zip(index)
            .map(|(l, &t)| l + &self.mesh * Rational::from_integer(BigInt::from(t)))
            .collect()
    }

    /// Open box of translates whose cubes meet the region: `φ ∈ (lo - 1, hi)`.
    pub fn translate_window(&self) -> BoxRegion {
        let one = Rational::one();
        BoxRegion::open(self.lo.iter().map(|l| l - &one).collect(), self.hi.clone())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoverageVerdict {
    ExactCover,
    GapFound,
    OverlapFound,
}

impl CoverageVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            CoverageVerdict::ExactCover => "exact-cover",
            CoverageVerdict::GapFound => "gap-found",
            CoverageVerdict::OverlapFound => "overlap-found",
        }
    }
}

/// Multiplicity of every grid point of a region under a finite translate set.
///
/// The oracle can refute a tiling (a gap or an overlap on the grid) but can
/// never certify one: an exact cover only says the grid points were covered
/// once each. A gap can also mean the caller's translate window was too small.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverageReport {
    pub region: GridRegion,
    shape: Vec<usize>,
    multiplicities: Vec<u32>,
    pub verdict: CoverageVerdict,
    /// First grid point (row-major, axis 0 slowest) with multiplicity other
    /// than 1; overlaps take precedence over gaps.
    pub witness: Option<(QVector, u32)>,
}

impl CoverageReport {
    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn len(&self) -> usize {
        self.multiplicities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.multiplicities.is_empty()
    }

    fn unravel(&self, mut flat: usize) -> Vec<usize> {
        let mut index = vec![0; self.shape.len()];
        for (slot, &n) in index.iter_mut().zip(&self.shape).rev() {
            *slot = flat % n;
            flat /= n;
        }
        index
    }

    /// Every grid point with its multiplicity, in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (QVector, u32)> + '_ {
        self.multiplicities
            .iter()
            .enumerate()
            .map(|(flat, &m)| (self.region.point(&self.unravel(flat)), m))
    }

    /// Multiplicity at a grid point, `None` when `x` is not on the grid.
    pub fn multiplicity_at(&self, x: &[Rational]) -> Option<u32> {
        if x.len() != self.shape.len() {
            return None;
        }
        let mut flat = 0usize;
        for (i, xi) in x.iter().enumerate() {
            let t = (xi - &self.region.lo[i]) / &self.region.mesh;
            if !t.is_integer() || t.is_negative() {
                return None;
            }
            let t = usize::try_from(t.to_integer()).ok()?;
            if t >= self.shape[i] {
                return None;
            }
            flat = flat * self.shape[i] + t;
        }
        Some(self.multiplicities[flat])
    }

    pub fn count_with(&self, multiplicity: u32) -> usize {
        self.multiplicities.iter().filter(|&&m| m == multiplicity).count()
    }
}

/// Largest grid the oracle will allocate.
pub const MAX_GRID_POINTS: usize = 1 << 28;

fn grid_range(corner: &Rational, lo: &Rational, mesh: &Rational, n: usize) -> Option<(usize, usize)> {
    // t ∈ [ceil((φ - lo)/mesh), ceil((φ + 1 - lo)/mesh) - 1]
    let first = ceil_int(&((corner - lo) / mesh));
    let last: BigInt = ceil_int(&((corner + Rational::one() - lo) / mesh)) - 1;
    let first = first.max(BigInt::zero());
    let last = last.min(BigInt::from(n) - 1);
    if first > last {
        return None;
    }
    Some((usize::try_from(first).ok()?, usize::try_from(last).ok()?))
}

pub fn grid_coverage_oracle<I>(translates: I, region: &GridRegion) -> Result<CoverageReport>
where
    I: IntoIterator<Item = QVector>,
{
    grid_coverage_oracle_with(translates, region, Execution::default())
}

/// For each grid point `x`, counts `#{φ : x - φ ∈ [0,1)^d}`.
///
/// Each translate covers a sub-box of grid indices; the counts are
/// accumulated slab by slab along axis 0, so the result does not depend on
/// how slabs are distributed over threads.
pub fn grid_coverage_oracle_with<I>(translates: I, region: &GridRegion, exec: Execution) -> Result<CoverageReport>
where
    I: IntoIterator<Item = QVector>,
{
    let d = region.dim();
    let shape = region.shape();
    let total = shape
        .iter()
        .try_fold(1usize, |acc, &n| acc.checked_mul(n))
        .filter(|&t| t <= MAX_GRID_POINTS)
        .ok_or(Error::GridTooLarge)?;

    let mut boxes: Vec<Vec<(usize, usize)>> = Vec::new();
    for phi in translates {
        check_dim(d, phi.len())?;
        let ranges: Option<Vec<_>> = (0..d)
            .map(|i| grid_range(&phi[i], &region.lo[i], &region.mesh, shape[i]))
            .collect();
        if let Some(r) = ranges {
            boxes.push(r);
        }
    }

    let slab = total / shape[0];
    let mut counts = vec![0u32; total];
    exec::for_each_chunk_mut(exec, &mut counts, slab, |t0, chunk| {
        for b in boxes.iter().filter(|b| b[0].0 <= t0 && t0 <= b[0].1) {
            increment_box(chunk, &shape[1..], &b[1..]);
        }
    });

    let first = |pred: fn(u32) -> bool| counts.iter().position(|&m| pred(m));
    let (verdict, flat) = match (first(|m| m >= 2), first(|m| m == 0)) {
        (Some(i), _) => (CoverageVerdict::OverlapFound, Some(i)),
        (None, Some(i)) => (CoverageVerdict::GapFound, Some(i)),
        (None, None) => (CoverageVerdict::ExactCover, None),
    };
    let mut report = CoverageReport {
        region: region.clone(),
        shape,
        multiplicities: counts,
        verdict,
        witness: None,
    };
    report.witness = flat.map(|i| (report.region.point(&report.unravel(i)), report.multiplicities[i]));
    Ok(report)
}

/// Adds 1 over the index box `ranges` of a row-major array of `shape`.
fn increment_box(data: &mut [u32], shape: &[usize], ranges: &[(usize, usize)]) {
    match ranges.split_first() {
        None => data[0] += 1,
        Some((&(lo, hi), rest)) => {
            let stride: usize = shape[1..].iter().product();
            for t in lo..=hi {
                increment_box(&mut data[t * stride..(t + 1) * stride], &shape[1..], rest);
            }
        }
    }
}

/// Translates `A·k` whose cubes meet the region.
pub fn lattice_window(lattice: &Lattice, region: &GridRegion) -> Result<Vec<QVector>> {
    lattice_window_with(lattice, region, Execution::default())
}

pub fn lattice_window_with(lattice: &Lattice, region: &GridRegion, exec: Execution) -> Result<Vec<QVector>> {
    check_dim(lattice.dim(), region.dim())?;
    Ok(lattice
        .points_in_box(&region.translate_window(), exec)?
        .into_iter()
        .map(|(_, p)| p)
        .collect())
}
