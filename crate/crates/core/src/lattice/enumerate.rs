//! Integer points `k` with `A·k` inside an axis-aligned box.
//!
//! Depth-first over the coordinates of `k`. Each coordinate is first boxed
//! using the rows of `A^{-1}`; at every level the remaining coordinates'
//! contribution to each row of `A·k` is bounded by interval arithmetic, which
//! turns the box constraint into an exact integer range for the next
//! coordinate. Leaves are checked exactly against the box boundaries.

use num::{BigInt, Zero};

use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::linalg::rational::{ceil_int, floor_int};
use crate::linalg::{IntVector, QMatrix, QVector, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    Open,
    Closed,
}

/// Axis-aligned box `lo ⋚ y ⋚ hi` with the same boundary kind on every axis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxRegion {
    pub lo: QVector,
    pub hi: QVector,
    pub lo_side: Boundary,
    pub hi_side: Boundary,
}

impl BoxRegion {
    pub fn open(lo: QVector, hi: QVector) -> Self {
        BoxRegion {
            lo,
            hi,
            lo_side: Boundary::Open,
            hi_side: Boundary::Open,
        }
    }

    /// `(-1, 1)^d` shifted by `-center`, i.e. `y + center ∈ (-1,1)^d`.
    pub fn open_unit_around(center: &[Rational]) -> Self {
        let one = Rational::from_integer(BigInt::from(1));
        BoxRegion::open(
            center.iter().map(|c| -&one - c).collect(),
            center.iter().map(|c| &one - c).collect(),
        )
    }

    pub fn contains(&self, y: &[Rational]) -> bool {
        y.iter().zip(self.lo.iter().zip(&self.hi)).all(|(v, (lo, hi))| {
            let above = match self.lo_side {
                Boundary::Open => v > lo,
                Boundary::Closed => v >= lo,
            };
            let below = match self.hi_side {
                Boundary::Open => v < hi,
                Boundary::Closed => v <= hi,
            };
            above && below
        })
    }
}

fn min_max(a: Rational, b: Rational) -> (Rational, Rational) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

struct Search<'a> {
    a: &'a QMatrix,
    region: &'a BoxRegion,
    /// `rem_lo[m][i]`, `rem_hi[m][i]` bound `Σ_{l>=m} A_il k_l`.
    rem_lo: Vec<QVector>,
    rem_hi: Vec<QVector>,
    kmin: IntVector,
    kmax: IntVector,
}

impl Search<'_> {
    fn dim(&self) -> usize {
        self.kmin.len()
    }

    /// Integer range for `k_m` given the partial sums of the fixed coordinates.
    fn range(&self, m: usize, partial: &[Rational]) -> Option<(BigInt, BigInt)> {
        let (mut lo, mut hi) = (self.kmin[m].clone(), self.kmax[m].clone());
        for (i, p) in partial.iter().enumerate() {
            let lower = &self.region.lo[i] - &self.rem_hi[m + 1][i] - p;
            let upper = &self.region.hi[i] - &self.rem_lo[m + 1][i] - p;
            let coeff = &self.a[(i, m)];
            if coeff.is_zero() {
                if lower > Rational::zero() || upper < Rational::zero() {
                    return None;
                }
                continue;
            }
            let (t1, t2) = min_max(lower / coeff, upper / coeff);
            lo = lo.max(ceil_int(&t1));
            hi = hi.min(floor_int(&t2));
            if lo > hi {
                return None;
            }
        }
        Some((lo, hi))
    }

    fn descend(&self, m: usize, k: &mut IntVector, partial: &mut QVector, out: &mut Vec<IntVector>) {
        if m == self.dim() {
            if self.region.contains(partial) {
                out.push(k.clone());
            }
            return;
        }
        let Some((lo, hi)) = self.range(m, partial) else {
            return;
        };
        let mut value = lo;
        while value <= hi {
            self.step(m, &value, k, partial, out);
            value += 1;
        }
    }

    fn step(&self, m: usize, value: &BigInt, k: &mut IntVector, partial: &mut QVector, out: &mut Vec<IntVector>) {
        let shift: QVector = (0..self.dim())
            .map(|i| &self.a[(i, m)] * Rational::from_integer(value.clone()))
            .collect();
        for (p, s) in partial.iter_mut().zip(&shift) {
            *p += s;
        }
        k[m] = value.clone();
        self.descend(m + 1, k, partial, out);
        for (p, s) in partial.iter_mut().zip(&shift) {
            *p -= s;
        }
    }
}

/// Every `k ∈ Z^d` with `A·k ∈ region`, in lexicographic order.
pub fn integer_points_in_box(
    a: &QMatrix,
    a_inv: &QMatrix,
    region: &BoxRegion,
    exec: Execution,
) -> Result<Vec<IntVector>> {
    let d = a.dim()?;
    if region.lo.len() != d || region.hi.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: region.lo.len().min(region.hi.len()),
        });
    }
    let mut kmin = Vec::with_capacity(d);
    let mut kmax = Vec::with_capacity(d);
    for l in 0..d {
        let (mut low, mut high) = (Rational::zero(), Rational::zero());
        for j in 0..d {
            let (x, y) = min_max(&a_inv[(l, j)] * &region.lo[j], &a_inv[(l, j)] * &region.hi[j]);
            low += x;
            high += y;
        }
        kmin.push(ceil_int(&low));
        kmax.push(floor_int(&high));
        if kmin[l] > kmax[l] {
            return Ok(Vec::new());
        }
    }
    let mut rem_lo = vec![vec![Rational::zero(); d]; d + 1];
    let mut rem_hi = vec![vec![Rational::zero(); d]; d + 1];
    for m in (0..d).rev() {
        for i in 0..d {
            let coeff = &a[(i, m)];
            let (x, y) = min_max(
                coeff * Rational::from_integer(kmin[m].clone()),
                coeff * Rational::from_integer(kmax[m].clone()),
            );
            rem_lo[m][i] = &rem_lo[m + 1][i] + x;
            rem_hi[m][i] = &rem_hi[m + 1][i] + y;
        }
    }
    let search = Search {
        a,
        region,
        rem_lo,
        rem_hi,
        kmin,
        kmax,
    };

    let zero_partial = vec![Rational::zero(); d];
    let Some((lo, hi)) = search.range(0, &zero_partial) else {
        return Ok(Vec::new());
    };
    let mut firsts = Vec::new();
    let mut value = lo;
    while value <= hi {
        firsts.push(value.clone());
        value += 1;
    }
    let chunks = exec::map_collect(exec, &firsts, |first| {
        let mut k = vec![BigInt::zero(); d];
        let mut partial = zero_partial.clone();
        let mut out = Vec::new();
        search.step(0, first, &mut k, &mut partial, &mut out);
        out
    });
    Ok(chunks.into_iter().flatten().collect())
}

/// Brute-force reference used in tests: scan the whole `A^{-1}` box.
#[cfg(test)]
pub(crate) fn brute_force_points(a: &QMatrix, region: &BoxRegion, radius: i64) -> Vec<IntVector> {
    let d = a.rows();
    let mut out = Vec::new();
    let mut k = vec![-radius; d];
    loop {
        let kv: IntVector = k.iter().map(|&x| BigInt::from(x)).collect();
        let y = a.mul_vec(&crate::linalg::int_to_q(&kv)).unwrap();
        if region.contains(&y) {
            out.push(kv);
        }
        let mut i = d;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if k[i] < radius {
                k[i] += 1;
                break;
            }
            k[i] = -radius;
        }
    }
}
