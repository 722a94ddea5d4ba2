//! Extracting a cube-tiling lattice from a periodic cube tiling.
//!
//! Recursion on dimension: find twin cubes (translates differing by a unit
//! vector), move that axis last, restrict to the hyperplane `x_d = 0`, and
//! recurse. Each level contributes one basis vector `φ_v - φ_w` computed in
//! the ambient tiling at the lifted `{0,1}`-points.

use num::{One, Zero};

use super::oracle::{corner_point, find_twin, project_oracle, TilingOracle};
use super::PeriodicTiling;
use crate::cube::verify_lattice_tiling_with;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::lattice::Lattice;
use crate::linalg::{vec_neg, vec_sub, QMatrix, QVector, Rational};

/// Largest dimension in which every cube tiling is known to contain twins.
pub const MAX_GUARANTEED_DIM: usize = 7;

#[derive(Debug, Clone, Copy, Default)]
pub struct BuildOptions {
    /// Attempt dimensions above [`MAX_GUARANTEED_DIM`]; a missing twin is
    /// then inconclusive rather than a refutation.
    pub allow_high_dim: bool,
    pub execution: Execution,
}

/// One basis vector's provenance: ambient points with `φ_v - φ_w` the vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwinPoints {
    pub v: Vec<u8>,
    pub w: Vec<u8>,
}

#[derive(Debug, Clone)]
pub struct LatticeConstruction {
    pub lattice: Lattice,
    /// Column `j` of the basis is `φ(pairs[j].v) - φ(pairs[j].w)`.
    pub pairs: Vec<TwinPoints>,
    /// The covering translate of the origin, subtracted before the recursion.
    pub shift: QVector,
    /// Axis swaps applied during the recursion, outermost level first.
    pub relabelings: Vec<(usize, usize)>,
    /// A coordinate order in which the point differences `v_j - w_j` are
    /// staircase shaped (zeros, then 1, then entries in `{0,1}`), if any.
    pub staircase: Option<Vec<usize>>,
}

pub fn build_lattice_from_tiling(t: &PeriodicTiling, options: BuildOptions) -> Result<LatticeConstruction> {
    let d = t.dim();
    if d > MAX_GUARANTEED_DIM && !options.allow_high_dim {
        return Err(Error::DimensionAboveGuarantee(d));
    }
    if !t.validate()? {
        return Err(Error::NotATiling("validation failed".into()));
    }
    let shift = t.covering_translate(&vec![Rational::zero(); d])?;
    let normalized = t.translated(&vec_neg(&shift))?;
    let oracle = TilingOracle::new(&normalized);

    let mut pairs = Vec::with_capacity(d);
    let deepest = descend(&oracle, options.execution, &mut pairs)?;
    pairs.reverse();

    let columns = pairs
        .iter()
        .map(|p| {
            let phi_v = normalized.covering_translate(&corner_point(&p.v))?;
            let phi_w = normalized.covering_translate(&corner_point(&p.w))?;
            Ok(vec_sub(&phi_v, &phi_w))
        })
        .collect::<Result<Vec<_>>>()?;
    let basis = QMatrix::from_columns(&columns)?;
    if !verify_lattice_tiling_with(&basis, options.execution).unwrap_or(false) {
        return Err(Error::ConstructionFailed("assembled basis does not tile".into()));
    }
    let point_steps: Vec<QVector> = pairs
        .iter()
        .map(|p| vec_sub(&corner_point(&p.v), &corner_point(&p.w)))
        .collect();
    let staircase = staircase_order(&point_steps);
    Ok(LatticeConstruction {
        lattice: Lattice::new(basis)?,
        pairs,
        shift,
        relabelings: deepest.history().to_vec(),
        staircase,
    })
}

/// Pushes twin points from the top level down; returns the 1-dimensional oracle.
fn descend<'a>(oracle: &TilingOracle<'a>, exec: Execution, pairs: &mut Vec<TwinPoints>) -> Result<TilingOracle<'a>> {
    let lift = |bits: &[u8]| -> Vec<u8> {
        oracle
            .to_ambient(&corner_point(bits))
            .iter()
            .map(|x| u8::from(x.is_one()))
            .collect()
    };
    if oracle.dim() == 1 {
        let step = vec_sub(&oracle.query(&[Rational::one()])?, &oracle.query(&[Rational::zero()])?);
        if !step[0].is_one() {
            return Err(Error::ConstructionFailed("one-dimensional slice is not a unit tiling".into()));
        }
        pairs.push(TwinPoints {
            v: lift(&[1]),
            w: lift(&[0]),
        });
        return Ok(oracle.clone());
    }
    let twin = find_twin(oracle, exec)?;
    pairs.push(TwinPoints {
        v: lift(&twin.v),
        w: lift(&twin.w),
    });
    descend(&project_oracle(oracle, &twin), exec, pairs)
}

fn staircase_order(columns: &[QVector]) -> Option<Vec<usize>> {
    fn extend(columns: &[QVector], order: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let j = order.len();
        if j == columns.len() {
            return true;
        }
        let col = &columns[j];
        if order.iter().any(|&a| !col[a].is_zero()) {
            return false;
        }
        let binary = |x: &Rational| x.is_zero() || x.is_one();
        for a in 0..used.len() {
            if used[a] || !col[a].is_one() {
                continue;
            }
            let rest_ok = (0..used.len()).all(|b| used[b] || b == a || binary(&col[b]));
            if !rest_ok {
                continue;
            }
            used[a] = true;
            order.push(a);
            if extend(columns, order, used) {
                return true;
            }
            order.pop();
            used[a] = false;
        }
        false
    }
    let mut order = Vec::new();
    let mut used = vec![false; columns.len()];
    extend(columns, &mut order, &mut used).then_some(order)
}
