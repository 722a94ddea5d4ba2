//! Covering-translate oracles and the twin search over `{0,1}^d`.

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::exec::{map_collect, Execution};
use crate::linalg::matrix::check_dim;
use crate::linalg::{vec_sub, QVector, Rational};

/// Anything that can answer "which cube contains `x`?".
pub trait CoveringSource: Sync {
    fn dimension(&self) -> usize;

    /// The translate `φ` with `x - φ ∈ [0,1)^d`.
    fn covering_translate(&self, x: &[Rational]) -> Result<QVector>;
}

/// A covering source backed by a closure.
pub struct FnSource<F> {
    dim: usize,
    f: F,
}

impl<F> FnSource<F>
where
    F: Fn(&[Rational]) -> Result<QVector> + Sync,
{
    pub fn new(dim: usize, f: F) -> Self {
        FnSource { dim, f }
    }
}

impl<F> CoveringSource for FnSource<F>
where
    F: Fn(&[Rational]) -> Result<QVector> + Sync,
{
    fn dimension(&self) -> usize {
        self.dim
    }

    fn covering_translate(&self, x: &[Rational]) -> Result<QVector> {
        (self.f)(x)
    }
}

/// View of a covering source restricted to a coordinate subspace.
///
/// Level coordinate `i` corresponds to ambient axis `axes[i]`; ambient axes
/// not listed are pinned to 0. `history` lists the position swaps applied to
/// `axes`, in order, starting from the identity.
#[derive(Clone)]
pub struct TilingOracle<'a> {
    source: &'a dyn CoveringSource,
    axes: Vec<usize>,
    history: Vec<(usize, usize)>,
}

impl std::fmt::Debug for TilingOracle<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TilingOracle")
            .field("axes", &self.axes)
            .field("history", &self.history)
            .finish()
    }
}

impl<'a> TilingOracle<'a> {
    pub fn new(source: &'a dyn CoveringSource) -> Self {
        TilingOracle {
            source,
            axes: (0..source.dimension()).collect(),
            history: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.source.dimension()
    }

    /// Ambient axis behind each level coordinate.
    pub fn axes(&self) -> &[usize] {
        &self.axes
    }

    pub fn history(&self) -> &[(usize, usize)] {
        &self.history
    }

    /// Embeds a level point into ambient space.
    pub fn to_ambient(&self, y: &[Rational]) -> QVector {
        let mut x = vec![Rational::zero(); self.ambient_dim()];
        for (yi, &a) in y.iter().zip(&self.axes) {
            x[a] = yi.clone();
        }
        x
    }

    /// Covering translate at a level point, projected back to level coordinates.
    pub fn query(&self, y: &[Rational]) -> Result<QVector> {
        check_dim(self.dim(), y.len())?;
        let phi = self.source.covering_translate(&self.to_ambient(y))?;
        check_dim(self.ambient_dim(), phi.len())?;
        Ok(self.axes.iter().map(|&a| phi[a].clone()).collect())
    }

    pub fn swap_axes(&mut self, i: usize, j: usize) {
        if i != j {
            self.axes.swap(i, j);
            self.history.push((i, j));
        }
    }

    /// Drops the last level coordinate (pins it to 0).
    pub fn project(&self) -> TilingOracle<'a> {
        let mut sub = self.clone();
        sub.axes.pop();
        sub
    }
}

/// Two points of `{0,1}^d` whose covering translates differ by `+e_axis`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwinPair {
    pub v: Vec<u8>,
    pub w: Vec<u8>,
    pub axis: usize,
    pub phi_v: QVector,
    pub phi_w: QVector,
}

fn corner(d: usize, index: usize) -> Vec<u8> {
    (0..d).map(|i| ((index >> (d - 1 - i)) & 1) as u8).collect()
}

pub(crate) fn corner_point(bits: &[u8]) -> QVector {
    bits.iter()
        .map(|&b| if b == 1 { Rational::one() } else { Rational::zero() })
        .collect()
}

/// `Some((axis, sign))` if `diff = sign·e_axis`.
fn signed_unit_axis(diff: &[Rational]) -> Option<(usize, bool)> {
    let mut nonzero = diff.iter().enumerate().filter(|(_, x)| !x.is_zero());
    let (axis, value) = nonzero.next()?;
    if nonzero.next().is_some() {
        return None;
    }
    if value.is_one() {
        Some((axis, true))
    } else if (-value).is_one() {
        Some((axis, false))
    } else {
        None
    }
}

/// Lexicographically first `(v, w)` in `{0,1}^d × {0,1}^d` whose covering
/// translates differ by `±e_j`, reoriented so the difference is `+e_j`.
pub fn find_twin(oracle: &TilingOracle<'_>, exec: Execution) -> Result<TwinPair> {
    let d = oracle.dim();
    let corners: Vec<Vec<u8>> = (0..1usize << d).map(|i| corner(d, i)).collect();
    let phis = map_collect(exec, &corners, |c| oracle.query(&corner_point(c)))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    for (a, phi_a) in phis.iter().enumerate() {
        for (b, phi_b) in phis.iter().enumerate() {
            if let Some((axis, positive)) = signed_unit_axis(&vec_sub(phi_a, phi_b)) {
                let (v, w) = if positive { (a, b) } else { (b, a) };
                return Ok(TwinPair {
                    v: corners[v].clone(),
                    w: corners[w].clone(),
                    axis,
                    phi_v: phis[v].clone(),
                    phi_w: phis[w].clone(),
                });
            }
        }
    }
    Err(Error::NoTwinFound { dimension: d })
}

/// Moves the twin axis last, then drops it.
pub fn project_oracle<'a>(oracle: &TilingOracle<'a>, twin: &TwinPair) -> TilingOracle<'a> {
    let mut swapped = oracle.clone();
    swapped.swap_axes(twin.axis, oracle.dim() - 1);
    swapped.project()
}
