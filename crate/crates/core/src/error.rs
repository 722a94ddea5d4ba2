use thiserror::Error;

/// Errors raised by the library. Absence of a certificate, lattice or twin
/// that the caller asked to *decide* is reported as `None`, not as an error.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix must be non-empty and square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("first lattice is not a sublattice of the second")]
    NotASublattice,
    #[error("coverage region is empty")]
    EmptyRegion,
    #[error("coverage grid exceeds the supported number of points")]
    GridTooLarge,
    #[error("mesh must be positive")]
    NonPositiveMesh,
    #[error("overlap witness requires a nonzero k with Ak in the open cube (-1,1)^d")]
    InvalidWitnessInput,
    #[error("input is not a cube tiling: {0}")]
    NotATiling(String),
    #[error("no twin cubes found among the covering translates of {{0,1}}^{dimension}")]
    NoTwinFound { dimension: usize },
    #[error("dimension {0} exceeds 7; twin cubes are not guaranteed there (override required)")]
    DimensionAboveGuarantee(usize),
    #[error("assembled basis does not give a lattice tiling: {0}")]
    ConstructionFailed(String),
    #[error("matrix does not generate a lattice tiling by unit cubes")]
    NotATilingLattice,
    #[error("frequencies must be distinct")]
    EqualFrequencies,
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("integer vector is not primitive (its entries have a common factor)")]
    NotPrimitive,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
