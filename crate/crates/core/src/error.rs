use alloc::string::String;

/// Errors raised by the numerical substrate, the frame types and the checkers.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("empty input")]
    EmptyInput,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix data length {len} does not match {rows}x{cols}")]
    BadShape { rows: usize, cols: usize, len: usize },
    #[error("non-finite entry in input")]
    NonFinite,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric (relative asymmetry {0:e})")]
    NotSymmetric(f64),
    #[error("matrix is singular at the rank tolerance")]
    Singular,
    #[error("iteration limit of {0} exceeded")]
    IterationLimit(usize),
    #[error("feasible set is empty at tolerance")]
    Infeasible,
    #[error("objective is unbounded on the feasible set")]
    Unbounded,
    #[error("invalid tolerance: {0}")]
    InvalidTolerance(&'static str),
    #[error("the zero subspace is not representable")]
    ZeroSubspace,
    #[error("basis columns are not orthonormal (deviation {0:e})")]
    NotOrthonormal(f64),
    #[error("subspaces overlap; the direct sum is not defined")]
    OverlappingSubspaces,
    #[error("fusion frame needs at least one subspace")]
    EmptyFrame,
    #[error("weight {0} is not strictly positive")]
    NonpositiveWeight(f64),
    #[error("family is not a fusion frame")]
    NotAFrame,
    #[error("family is not a fusion Riesz basis")]
    NotRieszBasis,
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("scaling factor {0} is not strictly positive")]
    NonpositiveGamma(f64),
    #[error("malformed excess decomposition: {0}")]
    MalformedDecomposition(String),
    #[error("wrong ambient dimension: expected {expected}, found {found}")]
    WrongAmbientDimension { expected: usize, found: usize },
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
}

pub type Result<T> = core::result::Result<T, Error>;
