use thiserror::Error;

/// Errors raised by geometric and metric operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("zero direction vector")]
    ZeroDirection,

    #[error("coordinates must be finite")]
    NonFinite,

    #[error("point lies outside the closure of the body")]
    OutsideClosure,

    #[error("point is not in the interior of the body")]
    NotInterior,

    #[error("point {index} is not in the interior of the body")]
    NotInteriorAt { index: usize },

    #[error("points must be distinct")]
    CoincidentPoints,

    #[error("invalid body: {0}")]
    InvalidBody(String),

    #[error("body has empty interior")]
    EmptyInterior,

    #[error("unsupported body kind for {0}")]
    Unsupported(&'static str),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("degenerate interval: basepoint coincides with a finite endpoint")]
    DegenerateInterval,

    #[error("half-open intervals have no symmetric harmonic symmetrization")]
    HalfOpenInterval,

    #[error("no point at the requested distance in this direction")]
    NoSolution,

    #[error("finite-difference step underflow near the boundary")]
    StepUnderflow,

    #[error("path leaves the interior at sample {index}")]
    PathNotInterior { index: usize },

    #[error("parameter grid is not strictly increasing at sample {index}")]
    NonMonotoneGrid { index: usize },

    #[error("invalid vertex id {0}")]
    InvalidVertex(usize),

    #[error("edge {0} has no reverse edge")]
    MissingReverse(usize),

    #[error("linear program failed: {0}")]
    Lp(String),
}

pub type Result<T, E = GeomError> = std::result::Result<T, E>;
