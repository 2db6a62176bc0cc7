use thiserror::Error;

/// Errors produced by the digital topology engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("adjacency order u = {u} is out of range for ambient dimension n = {n} (need 1 <= u <= n)")]
    InvalidAdjacency { n: usize, u: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("lattice points must have at least one coordinate")]
    EmptyPoint,

    #[error("point {0} is not in the image")]
    PointNotInImage(String),

    #[error("digital interval [{a}, {b}] requires a < b")]
    InvalidInterval { a: i64, b: i64 },

    #[error("coordinate overflow")]
    CoordinateOverflow,

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("map is not digitally continuous")]
    NotContinuous,

    #[error("index {index} out of range (valid range is {range})")]
    IndexOutOfRange { index: i64, range: String },

    #[error("path endpoints do not match")]
    EndpointMismatch,

    #[error("not a loop: {0}")]
    NotALoop(String),

    #[error("base points differ")]
    BasePointMismatch,

    #[error("base point is not fixed: {0}")]
    BasePointNotFixed(String),

    #[error("invalid path: {0}")]
    InvalidPath(String),

    #[error("invalid homotopy: {0}")]
    InvalidHomotopy(String),

    #[error("homotopy search exceeded the state cap of {cap} maps")]
    StateCapExceeded { cap: usize },

    #[error("chain dimension {requested} exceeds the configured maximum {max}")]
    DimensionTooLarge { requested: usize, max: usize },

    #[error("invalid edge: {0}")]
    InvalidEdge(String),

    #[error("subset continuity check supports at most {max} points, image has {found}")]
    TooManyPoints { max: usize, found: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
