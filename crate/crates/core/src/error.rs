use alloc::string::String;

/// Errors raised by the algebra core.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("operation is not supported over {0}")]
    UnsupportedRing(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("no solution exists")]
    NoSolution,
    #[error("map is not well defined: {0}")]
    NotWellDefined(String),
    #[error("invalid quiver parameters: {0}")]
    InvalidQuiver(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("unknown arrow {0}")]
    UnknownArrow(String),
    #[error("{0} is a boundary vertex of the window")]
    BoundaryVertex(String),
    #[error("no morphism of degree {degree} from {from} to {to}")]
    DegreeOutOfRange {
        from: String,
        to: String,
        degree: usize,
    },
    #[error("window too small: {0}")]
    WindowTooSmall(String),
    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),
    #[error("cross-check failed: {0}")]
    CrossCheck(String),
    #[error("degree {requested} exceeds the configured limit {limit}")]
    DegreeLimit { requested: usize, limit: usize },
}

pub type Result<T> = core::result::Result<T, Error>;
