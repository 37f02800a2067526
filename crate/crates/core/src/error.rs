use thiserror::Error;

/// Errors raised by registry construction, value validation, and engine
/// operations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid rational `{0}`: expected `p` or `p/q` with nonzero q")]
    BadRational(String),

    #[error("registry: {0}")]
    Registry(String),

    #[error("unknown cuspidal symbol `{0}`")]
    UnknownSymbol(String),

    #[error("invalid segment: {0}")]
    BadSegment(String),

    #[error("partition parts overlap on {0}")]
    OverlappingParts(String),

    #[error("partition is not regular: {0}")]
    IrregularPartition(String),

    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    #[error("partial cuspidal supports differ: `{0}` vs `{1}`")]
    SigmaMismatch(String, String),

    #[error("line mismatch: {0}")]
    LineMismatch(String),

    #[error("reducibility exponents differ: {0}")]
    AlphaMismatch(String),

    #[error("symbol `{0}` is not self-dual")]
    NotSelfDual(String),

    #[error("support violation: {0}")]
    SupportViolation(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
