use thiserror::Error;

/// Errors raised by the numerical pipeline.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Parameters violate a structural invariant (shape, ranges).
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// The adaptive precision loop needed more bits than allowed.
    #[error("precision cap exceeded: {requested} bits requested, cap is {cap}")]
    PrecisionCap { requested: u32, cap: u32 },

    /// An iterative method (quadrature, root tracking, linear algebra) failed.
    #[error("numeric failure: {0}")]
    Numeric(String),

    /// The certified zero finder could not exhibit all sign changes.
    #[error("zero certification failed: {0}")]
    Certification(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
