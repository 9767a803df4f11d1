use thiserror::Error;

/// Errors raised by the sieve, the exact counting functions, the smooth
/// approximations and the identity checks.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    /// The argument lies beyond the sieved range; results are never truncated.
    #[error("table exhausted: x = {x} exceeds the table limit {limit}")]
    TableExhausted { x: f64, limit: u64 },

    #[error("configuration error: {0}")]
    Config(String),

    /// The requested precision cannot be certified; `achievable` is the best radius.
    #[error("precision error: requested radius {requested:e}, achievable radius {achievable:e}")]
    Precision { requested: f64, achievable: f64 },

    #[error("quadrature did not converge: {0}")]
    Quadrature(String),

    #[error("resource exhausted: {0}")]
    Resource(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
