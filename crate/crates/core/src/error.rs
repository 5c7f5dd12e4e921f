use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the set on which the formula is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// Pointwise evaluation requested exactly at a singular point
    /// (peak, jump, or the vertical asymptote of the analytic path).
    #[error("singular point: {what} at {location}")]
    Singular { what: &'static str, location: f64 },

    #[error("invalid usage: {0}")]
    Usage(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }
}
