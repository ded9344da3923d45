use thiserror::Error;

/// Errors raised by the numerical kernels, models and norm solvers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Adaptive quadrature ran out of subdivisions before meeting its tolerance.
    #[error("quadrature did not converge: estimate {estimate:e}, error bound {error_bound:e}")]
    Accuracy { estimate: f64, error_bound: f64 },

    /// A semi-infinite integral showed no tail decay.
    #[error("integral appears to diverge: partial sum {partial_sum:e} at {reached:e}")]
    Divergence { partial_sum: f64, reached: f64 },

    /// Root bracket endpoints have the same sign.
    #[error("bracketing failed: g({lo:e}) = {g_lo:e} and g({hi:e}) = {g_hi:e} have the same sign")]
    Bracketing {
        lo: f64,
        hi: f64,
        g_lo: f64,
        g_hi: f64,
    },

    /// A textual specification could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),

    /// The operation is not available for this model or function.
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn parse_error(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}
