use thiserror::Error;

/// Errors raised by the numerical and simulation routines.
///
/// Numeric payloads are widened to `f64` so the type does not depend on the
/// scalar parameter.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid model parameters: {0}")]
    InvalidParams(String),

    #[error("kernel singularity: intensity requested exactly at event time {time} with beta < 1")]
    Singularity { time: f64 },

    #[error(
        "quadrature did not converge: value {value:e}, error estimate {error_estimate:e}, target {target:e}"
    )]
    QuadratureNonConvergence {
        value: f64,
        error_estimate: f64,
        target: f64,
    },

    #[error(
        "Laplace inversion at t = {time}: error estimate {error_estimate:e} exceeds target {target:e}"
    )]
    InversionAccuracy {
        time: f64,
        value: f64,
        error_estimate: f64,
        target: f64,
    },

    #[error("pole: denominator factor magnitude {magnitude:e} below {tolerance:e}")]
    Pole { magnitude: f64, tolerance: f64 },

    #[error("event cap of {cap} exceeded at t = {time} (branching ratio too close to 1?)")]
    EventCapExceeded { cap: usize, time: f64 },

    #[error("I/O: {0}")]
    Io(String),

    #[error("format: {0}")]
    Format(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        if e.is_io_error() {
            Error::Io(e.to_string())
        } else {
            Error::Format(e.to_string())
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        if e.is_io() {
            Error::Io(e.to_string())
        } else {
            Error::Format(e.to_string())
        }
    }
}
