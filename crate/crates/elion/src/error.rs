//! Shared error type for all library operations.

use thiserror::Error;

/// Errors reported by the physics and protocol operations.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// An input lies outside the documented domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The gamma function was evaluated at a non-positive integer.
    #[error("gamma pole at z = {re}", re = .0)]
    GammaPole(f64),

    /// A series or quadrature could not reach the requested accuracy.
    #[error("precision target {requested:.3e} unreachable, achieved bound {achieved:.3e}")]
    Precision { requested: f64, achieved: f64 },

    /// Adjacent grid samples are too far apart to unwrap the phase without
    /// ambiguity.
    #[error("phase unwrap ambiguous between b = {left:.6e} and b = {right:.6e}: step {step:.3} rad")]
    Unwrap { left: f64, right: f64, step: f64 },

    /// A projective measurement produced a state of zero norm.
    #[error("measurement outcome has zero probability; post-measurement state undefined")]
    MeasurementImpossible,

    /// Filesystem failure while writing command output.
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Convenience constructor used by input validation throughout the crate.
pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
