//! Error type shared across the crate.

use thiserror::Error;

/// Errors produced by parameter validation, special-function evaluation and
/// the numerical diagnostics that guard the closed forms.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// An argument is outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A parameter set violates a model invariant.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A series or continued fraction did not converge within its term cap.
    #[error("no convergence within {max_terms} terms")]
    NoConvergence { max_terms: usize },

    /// Adaptive quadrature hit its subdivision limit before reaching tolerance.
    #[error("quadrature failed to converge (last estimate {estimate:e}, error {error:e})")]
    Quadrature { estimate: f64, error: f64 },

    /// A density evaluated below the cancellation tolerance. This signals a
    /// coefficient transcription or normalization problem and is never clamped.
    #[error("negative density {value:e} at x = {x:e}")]
    NegativeDensity { x: f64, value: f64 },

    /// An outage curve decreased along an increasing threshold grid.
    #[error("non-monotone outage curve: drop of {drop:e} at grid index {index}")]
    NonMonotone { index: usize, drop: f64 },

    /// A probability landed outside [0, 1] by more than rounding slack.
    #[error("probability {0} outside [0, 1] beyond rounding tolerance")]
    ProbabilityRange(f64),

    /// An estimator was asked to work from too few samples.
    #[error("insufficient samples: got {got}, need at least {min}")]
    InsufficientSamples { got: usize, min: usize },

    /// The rate-to-threshold exponent would overflow.
    #[error("threshold exponent {0} exceeds the overflow guard")]
    ThresholdOverflow(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
