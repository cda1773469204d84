//! Crate-wide error type.
//!
//! Arithmetic, parsing, quadrature and geometry failures all flow through
//! [`Error`] so that callers (and the CLI) can map outcomes to a small,
//! stable set of categories.

use thiserror::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An edif with `u² + v² = 0` has no multiplicative inverse. On a field
    /// evaluation this signals a pole.
    #[error("zero divisor: edif with u\u{b2} + v\u{b2} = 0 has no inverse")]
    ZeroDivisor,

    /// The operation (log, sqrt, polar decomposition) is undefined at the
    /// zero edif.
    #[error("operation undefined for the zero edif")]
    ZeroEdif,

    /// A computation produced a non-finite number (overflow or NaN).
    #[error("result is not finite")]
    NonFinite,

    /// Expression text did not conform to the grammar.
    #[error("parse error at byte {position}: found {found}, expected {}", .expected.join(" | "))]
    Parse {
        position: usize,
        found: String,
        expected: Vec<&'static str>,
    },

    /// A field evaluation hit a singularity (pole, branch point) at a point.
    #[error("singular evaluation at ({x}, {y})")]
    SingularEvaluation { x: f64, y: f64 },

    /// The expression contains a node that symbolic differentiation does not
    /// support.
    #[error("expression cannot be differentiated: {0}")]
    NotDifferentiable(&'static str),

    /// An integrand sample on the curve was singular or non-finite.
    #[error("integrand singular on the curve near t = {t} at ({x}, {y})")]
    SingularOnCurve { t: f64, x: f64, y: f64 },

    /// The quadrature evaluation budget ran out before reaching tolerance.
    #[error("evaluation budget exhausted after {evals} integrand evaluations")]
    Budget { evals: usize },

    /// The requested evaluation point is not strictly inside the curve.
    #[error("point ({x}, {y}) is not strictly inside the curve")]
    PoleOnOrOutside { x: f64, y: f64 },

    /// Curves or pole placements violate a geometric precondition.
    #[error("invalid geometry: {0}")]
    Geometry(String),

    /// A configuration value violates its invariants.
    #[error("invalid configuration: {0}")]
    Config(&'static str),
}

impl Error {
    /// Attach a plane location to pointwise arithmetic failures, turning
    /// them into `SingularEvaluation`. Errors that already carry context are
    /// passed through.
    pub(crate) fn at_point(self, x: f64, y: f64) -> Error {
        match self {
            Error::ZeroDivisor | Error::ZeroEdif => Error::SingularEvaluation { x, y },
            other => other,
        }
    }
}
