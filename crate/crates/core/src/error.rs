use num_complex::Complex64;
use thiserror::Error;

/// Failures raised by the numerical routines.
///
/// Precondition failures carry the measured quantity that caused the refusal so
/// that callers (and the CLI) can report it.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("grid of {grid} points is too small for degree {degree} (need at least {required})")]
    GridTooSmall {
        grid: usize,
        degree: usize,
        required: usize,
    },

    #[error("function vanishes (approximately) at z = {location} with |p| = {modulus:e}")]
    ZeroOnDisc { location: Complex64, modulus: f64 },

    #[error(
        "nonzero winding number {winding} about the origin; approximate zero at z = {location}"
    )]
    NonzeroWinding { winding: i64, location: Complex64 },

    #[error("quadrature of size ({radial}, {angular}) cannot integrate degree {degree} exactly (need at least {required})")]
    QuadratureTooSmall {
        radial: usize,
        angular: usize,
        degree: usize,
        required: usize,
    },

    #[error(
        "exponent argument has sup norm {sup} > {limit}; truncated exponential is not reliable"
    )]
    ExpArgumentTooLarge { sup: f64, limit: f64 },

    #[error("negative measure weight {0}")]
    NegativeWeight(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("square decomposition failed: {0}")]
    Decomposition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
