//! Error type shared by every module in the crate.

use std::fmt;

/// Errors produced by evaluation, derivation, and search routines.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument was NaN or infinite.
    NonFinite { what: &'static str, value: f64 },
    /// An abscissa was negative where only `x >= 0` is defined.
    NegativeX { x: f64 },
    /// A matching horizon below the supported minimum.
    HorizonTooSmall { t: f64, t_min: f64 },
    /// Parameters violate the constraints of the log-quadratic family.
    InvalidParams { reason: String },
    /// A grid or search specification is unusable.
    InvalidGrid { reason: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonFinite { what, value } => {
                write!(f, "{what} must be finite, got {value}")
            }
            Error::NegativeX { x } => write!(f, "x must be nonnegative, got {x}"),
            Error::HorizonTooSmall { t, t_min } => {
                write!(f, "matching horizon t = {t} is below the minimum {t_min}")
            }
            Error::InvalidParams { reason } => write!(f, "invalid parameters: {reason}"),
            Error::InvalidGrid { reason } => write!(f, "invalid grid: {reason}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
