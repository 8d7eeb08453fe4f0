//! Log-quadratic bounds and approximations of the Gaussian Q-function.
//!
//! The tail probability `Q(x)` of a standard normal is not elementary, but
//! it is squeezed tightly by curves of the form `exp(-a x^2 - b x - c)`,
//! which stay tractable under products and exponentiation. This crate
//! provides:
//!
//! * [`mod@reference`] — a self-contained high-precision evaluator for `Q`,
//!   the density, Mill's ratio, and the log-derivatives of `Q`, backed by
//!   two independent internal routes that cross-check each other;
//! * [`logquad`] — the log-quadratic family, a tight two-sided bound pair
//!   around `Q`, the Chernoff and Mitrinovic comparison bounds, and the
//!   residual functions whose signs certify the pair;
//! * [`derivation`] — closed-form coefficients `a*(t)`, `b*(t)` matching
//!   the integrated log-derivatives of `Q` over `[0, t]`;
//! * [`tuner`] — sup-error measurement and a golden-section search for
//!   the horizon `t` with minimax absolute error (about 9.49e-4 near
//!   `t = 1.295`);
//! * [`curve`] — the name-registered family of interchangeable bounds and
//!   approximations consumed by the verifier and the CLI;
//! * [`verify`] and [`cli`] — grid verification and the `qfit` binary's
//!   command layer.

pub mod cli;
pub mod curve;
pub mod derivation;
pub mod error;
pub mod logquad;
pub mod reference;
pub mod tuner;
pub mod verify;

pub use error::{Error, Result};
