//! Analytic parameter derivation for the log-quadratic approximation.
//!
//! Given a matching horizon `t`, the quadratic coefficient comes from
//! equating the integrals of the second log-derivatives of `Q` and of the
//! approximation over `[0, t]`, and the linear coefficient from the same
//! equation for the first log-derivatives with `a` already fixed. The
//! constant is pinned to `ln 2` so the approximation equals 1/2 at the
//! origin; together with the integral matching this makes the
//! approximation interpolate `Q` exactly at both `x = 0` and `x = t`.

use crate::error::{Error, Result};
use crate::logquad::LogQuadParams;
use crate::reference;

use std::f64::consts::LN_2;

/// Smallest supported matching horizon. `a_star` is a 0/0 form at `t = 0`
/// (its limit is `1/pi`); rather than special-casing the limit, small
/// horizons are rejected outright.
pub const T_MIN: f64 = 1e-3;

fn ensure_horizon(t: f64) -> Result<()> {
    if !t.is_finite() {
        return Err(Error::NonFinite { what: "t", value: t });
    }
    if t < T_MIN {
        return Err(Error::HorizonTooSmall { t, t_min: T_MIN });
    }
    Ok(())
}

/// Derived parameters at one horizon.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivedParams {
    /// Matching horizon.
    pub t: f64,
    /// Quadratic coefficient; lies strictly inside `(1/pi, 1/2)`.
    pub a_star: f64,
    /// Linear coefficient; positive on the supported range.
    pub b_star: f64,
    /// The assembled instance `{a = a_star, b = b_star, c = ln 2}`.
    pub params: LogQuadParams,
}

/// Quadratic coefficient for horizon `t`:
/// `-(1/(2t)) (sqrt(2/pi) - phi(t)/Q(t))`.
///
/// The hazard `phi/Q` is evaluated through Mill's ratio so the formula
/// survives horizons deep in the tail where `phi` and `Q` both underflow.
/// The averaged-curvature form keeps the result strictly inside
/// `(1/pi, 1/2)` for every supported `t`.
pub fn a_star(t: f64) -> Result<f64> {
    ensure_horizon(t)?;
    Ok(a_star_unchecked(t))
}

fn a_star_unchecked(t: f64) -> f64 {
    let hazard = 1.0 / reference::mills_unchecked(t);
    -(0.5 / t) * (reference::SQRT_2_OVER_PI - hazard)
}

/// Linear coefficient for horizon `t`:
/// `(1/2) (sqrt(2/pi) - phi(t)/Q(t)) - (1/t) ln(2 Q(t))`.
///
/// [`b_star_from_a`] computes the same quantity through `a_star`; the two
/// agree to ~1e-12 and the test suite keeps them honest against each other.
pub fn b_star(t: f64) -> Result<f64> {
    ensure_horizon(t)?;
    Ok(b_star_unchecked(t))
}

fn b_star_unchecked(t: f64) -> f64 {
    let hazard = 1.0 / reference::mills_unchecked(t);
    let log_2q = LN_2 + reference::log_q_unchecked(t);
    0.5 * (reference::SQRT_2_OVER_PI - hazard) - log_2q / t
}

/// Cross-check form of the linear coefficient:
/// `-a_star(t) t - (1/t) ln(2 Q(t))`.
pub fn b_star_from_a(t: f64) -> Result<f64> {
    ensure_horizon(t)?;
    let log_2q = LN_2 + reference::log_q_unchecked(t);
    Ok(-a_star_unchecked(t) * t - log_2q / t)
}

/// Assemble the approximation for horizon `t`. One evaluation of `Q(t)`
/// is all the reference input the construction needs.
pub fn build_approx(t: f64) -> Result<DerivedParams> {
    ensure_horizon(t)?;
    Ok(build_approx_unchecked(t))
}

pub(crate) fn build_approx_unchecked(t: f64) -> DerivedParams {
    let a = a_star_unchecked(t);
    let b = b_star_unchecked(t);
    let params = LogQuadParams::new(a, b, LN_2, format!("derived(t={t})"))
        .expect("derived coefficients always satisfy the family constraints");
    DerivedParams {
        t,
        a_star: a,
        b_star: b,
        params,
    }
}
