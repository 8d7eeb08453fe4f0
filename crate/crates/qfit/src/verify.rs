//! Grid verification of the registered bounds against the reference `Q`.
//!
//! The standard grid is linear on `[0, x_max]` plus a log-spaced tail out
//! to `x = 38`. Comparisons on the linear part run in the natural domain
//! with an absolute slack; the tail is compared in the log domain, where
//! the orderings stay meaningful long after `exp` underflows.

use crate::curve::{Curve, Side};
use crate::error::{Error, Result};
use crate::logquad;
use crate::reference;

/// Largest tolerated bound violation on the linear grid.
pub const VIOLATION_SLACK: f64 = 1e-15;
/// Signed slack for the residual-sign checks.
pub const RESIDUAL_SLACK: f64 = 1e-16;
/// Tolerance for the substitution identity, which is algebraically zero.
pub const IDENTITY_SLACK: f64 = 1e-14;
/// Slack for log-domain ordering on the tail; absorbs the ~1e-13 ulp of
/// log values near -700 with orders of magnitude to spare.
pub const LOG_TAIL_SLACK: f64 = 1e-9;

/// End of the log-spaced tail.
pub const TAIL_X_END: f64 = 38.0;
const TAIL_POINTS: usize = 200;

/// Abscissas at which per-bound gaps are reported verbatim.
pub const GAP_SAMPLE_XS: [f64; 4] = [0.5, 1.0, 2.0, 5.0];

/// Linear grid on `[0, x_max]` at `step`, and the log-spaced tail from
/// `x_max` (exclusive) to [`TAIL_X_END`].
pub fn standard_grid(x_max: f64, step: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    if !(x_max.is_finite() && step.is_finite()) || x_max <= 0.0 || step <= 0.0 {
        return Err(Error::InvalidGrid {
            reason: format!("x_max and step must be positive and finite, got ({x_max}, {step})"),
        });
    }
    if step > x_max / 100.0 {
        return Err(Error::InvalidGrid {
            reason: format!("step {step} too coarse for x_max {x_max} (need step <= x_max/100)"),
        });
    }
    let n_steps = (x_max / step).ceil() as usize;
    let mut linear = Vec::with_capacity(n_steps + 1);
    for i in 0..n_steps {
        let x = i as f64 * step;
        if x >= x_max {
            break;
        }
        linear.push(x);
    }
    linear.push(x_max);

    let mut tail = Vec::new();
    if x_max < TAIL_X_END {
        let ratio = TAIL_X_END / x_max;
        for j in 1..=TAIL_POINTS {
            tail.push(x_max * ratio.powf(j as f64 / TAIL_POINTS as f64));
        }
    }
    Ok((linear, tail))
}

/// Verification outcome for one curve.
#[derive(Debug, Clone)]
pub struct CurveCheck {
    pub name: String,
    pub side: Side,
    /// Worst violation of the claimed ordering on the linear grid
    /// (0 when the ordering held everywhere).
    pub max_violation: f64,
    /// Where the worst violation (or the tightest margin) occurred.
    pub violation_x: f64,
    /// Largest absolute gap `|Q - curve|` on the linear grid.
    pub max_gap: f64,
    pub gap_x: f64,
    /// Signed gaps `curve - Q` at [`GAP_SAMPLE_XS`].
    pub sample_gaps: Vec<(f64, f64)>,
    /// Log-domain ordering held on the whole tail.
    pub tail_ok: bool,
}

impl CurveCheck {
    pub fn passed(&self) -> bool {
        self.max_violation <= VIOLATION_SLACK && self.tail_ok
    }
}

/// Sign checks of the two residuals and the substitution identity.
#[derive(Debug, Clone, Copy)]
pub struct ResidualCheck {
    pub lower_min: f64,
    pub lower_min_x: f64,
    pub upper_max: f64,
    pub upper_max_x: f64,
    pub identity_max: f64,
    pub identity_max_x: f64,
}

impl ResidualCheck {
    pub fn passed(&self) -> bool {
        self.lower_min >= -RESIDUAL_SLACK
            && self.upper_max <= RESIDUAL_SLACK
            && self.identity_max <= IDENTITY_SLACK
    }
}

/// Full verification report for a set of curves.
#[derive(Debug)]
pub struct BoundsReport {
    pub curves: Vec<CurveCheck>,
    pub residuals: ResidualCheck,
    pub x_max: f64,
    pub step: f64,
}

impl BoundsReport {
    pub fn passed(&self) -> bool {
        self.curves.iter().all(CurveCheck::passed) && self.residuals.passed()
    }

    /// First offending abscissa, if any check failed.
    pub fn first_violation(&self) -> Option<(String, f64)> {
        for check in &self.curves {
            if check.max_violation > VIOLATION_SLACK {
                return Some((check.name.clone(), check.violation_x));
            }
            if !check.tail_ok {
                return Some((format!("{} (tail ordering)", check.name), self.x_max));
            }
        }
        let r = &self.residuals;
        if r.lower_min < -RESIDUAL_SLACK {
            return Some(("residual-lower".to_string(), r.lower_min_x));
        }
        if r.upper_max > RESIDUAL_SLACK {
            return Some(("residual-upper".to_string(), r.upper_max_x));
        }
        if r.identity_max > IDENTITY_SLACK {
            return Some(("substitution-identity".to_string(), r.identity_max_x));
        }
        None
    }
}

fn check_curve(curve: &dyn Curve, linear: &[f64], qs: &[f64], tail: &[f64]) -> CurveCheck {
    let mut max_violation = 0.0_f64;
    let mut violation_x = 0.0_f64;
    let mut max_gap = -1.0_f64;
    let mut gap_x = 0.0_f64;

    for (&x, &q) in linear.iter().zip(qs.iter()) {
        let v = curve.value(x);
        let violation = match curve.side() {
            Side::Lower => v - q,
            Side::Upper => q - v,
            Side::Approximation => f64::NEG_INFINITY,
        };
        if violation > max_violation {
            max_violation = violation;
            violation_x = x;
        }
        let gap = (q - v).abs();
        if gap > max_gap {
            max_gap = gap;
            gap_x = x;
        }
    }

    let mut tail_ok = true;
    if curve.side() != Side::Approximation {
        for &x in tail {
            let lv = curve.log_value(x);
            let lq = reference::log_q_unchecked(x);
            let ok = match curve.side() {
                Side::Lower => lv <= lq + LOG_TAIL_SLACK,
                Side::Upper => lq <= lv + LOG_TAIL_SLACK,
                Side::Approximation => true,
            };
            if !ok {
                tail_ok = false;
                break;
            }
        }
    }

    let sample_gaps = GAP_SAMPLE_XS
        .iter()
        .map(|&x| (x, curve.value(x) - reference::q_unchecked(x)))
        .collect();

    CurveCheck {
        name: curve.name().to_string(),
        side: curve.side(),
        max_violation: max_violation.max(0.0),
        violation_x,
        max_gap,
        gap_x,
        sample_gaps,
        tail_ok,
    }
}

/// Verify every curve in `curves` on the standard grid, plus the residual
/// signs and the substitution identity.
pub fn verify_bounds(curves: &[Box<dyn Curve>], x_max: f64, step: f64) -> Result<BoundsReport> {
    let (linear, tail) = standard_grid(x_max, step)?;
    let qs: Vec<f64> = linear.iter().map(|&x| reference::q_unchecked(x)).collect();

    let curve_checks = curves
        .iter()
        .map(|c| check_curve(c.as_ref(), &linear, &qs, &tail))
        .collect();

    let mut residuals = ResidualCheck {
        lower_min: f64::INFINITY,
        lower_min_x: 0.0,
        upper_max: f64::NEG_INFINITY,
        upper_max_x: 0.0,
        identity_max: -1.0,
        identity_max_x: 0.0,
    };
    for &x in &linear {
        let rl = logquad::residual_lower(x)?;
        if rl < residuals.lower_min {
            residuals.lower_min = rl;
            residuals.lower_min_x = x;
        }
        let ru = logquad::residual_upper(x)?;
        if ru > residuals.upper_max {
            residuals.upper_max = ru;
            residuals.upper_max_x = x;
        }
        let id = logquad::mitrinovic_substitution_residual(x)?.abs();
        if id > residuals.identity_max {
            residuals.identity_max = id;
            residuals.identity_max_x = x;
        }
    }

    Ok(BoundsReport {
        curves: curve_checks,
        residuals,
        x_max,
        step,
    })
}
