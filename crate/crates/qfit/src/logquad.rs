//! The log-quadratic family `exp(-a x^2 - b x - c)` on `x >= 0`, the
//! two-sided exponential bounds on `Q` built from it, the classical
//! Chernoff and Mitrinovic comparison bounds, and the residual functions
//! whose signs certify the bound pair.

use crate::error::{Error, Result};
use crate::reference;

use std::f64::consts::{FRAC_1_PI, FRAC_2_PI, LN_2};

/// Parameters of one member of the family `exp(-a x^2 - b x - c)`.
///
/// Constructed instances satisfy `a >= 0`, `b >= 0`, not both zero, and
/// `c >= 0` (so the value at the origin is a probability). Use
/// [`eval_raw`] to evaluate an exponent without those constraints.
#[derive(Debug, Clone, PartialEq)]
pub struct LogQuadParams {
    a: f64,
    b: f64,
    c: f64,
    label: String,
}

impl LogQuadParams {
    pub fn new(a: f64, b: f64, c: f64, label: impl Into<String>) -> Result<Self> {
        let invalid = |reason: String| Err(Error::InvalidParams { reason });
        if !(a.is_finite() && b.is_finite() && c.is_finite()) {
            return invalid(format!("coefficients must be finite, got ({a}, {b}, {c})"));
        }
        if a < 0.0 || b < 0.0 {
            return invalid(format!("a and b must be nonnegative, got a={a}, b={b}"));
        }
        if a == 0.0 && b == 0.0 {
            return invalid("a and b must not both be zero".to_string());
        }
        if c < 0.0 {
            return invalid(format!("c must be nonnegative so exp(-c) <= 1, got c={c}"));
        }
        Ok(LogQuadParams {
            a,
            b,
            c,
            label: label.into(),
        })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// `exp(-a x^2 - b x - c)`; strictly positive and nonincreasing.
    pub fn eval(&self, x: f64) -> Result<f64> {
        ensure_nonneg(x)?;
        Ok(self.eval_unchecked(x))
    }

    /// The exponent `-a x^2 - b x - c` itself, for tail-safe comparisons
    /// where `eval` would underflow.
    pub fn log_eval(&self, x: f64) -> Result<f64> {
        ensure_nonneg(x)?;
        Ok(self.log_eval_unchecked(x))
    }

    /// First and second derivatives of the exponent:
    /// `(-2 a x - b, -2 a)`.
    pub fn grad_log(&self, x: f64) -> Result<(f64, f64)> {
        ensure_nonneg(x)?;
        Ok((-2.0 * self.a * x - self.b, -2.0 * self.a))
    }

    #[inline]
    pub(crate) fn eval_unchecked(&self, x: f64) -> f64 {
        self.log_eval_unchecked(x).exp()
    }

    #[inline]
    pub(crate) fn log_eval_unchecked(&self, x: f64) -> f64 {
        -(self.a * x * x) - self.b * x - self.c
    }
}

fn ensure_nonneg(x: f64) -> Result<()> {
    if !x.is_finite() {
        return Err(Error::NonFinite { what: "x", value: x });
    }
    if x < 0.0 {
        return Err(Error::NegativeX { x });
    }
    Ok(())
}

/// Evaluate `exp(-a x^2 - b x - c)` without any parameter validation.
pub fn eval_raw(a: f64, b: f64, c: f64, x: f64) -> f64 {
    (-(a * x * x) - b * x - c).exp()
}

/// Lower bound `1/2 exp(-x^2/2 - sqrt(2/pi) x) <= Q(x)` on `x >= 0`,
/// tight at the origin.
pub fn thm1_lower() -> LogQuadParams {
    LogQuadParams {
        a: 0.5,
        b: reference::SQRT_2_OVER_PI,
        c: LN_2,
        label: "thm1-lower".to_string(),
    }
}

/// Upper bound `Q(x) <= 1/2 exp(-x^2/pi - sqrt(2/pi) x)` on `x >= 0`,
/// tight at the origin.
pub fn thm1_upper() -> LogQuadParams {
    LogQuadParams {
        a: FRAC_1_PI,
        b: reference::SQRT_2_OVER_PI,
        c: LN_2,
        label: "thm1-upper".to_string(),
    }
}

/// The Chernoff bound `Q(x) <= 1/2 exp(-x^2/2)`.
pub fn chernoff() -> LogQuadParams {
    LogQuadParams {
        a: 0.5,
        b: 0.0,
        c: LN_2,
        label: "chernoff".to_string(),
    }
}

/// Abscissa where the tight upper bound and the Chernoff bound cross:
/// `sqrt(2/pi) / (1/2 - 1/pi)`, about 4.3915. Below it the tight upper
/// bound is the smaller of the two.
pub fn chernoff_crossover() -> f64 {
    reference::SQRT_2_OVER_PI / (0.5 - FRAC_1_PI)
}

const EIGHT_OVER_PI: f64 = 8.0 / std::f64::consts::PI;

/// Mitrinovic upper bound `Q(x) <= 2 phi(x) / (x + sqrt(x^2 + 8/pi))`.
///
/// Not of log-quadratic form, so it is exposed as a plain function; it
/// serves as a comparison bound and powers the substitution identity
/// checked by the verifier.
pub fn mitrinovic_upper(x: f64) -> Result<f64> {
    ensure_nonneg(x)?;
    Ok(mitrinovic_unchecked(x))
}

#[inline]
pub(crate) fn mitrinovic_unchecked(x: f64) -> f64 {
    2.0 * reference::phi_unchecked(x) / (x + (x * x + EIGHT_OVER_PI).sqrt())
}

/// `ln` of [`mitrinovic_upper`], usable past the underflow point of `phi`.
pub fn mitrinovic_log_upper(x: f64) -> Result<f64> {
    ensure_nonneg(x)?;
    Ok(mitrinovic_log_unchecked(x))
}

#[inline]
pub(crate) fn mitrinovic_log_unchecked(x: f64) -> f64 {
    LN_2 + reference::log_phi_unchecked(x) - (x + (x * x + EIGHT_OVER_PI).sqrt()).ln()
}

/// Residual whose nonnegativity on `x >= 0` is equivalent to
/// `ell'(x) >= -1`, the fact behind the lower bound:
/// `Q(x)^2 + Q(x) phi(x) x - phi(x)^2`.
pub fn residual_lower(x: f64) -> Result<f64> {
    ensure_nonneg(x)?;
    let q = reference::q_unchecked(x);
    let p = reference::phi_unchecked(x);
    Ok(q * q + q * p * x - p * p)
}

/// Residual whose nonpositivity on `x >= 0` is equivalent to
/// `ell'(x) <= -2/pi`, the fact behind the upper bound:
/// `(2/pi) Q(x)^2 + Q(x) phi(x) x - phi(x)^2`.
pub fn residual_upper(x: f64) -> Result<f64> {
    ensure_nonneg(x)?;
    let q = reference::q_unchecked(x);
    let p = reference::phi_unchecked(x);
    Ok(FRAC_2_PI * q * q + q * p * x - p * p)
}

/// Residual of substituting the Mitrinovic bound into [`residual_upper`];
/// algebraically zero for every `x`, so its magnitude measures only
/// rounding:
/// `(8/pi) phi^2/(x+s)^2 + 2 x phi^2/(x+s) - phi^2`, `s = sqrt(x^2+8/pi)`.
pub fn mitrinovic_substitution_residual(x: f64) -> Result<f64> {
    ensure_nonneg(x)?;
    let p = reference::phi_unchecked(x);
    let s = (x * x + EIGHT_OVER_PI).sqrt();
    Ok(EIGHT_OVER_PI * p * p / ((x + s) * (x + s)) + 2.0 * x * p * p / (x + s) - p * p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reference::q_eval;

    #[test]
    fn constructor_enforces_invariants() {
        assert!(LogQuadParams::new(-0.1, 1.0, 0.5, "bad").is_err());
        assert!(LogQuadParams::new(0.5, -1.0, 0.5, "bad").is_err());
        assert!(LogQuadParams::new(0.0, 0.0, 0.0, "bad").is_err());
        assert!(LogQuadParams::new(0.5, 0.5, -0.1, "bad").is_err());
        assert!(LogQuadParams::new(f64::NAN, 0.5, 0.5, "bad").is_err());
        assert!(LogQuadParams::new(0.374, 0.777, LN_2, "ok").is_ok());
    }

    #[test]
    fn eval_rejects_bad_abscissas() {
        let p = thm1_lower();
        assert!(p.eval(-0.5).is_err());
        assert!(p.eval(f64::NAN).is_err());
        assert!(p.log_eval(-1.0).is_err());
        assert!(p.grad_log(f64::INFINITY).is_err());
    }

    #[test]
    fn value_at_origin_is_half() {
        // Only the constant term survives at x = 0.
        for p in [thm1_lower(), thm1_upper(), chernoff()] {
            assert_eq!(p.eval(0.0).unwrap(), 0.5, "{}", p.label());
        }
    }

    #[test]
    fn raw_eval_identity_exponent() {
        // (0,0,0) is rejected by the constructor but fine for eval_raw.
        assert!(LogQuadParams::new(0.0, 0.0, 0.0, "id").is_err());
        for x in [0.0, 1.0, 17.5] {
            assert_eq!(eval_raw(0.0, 0.0, 0.0, x), 1.0);
        }
    }

    #[test]
    fn thm1_lower_known_values() {
        let p = thm1_lower();
        assert_eq!(p.a(), 0.5);
        assert!((p.b() - 0.7978845608028654).abs() < 1e-16);
        assert_eq!(p.c(), LN_2);
        // 1/2 exp(-1/2 - sqrt(2/pi)), 40-digit reference digits.
        let v = p.eval(1.0).unwrap();
        assert!(((v - 0.13655446385144265) / v).abs() < 1e-15);
    }

    #[test]
    fn thm1_upper_known_values() {
        let p = thm1_upper();
        assert!((p.a() - FRAC_1_PI).abs() < 1e-16);
        let q1 = q_eval(1.0).unwrap();
        assert!(thm1_lower().eval(1.0).unwrap() <= q1);
        assert!(q1 <= p.eval(1.0).unwrap());
    }

    #[test]
    fn log_eval_matches_exponent() {
        let p = thm1_lower();
        let want = -2.0 - 2.0 * reference::SQRT_2_OVER_PI - LN_2;
        assert!((p.log_eval(2.0).unwrap() - want).abs() < 1e-15);
        // Headline coefficients: value at the origin is -ln 2.
        let h = LogQuadParams::new(0.374, 0.777, LN_2, "headline").unwrap();
        assert_eq!(h.log_eval(0.0).unwrap(), -LN_2);
    }

    #[test]
    fn grad_log_shape() {
        let p = LogQuadParams::new(0.5, reference::SQRT_2_OVER_PI, LN_2, "g").unwrap();
        let (g1, g2) = p.grad_log(0.0).unwrap();
        assert!((g1 + reference::SQRT_2_OVER_PI).abs() < 1e-16);
        assert_eq!(g2, -1.0);
        // Second derivative does not depend on x.
        assert_eq!(p.grad_log(3.7).unwrap().1, g2);
    }

    #[test]
    fn chernoff_dominates_q() {
        let p = chernoff();
        assert_eq!(p.eval(0.0).unwrap(), 0.5);
        for i in 0..=100 {
            let x = 0.1 * i as f64;
            assert!(p.eval(x).unwrap() >= q_eval(x).unwrap());
        }
    }

    #[test]
    fn crossover_separates_upper_bounds() {
        let xc = chernoff_crossover();
        assert!((xc - 4.391458313521529).abs() < 1e-12);
        let u = thm1_upper();
        let ch = chernoff();
        assert!(u.eval(xc - 0.01).unwrap() < ch.eval(xc - 0.01).unwrap());
        assert!(u.eval(xc + 0.01).unwrap() > ch.eval(xc + 0.01).unwrap());
    }

    #[test]
    fn mitrinovic_known_values() {
        assert_eq!(mitrinovic_upper(0.0).unwrap(), 0.5);
        assert!(mitrinovic_upper(1.0).unwrap() >= q_eval(1.0).unwrap());
        assert!(mitrinovic_upper(-1.0).is_err());
        // Substitution residual vanishes identically.
        assert!(mitrinovic_substitution_residual(1.0).unwrap().abs() < 1e-16);
    }

    #[test]
    fn residual_values() {
        // Middle term vanishes at the origin: 1/4 - 1/(2 pi).
        let r0 = residual_lower(0.0).unwrap();
        assert!((r0 - 0.09084505690810465).abs() < 1e-16);
        assert!(residual_upper(0.0).unwrap().abs() <= 1e-16);
        assert!(residual_lower(5.0).unwrap() > 0.0);
        assert!(residual_upper(1.0).unwrap() < 0.0);
        assert!(residual_lower(-0.1).is_err());
        assert!(residual_upper(-0.1).is_err());
    }
}
