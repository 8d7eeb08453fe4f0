//! The interchangeable family of tail curves.
//!
//! Every bound and approximation of `Q` implements [`Curve`], so the
//! verifier, the profiler, and the CLI treat them uniformly. Built-in
//! variants are registered by name and looked up at runtime; derived
//! approximations join the family through [`derived_curve`].

use crate::derivation;
use crate::error::Result;
use crate::logquad::{self, LogQuadParams};

/// Which side of `Q` a curve claims to sit on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Lower,
    Upper,
    Approximation,
}

impl Side {
    pub fn as_str(self) -> &'static str {
        match self {
            Side::Lower => "lower",
            Side::Upper => "upper",
            Side::Approximation => "approx",
        }
    }
}

/// One member of the curve family.
///
/// `value` and `log_value` take `x >= 0`; callers validate grids once up
/// front rather than paying a check per point.
pub trait Curve: Send + Sync {
    fn name(&self) -> &str;
    fn side(&self) -> Side;
    fn value(&self, x: f64) -> f64;
    /// `ln` of [`Curve::value`], usable where the value underflows.
    fn log_value(&self, x: f64) -> f64;
}

/// A log-quadratic family member together with its claimed side.
pub struct LogQuadCurve {
    params: LogQuadParams,
    side: Side,
}

impl LogQuadCurve {
    pub fn new(params: LogQuadParams, side: Side) -> Self {
        LogQuadCurve { params, side }
    }

    pub fn params(&self) -> &LogQuadParams {
        &self.params
    }
}

impl Curve for LogQuadCurve {
    fn name(&self) -> &str {
        self.params.label()
    }

    fn side(&self) -> Side {
        self.side
    }

    fn value(&self, x: f64) -> f64 {
        debug_assert!(x >= 0.0);
        self.params.eval_unchecked(x)
    }

    fn log_value(&self, x: f64) -> f64 {
        debug_assert!(x >= 0.0);
        self.params.log_eval_unchecked(x)
    }
}

/// The Mitrinovic upper bound; not log-quadratic, registered alongside
/// the family as a comparison bound.
pub struct MitrinovicCurve;

impl Curve for MitrinovicCurve {
    fn name(&self) -> &str {
        "mitrinovic"
    }

    fn side(&self) -> Side {
        Side::Upper
    }

    fn value(&self, x: f64) -> f64 {
        debug_assert!(x >= 0.0);
        logquad::mitrinovic_unchecked(x)
    }

    fn log_value(&self, x: f64) -> f64 {
        debug_assert!(x >= 0.0);
        logquad::mitrinovic_log_unchecked(x)
    }
}

/// Names of the registered built-in curves, in reporting order.
pub const BUILTIN_NAMES: [&str; 4] = ["thm1-lower", "thm1-upper", "chernoff", "mitrinovic"];

/// Look up a built-in curve by name.
pub fn builtin(name: &str) -> Option<Box<dyn Curve>> {
    match name {
        "thm1-lower" => Some(Box::new(LogQuadCurve::new(logquad::thm1_lower(), Side::Lower))),
        "thm1-upper" => Some(Box::new(LogQuadCurve::new(logquad::thm1_upper(), Side::Upper))),
        "chernoff" => Some(Box::new(LogQuadCurve::new(logquad::chernoff(), Side::Upper))),
        "mitrinovic" => Some(Box::new(MitrinovicCurve)),
        _ => None,
    }
}

/// All built-in curves, in [`BUILTIN_NAMES`] order.
pub fn builtins() -> Vec<Box<dyn Curve>> {
    BUILTIN_NAMES
        .iter()
        .map(|name| builtin(name).expect("registered name"))
        .collect()
}

/// Build the derived approximation for horizon `t` as a curve.
pub fn derived_curve(t: f64) -> Result<Box<dyn Curve>> {
    let derived = derivation::build_approx(t)?;
    Ok(Box::new(LogQuadCurve::new(derived.params, Side::Approximation)))
}
