//! Minimax machinery: sup-error measurement of a curve against the
//! reference `Q`, and a one-dimensional search for the horizon `t` that
//! minimizes that sup error.
//!
//! `sup_abs_error` is pure: the same inputs always produce the same
//! report. `optimize_t` caches reference values on the fixed measurement
//! grid across its sup evaluations, which changes nothing observable.

use crate::derivation::{self, DerivedParams};
use crate::error::{Error, Result};
use crate::logquad::LogQuadParams;
use crate::reference;

/// Golden ratio conjugate, `(sqrt(5) - 1) / 2`.
const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Abscissa resolution of the local maximizer refinement.
pub const REFINEMENT_TOL: f64 = 1e-6;

/// Grid used while tuning `t`.
const TUNE_X_MAX: f64 = 10.0;
const TUNE_STEP: f64 = 1e-3;

/// Tail certification thresholds: with both curves below `TAIL_CEIL` at
/// `x_max` and the interior maximum above `INTERIOR_FLOOR`, the maximizer
/// cannot live in `[x_max, inf)` (both curves are decreasing there, so the
/// tail error never exceeds `TAIL_CEIL`).
const TAIL_CEIL: f64 = 1e-8;
const INTERIOR_FLOOR: f64 = 1e-4;

/// Number of prescan points used to vet unimodality before the golden
/// search over `t`; the first this many trace entries are the prescan.
pub const PRESCAN_POINTS: usize = 50;

/// How the sup was measured.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub x_max: f64,
    pub step: f64,
    pub refinement_tol: f64,
}

/// Sup-error of one curve over `[0, x_max]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorReport {
    /// `max |Q(x) - Qhat(x)|` over the grid plus local refinement.
    pub max_abs_err: f64,
    /// Location of the maximum.
    pub argmax_x: f64,
    pub grid: GridSpec,
    /// The parameters that were evaluated.
    pub params: LogQuadParams,
    /// True when the tail past `x_max` provably cannot hold the maximizer.
    pub tail_certified: bool,
}

/// Outcome of the horizon search.
#[derive(Debug, Clone, PartialEq)]
pub struct TuneResult {
    pub t_opt: f64,
    /// Sup-error report at `t_opt`.
    pub report: ErrorReport,
    pub derived: DerivedParams,
    /// Every `(t, sup_err)` pair visited, prescan first.
    pub search_trace: Vec<(f64, f64)>,
    /// Set when the prescan saw more than one local minimum; the search
    /// then brackets the best prescan point instead of the full window.
    pub multimodal_warning: bool,
}

/// One sample of an error profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileRow {
    pub x: f64,
    pub q_ref: f64,
    pub q_hat: f64,
    /// Signed error `Q - Qhat`.
    pub err_signed: f64,
}

struct RefGrid {
    xs: Vec<f64>,
    qs: Vec<f64>,
    x_max: f64,
    step: f64,
}

fn make_ref_grid(x_max: f64, step: f64) -> RefGrid {
    let n_steps = (x_max / step).ceil() as usize;
    let mut xs = Vec::with_capacity(n_steps + 1);
    for i in 0..n_steps {
        let x = i as f64 * step;
        if x >= x_max {
            break;
        }
        xs.push(x);
    }
    xs.push(x_max);
    let qs = xs.iter().map(|&x| reference::q_unchecked(x)).collect();
    RefGrid { xs, qs, x_max, step }
}

fn validate_grid(x_max: f64, step: f64) -> Result<()> {
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
    Ok(())
}

/// Golden-section maximization of `f` on `[lo, hi]` to abscissa
/// tolerance `tol`.
fn golden_max<F: FnMut(f64) -> f64>(mut f: F, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64) {
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > tol {
        if f1 > f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
    }
    let xm = 0.5 * (lo + hi);
    (xm, f(xm))
}

fn sup_on_grid(params: &LogQuadParams, grid: &RefGrid) -> ErrorReport {
    let mut best_i = 0;
    let mut best_err = -1.0_f64;
    for (i, (&x, &q)) in grid.xs.iter().zip(grid.qs.iter()).enumerate() {
        let err = (q - params.eval_unchecked(x)).abs();
        if err > best_err {
            best_err = err;
            best_i = i;
        }
    }

    // Refine the maximizer inside its bracketing interval.
    let lo = (grid.xs[best_i] - grid.step).max(0.0);
    let hi = (grid.xs[best_i] + grid.step).min(grid.x_max);
    let err_at = |x: f64| (reference::q_unchecked(x) - params.eval_unchecked(x)).abs();
    let (x_ref, err_ref) = golden_max(err_at, lo, hi, REFINEMENT_TOL);

    let (argmax_x, max_abs_err) = if err_ref > best_err {
        (x_ref, err_ref)
    } else {
        (grid.xs[best_i], best_err)
    };

    let q_tail = reference::q_unchecked(grid.x_max);
    let qhat_tail = params.eval_unchecked(grid.x_max);
    let tail_certified = q_tail < TAIL_CEIL && qhat_tail < TAIL_CEIL && max_abs_err > INTERIOR_FLOOR;

    ErrorReport {
        max_abs_err,
        argmax_x,
        grid: GridSpec {
            x_max: grid.x_max,
            step: grid.step,
            refinement_tol: REFINEMENT_TOL,
        },
        params: params.clone(),
        tail_certified,
    }
}

/// `sup_{x in [0, x_max]} |Q(x) - Qhat(x)|`: coarse scan at `step`, then
/// golden-section refinement of the bracketing interval down to
/// [`REFINEMENT_TOL`] in `x`.
///
/// The report's `tail_certified` flag records whether the sup over
/// `[x_max, inf)` is provably below the interior maximum.
pub fn sup_abs_error(params: &LogQuadParams, x_max: f64, step: f64) -> Result<ErrorReport> {
    validate_grid(x_max, step)?;
    Ok(sup_on_grid(params, &make_ref_grid(x_max, step)))
}

/// Minimize `t -> sup_abs_error(build_approx(t))` over `[t_lo, t_hi]` by
/// golden section, after a [`PRESCAN_POINTS`]-point scan that vets the
/// assumed unimodality. A multimodal prescan narrows the search bracket
/// to the best prescan point's neighbors and raises the warning flag.
pub fn optimize_t(t_lo: f64, t_hi: f64, tol_t: f64) -> Result<TuneResult> {
    if !(t_lo.is_finite() && t_hi.is_finite() && tol_t.is_finite()) {
        return Err(Error::InvalidGrid {
            reason: format!("search window must be finite, got [{t_lo}, {t_hi}] tol {tol_t}"),
        });
    }
    if t_lo >= t_hi {
        return Err(Error::InvalidGrid {
            reason: format!("need t_lo < t_hi, got [{t_lo}, {t_hi}]"),
        });
    }
    if t_lo < derivation::T_MIN {
        return Err(Error::HorizonTooSmall {
            t: t_lo,
            t_min: derivation::T_MIN,
        });
    }
    if tol_t <= 0.0 {
        return Err(Error::InvalidGrid {
            reason: format!("tol_t must be positive, got {tol_t}"),
        });
    }

    let grid = make_ref_grid(TUNE_X_MAX, TUNE_STEP);
    let mut trace: Vec<(f64, f64)> = Vec::new();
    let mut measure = |t: f64| -> f64 {
        let derived = derivation::build_approx_unchecked(t);
        let err = sup_on_grid(&derived.params, &grid).max_abs_err;
        trace.push((t, err));
        err
    };

    // Prescan: evenly spaced, endpoints included.
    let prescan: Vec<(f64, f64)> = (0..PRESCAN_POINTS)
        .map(|i| {
            let t = t_lo + (t_hi - t_lo) * i as f64 / (PRESCAN_POINTS - 1) as f64;
            (t, measure(t))
        })
        .collect();

    let mut minima = 0usize;
    let mut best_i = 0usize;
    for i in 0..prescan.len() {
        let e = prescan[i].1;
        if e < prescan[best_i].1 {
            best_i = i;
        }
        let left_ok = i == 0 || e < prescan[i - 1].1;
        let right_ok = i + 1 == prescan.len() || e < prescan[i + 1].1;
        if left_ok && right_ok {
            minima += 1;
        }
    }
    let multimodal_warning = minima > 1;

    let (lo, hi) = if multimodal_warning {
        let lo = if best_i == 0 { t_lo } else { prescan[best_i - 1].0 };
        let hi = if best_i + 1 == prescan.len() {
            t_hi
        } else {
            prescan[best_i + 1].0
        };
        (lo, hi)
    } else {
        (t_lo, t_hi)
    };

    golden_max(|t| -measure(t), lo, hi, tol_t);

    // Return the best point actually visited.
    let &(t_opt, _) = trace
        .iter()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("trace is never empty");

    let derived = derivation::build_approx_unchecked(t_opt);
    let report = sup_on_grid(&derived.params, &grid);
    Ok(TuneResult {
        t_opt,
        report,
        derived,
        search_trace: trace,
        multimodal_warning,
    })
}

/// `n` evenly spaced samples of `(x, Q, Qhat, Q - Qhat)` on `[0, x_max]`.
pub fn error_profile(params: &LogQuadParams, x_max: f64, n: usize) -> Result<Vec<ProfileRow>> {
    if n < 2 {
        return Err(Error::InvalidGrid {
            reason: format!("profile needs at least 2 samples, got {n}"),
        });
    }
    if !x_max.is_finite() || x_max <= 0.0 {
        return Err(Error::InvalidGrid {
            reason: format!("x_max must be positive and finite, got {x_max}"),
        });
    }
    let denom = (n - 1) as f64;
    Ok((0..n)
        .map(|i| {
            let x = x_max * i as f64 / denom;
            let q_ref = reference::q_unchecked(x);
            let q_hat = params.eval_unchecked(x);
            ProfileRow {
                x,
                q_ref,
                q_hat,
                err_signed: q_ref - q_hat,
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derivation::build_approx;
    use crate::logquad::{chernoff, thm1_lower};

    #[test]
    fn grid_validation() {
        let p = thm1_lower();
        assert!(sup_abs_error(&p, 0.0, 1e-3).is_err());
        assert!(sup_abs_error(&p, 10.0, 0.2).is_err()); // coarser than x_max/100
        assert!(sup_abs_error(&p, 10.0, f64::NAN).is_err());
        assert!(sup_abs_error(&p, 10.0, 1e-3).is_ok());
    }

    #[test]
    fn sup_error_of_lower_bound_is_interior() {
        let r = sup_abs_error(&thm1_lower(), 10.0, 1e-3).unwrap();
        assert!(r.max_abs_err > 0.0);
        assert!(r.argmax_x > 0.0 && r.argmax_x <= 10.0);
        assert!(r.tail_certified);
        // Reported value is exactly the error at the reported location.
        let err_at = (crate::reference::q_eval(r.argmax_x).unwrap()
            - r.params.eval(r.argmax_x).unwrap())
        .abs();
        assert!((r.max_abs_err - err_at).abs() <= 1e-15);
    }

    #[test]
    fn headline_horizon_sup_error() {
        let d = build_approx(1.295).unwrap();
        let r = sup_abs_error(&d.params, 10.0, 1e-3).unwrap();
        assert!((r.max_abs_err - 9.485e-4).abs() <= 5e-6, "{}", r.max_abs_err);
        assert!(r.tail_certified);
    }

    #[test]
    fn chernoff_sup_matches_brute_force() {
        let r = sup_abs_error(&chernoff(), 10.0, 1e-3).unwrap();
        let mut brute = 0.0_f64;
        let mut x = 0.0;
        while x <= 10.0 {
            let e = (crate::reference::q_unchecked(x) - chernoff().eval_unchecked(x)).abs();
            brute = brute.max(e);
            x += 1e-5;
        }
        assert!(r.max_abs_err + 1e-9 >= brute);
        assert!((r.max_abs_err - brute).abs() <= 1e-9);
    }

    #[test]
    fn optimize_rejects_bad_windows() {
        assert!(optimize_t(3.0, 0.5, 1e-4).is_err());
        assert!(optimize_t(1e-5, 3.0, 1e-4).is_err());
        assert!(optimize_t(0.5, 3.0, 0.0).is_err());
        assert!(optimize_t(0.5, f64::INFINITY, 1e-4).is_err());
    }

    #[test]
    fn tuner_reproduces_reference_horizon() {
        let r = optimize_t(0.5, 3.0, 1e-4).unwrap();
        assert!(r.t_opt >= 1.290 && r.t_opt <= 1.300, "t_opt = {}", r.t_opt);
        assert!(r.report.max_abs_err <= 9.49e-4);
        assert!(!r.multimodal_warning);
        // Best-visited invariant.
        for &(_, e) in &r.search_trace {
            assert!(r.report.max_abs_err <= e + 1e-18);
        }
        assert!(r.search_trace.len() >= PRESCAN_POINTS);
    }

    #[test]
    fn profile_shape_and_edges() {
        let d = build_approx(2.0).unwrap();
        let rows = error_profile(&d.params, 10.0, 1001).unwrap();
        assert_eq!(rows.len(), 1001);
        assert_eq!(rows[0].x, 0.0);
        assert_eq!(rows[0].err_signed, 0.0);
        assert_eq!(rows[1000].x, 10.0);
        // Row at x = t interpolates Q.
        let at_t = rows.iter().find(|r| r.x == 2.0).expect("grid hits t");
        assert!(at_t.err_signed.abs() < 1e-9);
        // The sup dominates every sample.
        let sup = sup_abs_error(&d.params, 10.0, 1e-3).unwrap().max_abs_err;
        for row in &rows {
            assert!(row.err_signed.abs() <= sup + 1e-12);
        }
        assert!(error_profile(&d.params, 10.0, 1).is_err());
        assert!(error_profile(&d.params, -1.0, 10).is_err());
    }
}
