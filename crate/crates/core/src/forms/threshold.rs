//! Threshold search for forms of the shape `lambda + K sigma`: the least K
//! making the positivity check pass, on the given chart and grid.
//!
//! "For all K >= K0" is approximated by sampling a geometric ladder of 20
//! rungs with ratio 1.1 above each candidate, capped at K_max; the reported
//! threshold is chart- and grid-dependent, not a sharp analytic constant.

use super::chart::Chart;
use super::checks::{contact_check, symplectic_check, Tolerances};
use super::form::ChartForm;
use super::FormsError;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone)]
pub enum ThresholdFamily {
    /// 3-D: `lambda + K pullback(sigma)` must become contact.
    Contact { lambda: ChartForm, sigma: ChartForm },
    /// 4-D: `omega + K pullback(mu)` must become symplectic.
    Symplectic { omega: ChartForm, mu: ChartForm },
    /// 4-D: `d(lambda + K sigma)` must become symplectic.
    Liouville { lambda: ChartForm, sigma: ChartForm },
    /// 4-D: `C omega + eta` must become symplectic (weak-boundary scaling).
    WeakScaling { omega: ChartForm, eta: ChartForm },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ThresholdResult {
    Threshold(f64),
    Unbounded,
}

const LADDER_RATIO: f64 = 1.1;
const LADDER_RUNGS: usize = 20;
const RESOLUTION: f64 = 1e-3;

fn passes(
    family: &ThresholdFamily,
    chart: &Chart,
    k: f64,
    tol: &Tolerances,
) -> Result<bool, FormsError> {
    let report = match family {
        ThresholdFamily::Contact { lambda, sigma } => {
            let form = lambda.clone().add(sigma.clone().scale(k));
            contact_check(chart, &form, tol)?
        }
        ThresholdFamily::Symplectic { omega, mu } => {
            let form = omega.clone().add(mu.clone().scale(k));
            symplectic_check(chart, &form, tol)?
        }
        ThresholdFamily::Liouville { lambda, sigma } => {
            let form = lambda.clone().add(sigma.clone().scale(k)).d();
            symplectic_check(chart, &form, tol)?
        }
        ThresholdFamily::WeakScaling { omega, eta } => {
            let form = omega.clone().scale(k).add(eta.clone());
            symplectic_check(chart, &form, tol)?
        }
    };
    Ok(report.pass)
}

fn ladder(k: f64, k_max: f64) -> Vec<f64> {
    let mut rungs = Vec::with_capacity(LADDER_RUNGS + 1);
    // A zero candidate cannot seed a geometric ladder; approximate
    // "all K >= 0" by 0 plus a ladder from the bisection resolution.
    let seed = if k > 0.0 { k } else { RESOLUTION };
    if k <= 0.0 {
        rungs.push(0.0);
    }
    let mut v = seed;
    for _ in 0..LADDER_RUNGS {
        rungs.push(v.min(k_max));
        v *= LADDER_RATIO;
    }
    rungs
}

fn passes_ladder(
    family: &ThresholdFamily,
    chart: &Chart,
    k: f64,
    k_max: f64,
    tol: &Tolerances,
) -> Result<bool, FormsError> {
    for rung in ladder(k, k_max) {
        if !passes(family, chart, rung, tol)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Bisection (resolution 1e-3) for the least K in [0, K_max] whose whole
/// ladder passes; `Unbounded` when even K_max fails.
pub fn thurston_threshold(
    family: &ThresholdFamily,
    chart: &Chart,
    k_max: f64,
    tol: &Tolerances,
) -> Result<ThresholdResult, FormsError> {
    if passes_ladder(family, chart, 0.0, k_max, tol)? {
        return Ok(ThresholdResult::Threshold(0.0));
    }
    if !passes_ladder(family, chart, k_max, k_max, tol)? {
        return Ok(ThresholdResult::Unbounded);
    }
    let mut lo = 0.0f64;
    let mut hi = k_max;
    while hi - lo > RESOLUTION {
        let mid = 0.5 * (lo + hi);
        if passes_ladder(family, chart, mid, k_max, tol)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(ThresholdResult::Threshold(hi))
}

#[cfg(test)]
mod tests {
    use super::super::models;
    use super::*;
    use crate::forms::{Axis, Expr};

    fn tols() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn vertical_family_threshold_is_zero_plus() {
        let (lambda, sigma) = models::vertical_family();
        let family = ThresholdFamily::Contact { lambda, sigma };
        let chart = models::collar_chart_3d(16);
        match thurston_threshold(&family, &chart, 10.0, &tols()).unwrap() {
            ThresholdResult::Threshold(k0) => {
                assert!(k0 > 0.0 && k0 <= RESOLUTION, "K0 = {k0}");
            }
            ThresholdResult::Unbounded => panic!("family is contact for all K > 0"),
        }
    }

    #[test]
    fn slope_family_threshold_is_two_e() {
        let (lambda, sigma) = models::slope_family(-2.0);
        let family = ThresholdFamily::Contact { lambda, sigma };
        let chart = models::horizontal_chart_3d(16);
        match thurston_threshold(&family, &chart, 20.0, &tols()).unwrap() {
            ThresholdResult::Threshold(k0) => {
                let expected = 2.0 * std::f64::consts::E;
                assert!(
                    (k0 - expected).abs() <= 1e-3,
                    "K0 = {k0}, expected {expected}"
                );
            }
            ThresholdResult::Unbounded => panic!("threshold exists at 2e"),
        }
    }

    #[test]
    fn already_contact_base_returns_exactly_zero() {
        let (lambda, sigma) = models::contact_base_family();
        let family = ThresholdFamily::Contact { lambda, sigma };
        let chart = models::collar_chart_3d(16);
        assert_eq!(
            thurston_threshold(&family, &chart, 10.0, &tols()).unwrap(),
            ThresholdResult::Threshold(0.0)
        );
    }

    #[test]
    fn unbounded_when_k_max_is_too_small() {
        let (lambda, sigma) = models::slope_family(-2.0);
        let family = ThresholdFamily::Contact { lambda, sigma };
        let chart = models::horizontal_chart_3d(16);
        assert_eq!(
            thurston_threshold(&family, &chart, 5.0, &tols()).unwrap(),
            ThresholdResult::Unbounded
        );
    }

    #[test]
    fn threshold_monotone_under_domain_growth() {
        // Enlarging s from [-1,0] to [-2,0] moves the slope-family
        // threshold from 2e to 2e^2.
        let (lambda, sigma) = models::slope_family(-2.0);
        let family = ThresholdFamily::Contact { lambda, sigma };
        let small = models::horizontal_chart_3d(16);
        let large = crate::forms::Chart::new(vec![
            Axis::interval("s", -2.0, 0.0, 31),
            Axis::circle("phi", 16),
            Axis::circle("theta", 16),
        ])
        .unwrap();
        let k_small = match thurston_threshold(&family, &small, 40.0, &tols()).unwrap() {
            ThresholdResult::Threshold(k) => k,
            ThresholdResult::Unbounded => panic!(),
        };
        let k_large = match thurston_threshold(&family, &large, 40.0, &tols()).unwrap() {
            ThresholdResult::Threshold(k) => k,
            ThresholdResult::Unbounded => panic!(),
        };
        assert!(k_large >= k_small);
        assert!((k_large - 2.0 * std::f64::consts::E.powi(2)).abs() < 1e-2);
    }

    #[test]
    fn symplectic_family_threshold() {
        // omega = -2 ds∧dphi + dt∧dtheta, mu = ds∧dphi:
        // (omega + K mu)^2 = 2 (K - 2), symplectic iff K > 2.
        let omega =
            ChartForm::two_form(4, vec![(0, 1, Expr::Const(-2.0)), (2, 3, Expr::Const(1.0))]);
        let mu = ChartForm::two_form(4, vec![(0, 1, Expr::Const(1.0))]);
        let family = ThresholdFamily::Symplectic { omega, mu };
        let chart = models::corner_chart_4d(6);
        match thurston_threshold(&family, &chart, 10.0, &tols()).unwrap() {
            ThresholdResult::Threshold(k0) => assert!((k0 - 2.0).abs() <= 1e-3, "K0 = {k0}"),
            ThresholdResult::Unbounded => panic!(),
        }
    }

    #[test]
    fn liouville_family_threshold() {
        // lambda = -2 s dphi + e^t dtheta, sigma with d(sigma) = ds∧dphi:
        // d(lambda_K) = (K - 2) ds∧dphi + e^t dt∧dtheta, symplectic iff K > 2.
        let lambda = ChartForm::one_form(
            4,
            vec![(1, Expr::coord(0).scaled(-2.0)), (3, Expr::exp_coord(2))],
        );
        let sigma = ChartForm::one_form(4, vec![(1, Expr::coord(0))]);
        let family = ThresholdFamily::Liouville { lambda, sigma };
        let chart = models::corner_chart_4d(8);
        match thurston_threshold(&family, &chart, 10.0, &tols()).unwrap() {
            ThresholdResult::Threshold(k0) => assert!((k0 - 2.0).abs() <= 1e-3, "K0 = {k0}"),
            ThresholdResult::Unbounded => panic!(),
        }
    }

    #[test]
    fn weak_scaling_family_threshold() {
        // C (ds∧dphi + dt∧dtheta) + eta with eta = -3 dt∧dtheta:
        // square is 2 C (C - 3): symplectic iff C > 3.
        let omega = models::product_symplectic_form(1.0)
            .add(ChartForm::two_form(4, vec![(2, 3, Expr::Const(0.0))]));
        let eta = ChartForm::two_form(4, vec![(2, 3, Expr::Const(-3.0))]);
        let family = ThresholdFamily::WeakScaling { omega, eta };
        let chart = models::corner_chart_4d(6);
        match thurston_threshold(&family, &chart, 10.0, &tols()).unwrap() {
            ThresholdResult::Threshold(c0) => assert!((c0 - 3.0).abs() <= 1e-3, "C0 = {c0}"),
            ThresholdResult::Unbounded => panic!(),
        }
    }
}
