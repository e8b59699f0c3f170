//! Grid checks for contact, symplectic and profile conditions.

use super::chart::Chart;
use super::expr::Expr;
use super::form::ChartForm;
use super::profile::Profile;
use super::FormsError;
use serde::{Deserialize, Serialize};
use std::fmt;

/// Default tolerances: closed-form checks compare against 1e-12, anything
/// involving finite differences against 1e-6. Both are configurable.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub closed_form: f64,
    pub finite_difference: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            closed_form: 1e-12,
            finite_difference: 1e-6,
        }
    }
}

/// How a report's number relates to its tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    /// `min_value` is a scanned minimum; pass iff it exceeds the tolerance.
    LowerBound,
    /// `min_value` is a measured maximal error; pass iff within tolerance.
    MaxError,
}

/// Outcome of one grid check, deterministic given chart, forms and
/// tolerance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub condition: String,
    pub kind: CheckKind,
    pub min_value: f64,
    pub worst_point: Vec<f64>,
    pub samples: usize,
    pub tolerance: f64,
    pub pass: bool,
}

impl CheckReport {
    fn lower_bound(
        condition: &str,
        min_value: f64,
        worst_point: Vec<f64>,
        samples: usize,
        tolerance: f64,
    ) -> Self {
        CheckReport {
            condition: condition.into(),
            kind: CheckKind::LowerBound,
            min_value,
            worst_point,
            samples,
            tolerance,
            pass: min_value > tolerance,
        }
    }

    fn max_error(
        condition: &str,
        error: f64,
        worst_point: Vec<f64>,
        samples: usize,
        tolerance: f64,
    ) -> Self {
        CheckReport {
            condition: condition.into(),
            kind: CheckKind::MaxError,
            min_value: error,
            worst_point,
            samples,
            tolerance,
            pass: error <= tolerance,
        }
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self.kind {
            CheckKind::LowerBound => "min",
            CheckKind::MaxError => "max error",
        };
        write!(
            f,
            "{}: {} {} = {:.6e} (tolerance {:.1e}), verified at {} sample points: {}",
            if self.pass { "PASS" } else { "FAIL" },
            self.condition,
            what,
            self.min_value,
            self.tolerance,
            self.samples,
            if self.pass { "ok" } else { "violated" },
        )
    }
}

/// Scans an expression over the grid, returning (min, argmin, samples).
fn scan_min(chart: &Chart, expr: &Expr) -> (f64, Vec<f64>, usize) {
    let mut min = f64::INFINITY;
    let mut worst = Vec::new();
    let mut samples = 0usize;
    for (_, x) in chart.nodes() {
        let v = expr.eval(&x);
        samples += 1;
        if v < min {
            min = v;
            worst = x;
        }
    }
    (min, worst, samples)
}

/// Positivity of `alpha ∧ d(alpha)` against the chart's oriented volume.
pub fn contact_check(
    chart: &Chart,
    alpha: &ChartForm,
    tol: &Tolerances,
) -> Result<CheckReport, FormsError> {
    chart.require_dim(3)?;
    if alpha.degree != 1 {
        return Err(FormsError::DegreeMismatch {
            expected: 1,
            got: alpha.degree,
        });
    }
    let top = alpha.wedge(&alpha.d()).top_coeff();
    let (min, worst, samples) = scan_min(chart, &top);
    Ok(CheckReport::lower_bound(
        "contact positivity: alpha ∧ d(alpha) > 0",
        min,
        worst,
        samples,
        tol.closed_form,
    ))
}

/// Positivity of `omega ∧ omega` against the chart's oriented volume.
pub fn symplectic_check(
    chart: &Chart,
    omega: &ChartForm,
    tol: &Tolerances,
) -> Result<CheckReport, FormsError> {
    chart.require_dim(4)?;
    if omega.degree != 2 {
        return Err(FormsError::DegreeMismatch {
            expected: 2,
            got: omega.degree,
        });
    }
    let top = omega.wedge(omega).top_coeff();
    let (min, worst, samples) = scan_min(chart, &top);
    Ok(CheckReport::lower_bound(
        "symplectic positivity: omega ∧ omega > 0",
        min,
        worst,
        samples,
        tol.closed_form,
    ))
}

/// Interface positivity for `alpha = f(rho) dtheta`, `beta = g(rho) dphi`
/// on a chart ordered (rho, phi, theta): the coefficient of
/// `alpha ∧ d(beta) + beta ∧ d(alpha)` is `f g' - f' g`. Strict positivity
/// is required at interior rho samples; the endpoints may vanish.
pub fn giroux_interface_check(
    f: &Profile,
    g: &Profile,
    chart: &Chart,
    tol: &Tolerances,
) -> Result<CheckReport, FormsError> {
    chart.require_dim(3)?;
    let rho_axis = &chart.axes[0];
    for i in 0..rho_axis.samples {
        let rho = rho_axis.coordinate(i);
        if f.eval(rho) <= 0.0 {
            return Err(FormsError::BadProfile(format!(
                "f must be positive, f({rho}) <= 0"
            )));
        }
    }
    let alpha = ChartForm::one_form(3, vec![(2, Expr::profile(f.clone().shared(), 0))]);
    let beta = ChartForm::one_form(3, vec![(1, Expr::profile(g.clone().shared(), 0))]);
    let combo = alpha.wedge(&beta.d()).add(beta.wedge(&alpha.d()));
    let top = combo.top_coeff();

    let mut min_interior = f64::INFINITY;
    let mut min_boundary = f64::INFINITY;
    let mut worst = Vec::new();
    let mut samples = 0usize;
    for (idx, x) in chart.nodes() {
        let v = top.eval(&x);
        samples += 1;
        if chart.is_interior_on_axis(&idx, 0) {
            if v < min_interior {
                min_interior = v;
                worst = x;
            }
        } else if v < min_boundary {
            min_boundary = v;
        }
    }
    let strict_ok = min_interior > tol.finite_difference;
    let boundary_ok = min_boundary >= -tol.finite_difference;
    let mut report = CheckReport::lower_bound(
        "interface positivity: alpha ∧ d(beta) + beta ∧ d(alpha) > 0 (strict at interior rho)",
        min_interior.min(min_boundary),
        worst,
        samples,
        tol.finite_difference,
    );
    report.pass = strict_ok && boundary_ok;
    Ok(report)
}

/// Verifies the four boundary-collar profile conditions on `(-delta, 0]`:
/// positivity of `f'g - fg'`, the endpoint values `f(0) = 1, g(0) = 0`,
/// the flatness `f'(0) = 0`, and the match `(f, g) = (e^t, 1)` at the
/// left end. Derivative conditions use the profiles' derivatives (finite
/// differences for tables) at the stated relative tolerance.
pub fn boundary_profile_check(
    f: &Profile,
    g: &Profile,
    samples: usize,
    tol: &Tolerances,
) -> Result<Vec<CheckReport>, FormsError> {
    if samples < 2 {
        return Err(FormsError::BadResolution { axis: 0 });
    }
    let (lo_f, hi_f) = f.domain();
    let (lo_g, hi_g) = g.domain();
    let (lo, hi) = (lo_f.max(lo_g), hi_f.min(hi_g));
    if lo >= hi {
        return Err(FormsError::BadProfile(
            "profiles have disjoint domains".into(),
        ));
    }
    let df = f.derivative();
    let dg = g.derivative();

    let mut reports = Vec::new();

    // (1) f'g - fg' > 0 on the sample range.
    let mut min = f64::INFINITY;
    let mut worst = 0.0f64;
    for i in 0..samples {
        let t = lo + (hi - lo) * i as f64 / (samples - 1) as f64;
        let v = df.eval(t) * g.eval(t) - f.eval(t) * dg.eval(t);
        if v < min {
            min = v;
            worst = t;
        }
    }
    reports.push(CheckReport::lower_bound(
        "f'g - fg' > 0",
        min,
        vec![worst],
        samples,
        tol.finite_difference,
    ));

    // (2) f(0) = 1 and g(0) = 0.
    let err_f0 = (f.eval(0.0) - 1.0).abs();
    let err_g0 = g.eval(0.0).abs();
    reports.push(CheckReport::max_error(
        "f(0) = 1 and g(0) = 0",
        err_f0.max(err_g0),
        vec![0.0],
        2,
        tol.finite_difference,
    ));

    // (3) f'(0) = 0, one-sided at the boundary.
    reports.push(CheckReport::max_error(
        "f'(0) = 0",
        df.eval(0.0).abs(),
        vec![0.0],
        1,
        tol.finite_difference,
    ));

    // (4) (f, g) = (e^t, 1) at the collar end.
    let err_f = (f.eval(lo) - lo.exp()).abs() / lo.exp();
    let err_g = (g.eval(lo) - 1.0).abs();
    reports.push(CheckReport::max_error(
        "(f, g) = (e^t, 1) near the collar end",
        err_f.max(err_g),
        vec![lo],
        2,
        tol.finite_difference,
    ));

    Ok(reports)
}

/// Solves the dense linear system `A v = b` by Gaussian elimination with
/// partial pivoting; `None` when singular.
#[allow(clippy::needless_range_loop)]
fn solve_linear(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let pivot =
            (col..n).max_by(|&i, &j| a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap())?;
        if a[pivot][col].abs() < 1e-300 {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..n {
            let factor = a[row][col] / a[col][col];
            for k in col..n {
                a[row][k] -= factor * a[col][k];
            }
            b[row] -= factor * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let mut acc = b[row];
        for k in row + 1..n {
            acc -= a[row][k] * x[k];
        }
        x[row] = acc / a[row][row];
    }
    Some(x)
}

/// The collar model `lambda_K = K m e^s dphi + e^t dtheta` on a chart
/// ordered (s, phi, t, theta).
pub fn collar_lambda_k(k: f64, m: u32) -> ChartForm {
    ChartForm::one_form(
        4,
        vec![
            (1, Expr::exp_coord(0).scaled(k * m as f64)),
            (3, Expr::exp_coord(2)),
        ],
    )
}

/// Verifies the corner collar model: (a) `d(lambda_K)` is symplectic,
/// (b) the Liouville field solved from `d(lambda_K)(V, .) = lambda_K`
/// equals `∂_s + ∂_t` at every node, (c) the smoothing profiles `(F, G)`
/// are monotone with `F' + |G'| > 0`, strict on the required ranges, so the
/// smoothed hypersurface stays transverse to the field.
pub fn collar_model_check(
    k: f64,
    m: u32,
    chart: &Chart,
    smoothing_f: &Profile,
    smoothing_g: &Profile,
    tol: &Tolerances,
) -> Result<Vec<CheckReport>, FormsError> {
    chart.require_dim(4)?;
    if k <= 0.0 || m == 0 {
        return Err(FormsError::BadProfile(
            "collar model needs K > 0 and m >= 1".into(),
        ));
    }
    let lambda = collar_lambda_k(k, m);
    let omega = lambda.d();

    let mut reports = Vec::new();
    reports.push(symplectic_check(chart, &omega, tol)?);

    // (b) Liouville field vs ∂_s + ∂_t, component-wise.
    let expected = [1.0, 0.0, 1.0, 0.0];
    let mut max_err: f64 = 0.0;
    let mut worst = Vec::new();
    let mut samples = 0usize;
    for (_, x) in chart.nodes() {
        samples += 1;
        // omega(V, .)_r = sum_c omega_{c r} V_c
        let cm = omega.coefficient_matrix(&x);
        let n = cm.len();
        let mut a = vec![vec![0.0; n]; n];
        for r in 0..n {
            for c in 0..n {
                a[r][c] = cm[c][r];
            }
        }
        let b = lambda.coefficient_vector(&x);
        let err = match solve_linear(a, b) {
            Some(v) => v
                .iter()
                .zip(expected.iter())
                .map(|(a, b)| (a - b).abs())
                .fold(0.0f64, f64::max),
            None => f64::INFINITY,
        };
        if err > max_err {
            max_err = err;
            worst = x;
        }
    }
    reports.push(CheckReport::max_error(
        "Liouville field V_K = ∂_s + ∂_t",
        max_err,
        worst,
        samples,
        1e-9,
    ));

    // (c) smoothing profile constraints on the common domain.
    let (lo_f, hi_f) = smoothing_f.domain();
    let (lo_g, hi_g) = smoothing_g.domain();
    let (lo, hi) = (lo_f.max(lo_g), hi_f.min(hi_g));
    if lo >= hi {
        return Err(FormsError::BadProfile(
            "smoothing profiles have disjoint domains".into(),
        ));
    }
    let df = smoothing_f.derivative();
    let dg = smoothing_g.derivative();
    let n = 401usize;
    let eps = tol.finite_difference;

    let mut min_monotone = f64::INFINITY; // min of (F', -G') jointly
    let mut worst_monotone = 0.0f64;
    let mut min_strict = f64::INFINITY; // F' left of the corner, -G' right of it
    let mut worst_strict = 0.0f64;
    let mut min_transverse = f64::INFINITY; // F' + |G'|
    let mut worst_transverse = 0.0f64;
    for i in 0..n {
        let rho = lo + (hi - lo) * i as f64 / (n - 1) as f64;
        let fp = df.eval(rho);
        let gp = dg.eval(rho);
        if fp.min(-gp) < min_monotone {
            min_monotone = fp.min(-gp);
            worst_monotone = rho;
        }
        if rho < 0.25 - eps && fp < min_strict {
            min_strict = fp;
            worst_strict = rho;
        }
        if rho > -0.25 + eps && -gp < min_strict {
            min_strict = -gp;
            worst_strict = rho;
        }
        if fp + gp.abs() < min_transverse {
            min_transverse = fp + gp.abs();
            worst_transverse = rho;
        }
    }
    reports.push(CheckReport::lower_bound(
        "smoothing monotonicity: F' >= 0 and G' <= 0",
        min_monotone,
        vec![worst_monotone],
        n,
        -eps,
    ));
    reports.push(CheckReport::lower_bound(
        "smoothing strictness: F' > 0 for rho < 1/4, G' < 0 for rho > -1/4",
        min_strict,
        vec![worst_strict],
        n,
        eps,
    ));
    reports.push(CheckReport::lower_bound(
        "transversality: F' + |G'| > 0",
        min_transverse,
        vec![worst_transverse],
        n,
        eps,
    ));
    Ok(reports)
}
