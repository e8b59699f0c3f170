//! Built-in model charts and form families.
//!
//! Chart conventions: 3-D collar charts are ordered (phi, t, theta) with
//! t in [-1, 0]; horizontal charts (s, phi, theta) with s in [-1, 0];
//! the 4-D corner chart is (s, phi, t, theta) with s, t in [-1, 0].
//! Angular axes are periodic with period 1.

use super::chart::{Axis, Chart};
use super::expr::Expr;
use super::form::ChartForm;

pub fn collar_chart_3d(n: usize) -> Chart {
    Chart::new(vec![
        Axis::circle("phi", n),
        Axis::interval("t", -1.0, 0.0, n),
        Axis::circle("theta", n),
    ])
    .expect("n >= 2")
}

pub fn horizontal_chart_3d(n: usize) -> Chart {
    Chart::new(vec![
        Axis::interval("s", -1.0, 0.0, n),
        Axis::circle("phi", n),
        Axis::circle("theta", n),
    ])
    .expect("n >= 2")
}

pub fn corner_chart_4d(n: usize) -> Chart {
    Chart::new(vec![
        Axis::interval("s", -1.0, 0.0, n),
        Axis::circle("phi", n),
        Axis::interval("t", -1.0, 0.0, n),
        Axis::circle("theta", n),
    ])
    .expect("n >= 2")
}

/// `e^t dtheta + K dphi` on (phi, t, theta).
pub fn collar_contact_form(k: f64) -> ChartForm {
    ChartForm::one_form(3, vec![(2, Expr::exp_coord(1)), (0, Expr::Const(k))])
}

/// `dtheta + K e^s dphi` on (s, phi, theta).
pub fn horizontal_contact_form(k: f64) -> ChartForm {
    ChartForm::one_form(
        3,
        vec![(2, Expr::Const(1.0)), (1, Expr::exp_coord(0).scaled(k))],
    )
}

/// `K ds ∧ dphi + dt ∧ dtheta` on (s, phi, t, theta).
pub fn product_symplectic_form(k: f64) -> ChartForm {
    ChartForm::two_form(4, vec![(0, 1, Expr::Const(k)), (2, 3, Expr::Const(1.0))])
}

/// The spine-removal handle form `K ds ∧ dphi + e^t dt ∧ dtheta`.
pub fn handle_form(k: f64) -> ChartForm {
    ChartForm::two_form(4, vec![(0, 1, Expr::Const(k)), (2, 3, Expr::exp_coord(2))])
}

/// Threshold family `lambda = e^t dtheta`, `sigma = dphi` on the collar
/// chart: contact for every K > 0.
pub fn vertical_family() -> (ChartForm, ChartForm) {
    let lambda = ChartForm::one_form(3, vec![(2, Expr::exp_coord(1))]);
    let sigma = ChartForm::one_form(3, vec![(0, Expr::Const(1.0))]);
    (lambda, sigma)
}

/// Threshold family `lambda = dtheta + A s dphi`, `sigma = e^s dphi` on the
/// horizontal chart: contact iff `A + K e^s > 0` on the whole range, so for
/// A < 0 the threshold is `-A e` on s in [-1, 0].
pub fn slope_family(a: f64) -> (ChartForm, ChartForm) {
    let lambda = ChartForm::one_form(
        3,
        vec![(2, Expr::Const(1.0)), (1, Expr::coord(0).scaled(a))],
    );
    let sigma = ChartForm::one_form(3, vec![(1, Expr::exp_coord(0))]);
    (lambda, sigma)
}

/// Already-contact base for the threshold search: the collar contact form
/// with K = 1, pushed by sigma = dphi.
pub fn contact_base_family() -> (ChartForm, ChartForm) {
    let lambda = collar_contact_form(1.0);
    let sigma = ChartForm::one_form(3, vec![(0, Expr::Const(1.0))]);
    (lambda, sigma)
}

/// Liouville threshold family on the corner chart:
/// `lambda = A s dphi + e^t dtheta`, `sigma = s dphi`, so
/// `d(lambda + K sigma) = (A + K) ds ∧ dphi + e^t dt ∧ dtheta` is
/// symplectic iff `K > -A`.
pub fn liouville_slope_family(a: f64) -> (ChartForm, ChartForm) {
    let lambda = ChartForm::one_form(
        4,
        vec![(1, Expr::coord(0).scaled(a)), (3, Expr::exp_coord(2))],
    );
    let sigma = ChartForm::one_form(4, vec![(1, Expr::coord(0))]);
    (lambda, sigma)
}

/// Symplectic threshold family on the corner chart:
/// `omega = A ds ∧ dphi + dt ∧ dtheta`, `mu = ds ∧ dphi`, so
/// `omega + K mu` is symplectic iff `K > -A`.
pub fn symplectic_slope_family(a: f64) -> (ChartForm, ChartForm) {
    let omega = ChartForm::two_form(4, vec![(0, 1, Expr::Const(a)), (2, 3, Expr::Const(1.0))]);
    let mu = ChartForm::two_form(4, vec![(0, 1, Expr::Const(1.0))]);
    (omega, mu)
}

/// Weak-boundary scaling family on the corner chart:
/// `C omega + eta` with `omega = ds ∧ dphi + dt ∧ dtheta` and
/// `eta = a dt ∧ dtheta`; the square is `2 C (C + a)`, symplectic iff
/// `C > -a`.
pub fn weak_scaling_family(a: f64) -> (ChartForm, ChartForm) {
    let omega = product_symplectic_form(1.0);
    let eta = ChartForm::two_form(4, vec![(2, 3, Expr::Const(a))]);
    (omega, eta)
}
