//! One-dimensional coefficient profiles: tabulated samples with
//! finite-difference derivatives, or piecewise polynomials with exact ones.

use std::sync::Arc;

/// A scalar function of one variable on a closed interval.
#[derive(Debug, Clone, PartialEq)]
pub enum Profile {
    /// Sample table; evaluated by linear interpolation and differentiated
    /// by central differences (second-order one-sided at the ends).
    Table { xs: Vec<f64>, ys: Vec<f64> },
    /// Piecewise polynomial in local coordinates, exact derivatives.
    Piecewise {
        breaks: Vec<f64>,
        coeffs: Vec<Vec<f64>>,
    },
}

impl Profile {
    pub fn from_samples(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self, String> {
        if xs.len() != ys.len() {
            return Err("coordinate and value columns differ in length".into());
        }
        if xs.len() < 2 {
            return Err("a profile needs at least 2 samples".into());
        }
        if xs.windows(2).any(|w| w[0] >= w[1]) {
            return Err("profile coordinates must be strictly increasing".into());
        }
        Ok(Profile::Table { xs, ys })
    }

    /// Tabulates a closed-form function on a uniform grid.
    pub fn tabulate(f: impl Fn(f64) -> f64, lo: f64, hi: f64, samples: usize) -> Self {
        let xs: Vec<f64> = (0..samples)
            .map(|i| lo + (hi - lo) * i as f64 / (samples - 1) as f64)
            .collect();
        let ys: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
        Profile::Table { xs, ys }
    }

    /// C^1 piecewise cubic through `(x, y, slope)` knots.
    pub fn hermite(knots: &[(f64, f64, f64)]) -> Self {
        assert!(knots.len() >= 2);
        let mut breaks = Vec::new();
        let mut coeffs = Vec::new();
        for w in knots.windows(2) {
            let (x0, y0, m0) = w[0];
            let (x1, y1, m1) = w[1];
            let h = x1 - x0;
            // cubic a + b u + c u^2 + d u^3 in u = x - x0
            let a = y0;
            let b = m0;
            let c = (3.0 * (y1 - y0) / h - 2.0 * m0 - m1) / h;
            let d = (2.0 * (y0 - y1) / h + m0 + m1) / (h * h);
            breaks.push(x0);
            coeffs.push(vec![a, b, c, d]);
        }
        breaks.push(knots.last().unwrap().0);
        Profile::Piecewise { breaks, coeffs }
    }

    pub fn domain(&self) -> (f64, f64) {
        match self {
            Profile::Table { xs, .. } => (xs[0], *xs.last().unwrap()),
            Profile::Piecewise { breaks, .. } => (breaks[0], *breaks.last().unwrap()),
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Profile::Table { xs, ys } => {
                let i = segment(xs, x);
                let t = (x - xs[i]) / (xs[i + 1] - xs[i]);
                ys[i] * (1.0 - t) + ys[i + 1] * t
            }
            Profile::Piecewise { breaks, coeffs } => {
                let i = segment(breaks, x);
                let u = x - breaks[i];
                coeffs[i].iter().rev().fold(0.0, |acc, &c| acc * u + c)
            }
        }
    }

    /// The derivative profile: exact for piecewise polynomials, a
    /// finite-difference table otherwise.
    pub fn derivative(&self) -> Profile {
        match self {
            Profile::Table { xs, ys } => {
                let n = xs.len();
                let mut dys = vec![0.0; n];
                for i in 1..n - 1 {
                    dys[i] = (ys[i + 1] - ys[i - 1]) / (xs[i + 1] - xs[i - 1]);
                }
                dys[0] = one_sided(
                    xs[0],
                    (xs[0], ys[0]),
                    (xs[1], ys[1]),
                    nth(xs, ys, 2.min(n - 1)),
                );
                dys[n - 1] = one_sided(
                    xs[n - 1],
                    (xs[n - 1], ys[n - 1]),
                    (xs[n - 2], ys[n - 2]),
                    nth(xs, ys, n.saturating_sub(3)),
                );
                Profile::Table {
                    xs: xs.clone(),
                    ys: dys,
                }
            }
            Profile::Piecewise { breaks, coeffs } => {
                let dcoeffs: Vec<Vec<f64>> = coeffs
                    .iter()
                    .map(|c| {
                        let mut d: Vec<f64> = c
                            .iter()
                            .enumerate()
                            .skip(1)
                            .map(|(k, &v)| k as f64 * v)
                            .collect();
                        if d.is_empty() {
                            d.push(0.0);
                        }
                        d
                    })
                    .collect();
                Profile::Piecewise {
                    breaks: breaks.clone(),
                    coeffs: dcoeffs,
                }
            }
        }
    }

    pub fn shared(self) -> Arc<Profile> {
        Arc::new(self)
    }
}

fn nth(xs: &[f64], ys: &[f64], i: usize) -> (f64, f64) {
    (xs[i], ys[i])
}

/// Second-order one-sided derivative at `x` from three points.
fn one_sided(x: f64, p0: (f64, f64), p1: (f64, f64), p2: (f64, f64)) -> f64 {
    let (x0, y0) = p0;
    let (x1, y1) = p1;
    let (x2, y2) = p2;
    if x1 == x2 {
        // only two distinct points available
        return (y1 - y0) / (x1 - x0);
    }
    y0 * ((x - x1) + (x - x2)) / ((x0 - x1) * (x0 - x2))
        + y1 * ((x - x0) + (x - x2)) / ((x1 - x0) * (x1 - x2))
        + y2 * ((x - x0) + (x - x1)) / ((x2 - x0) * (x2 - x1))
}

fn segment(breaks: &[f64], x: f64) -> usize {
    let n = breaks.len();
    if x <= breaks[0] {
        return 0;
    }
    if x >= breaks[n - 1] {
        return n - 2;
    }
    match breaks.binary_search_by(|b| b.partial_cmp(&x).unwrap()) {
        Ok(i) => i.min(n - 2),
        Err(i) => i - 1,
    }
}

/// The corner-smoothing pair (F, G) on [-1, 1]: F(rho) = rho left of the
/// corner window, 0 right of it; G(rho) = F(-rho)'s mirror, 0 left and
/// -rho right; both monotone with the strictness required for
/// transversality of the Liouville field.
pub fn corner_smoothing_profiles() -> (Profile, Profile) {
    let f = Profile::hermite(&[
        (-1.0, -1.0, 1.0),
        (-0.25, -0.25, 1.0),
        (0.25, 0.0, 0.0),
        (1.0, 0.0, 0.0),
    ]);
    let g = Profile::hermite(&[
        (-1.0, 0.0, 0.0),
        (-0.25, 0.0, 0.0),
        (0.25, -0.25, -1.0),
        (1.0, -1.0, -1.0),
    ]);
    (f, g)
}

/// The boundary collar pair (f, g) on [-delta, 0]: (f, g) = (e^t, 1) at the
/// left end, (f, g) = (1, 0) with f'(0) = 0 at the boundary, and
/// f'g - fg' > 0 throughout.
pub fn boundary_collar_profiles(delta: f64) -> (Profile, Profile) {
    let e = (-delta).exp();
    let f = Profile::hermite(&[(-delta, e, e), (0.0, 1.0, 0.0)]);
    let g = Profile::hermite(&[(-delta, 1.0, 0.0), (0.0, 0.0, -1.0)]);
    (f, g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermite_interpolates_values_and_slopes() {
        let p = Profile::hermite(&[(0.0, 1.0, 0.0), (1.0, 2.0, 3.0)]);
        assert!((p.eval(0.0) - 1.0).abs() < 1e-14);
        assert!((p.eval(1.0) - 2.0).abs() < 1e-14);
        let d = p.derivative();
        assert!((d.eval(0.0)).abs() < 1e-13);
        assert!((d.eval(1.0) - 3.0).abs() < 1e-13);
    }

    #[test]
    fn table_derivative_second_order() {
        // FD derivative of a tabulated exponential converges at O(h^2),
        // including at the one-sided ends.
        let err = |n: usize| {
            let p = Profile::tabulate(f64::exp, -1.0, 0.0, n);
            let d = p.derivative();
            let mut worst: f64 = 0.0;
            for i in 0..=4 * n {
                let x = -1.0 + i as f64 / (4 * n) as f64;
                // compare at table nodes to avoid interpolation error
                let x = (x * (n - 1) as f64).round() / (n - 1) as f64;
                worst = worst.max((d.eval(x) - x.exp()).abs());
            }
            worst
        };
        let (e1, e2, e4) = (err(17), err(33), err(65));
        assert!(
            e2 < e1 / 2.5,
            "halving h should shrink the error: {e1} -> {e2}"
        );
        assert!(e4 < e2 / 2.5, "halving h again: {e2} -> {e4}");
    }

    #[test]
    fn corner_profiles_satisfy_their_constraints() {
        let (f, g) = corner_smoothing_profiles();
        let (df, dg) = (f.derivative(), g.derivative());
        for i in 0..=400 {
            let rho = -1.0 + 2.0 * i as f64 / 400.0;
            assert!(df.eval(rho) >= -1e-12);
            assert!(dg.eval(rho) <= 1e-12);
            assert!(
                df.eval(rho) + dg.eval(rho).abs() > 1e-9,
                "transversality at {rho}"
            );
            if rho < 0.25 - 1e-9 {
                assert!(
                    df.eval(rho) > 1e-9,
                    "F' strictly positive left of the corner at {rho}"
                );
            }
            if rho > -0.25 + 1e-9 {
                assert!(
                    dg.eval(rho) < -1e-9,
                    "G' strictly negative right of the corner at {rho}"
                );
            }
        }
        // Exact linear tails.
        assert!((f.eval(-0.7) + 0.7).abs() < 1e-13);
        assert!((g.eval(0.7) + 0.7).abs() < 1e-13);
    }
}
