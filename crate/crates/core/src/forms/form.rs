//! Differential forms on a chart, as sums of coefficient expressions times
//! wedge monomials in the coordinate differentials.

use super::expr::Expr;

/// One term `coeff * dx_{axes[0]} ∧ ... ∧ dx_{axes[k-1]}` with strictly
/// increasing axes.
#[derive(Debug, Clone)]
pub struct Term {
    pub axes: Vec<usize>,
    pub coeff: Expr,
}

/// A differential form on an n-dimensional chart.
#[derive(Debug, Clone)]
pub struct ChartForm {
    pub dim: usize,
    pub degree: usize,
    pub terms: Vec<Term>,
}

impl ChartForm {
    pub fn zero(dim: usize, degree: usize) -> Self {
        ChartForm {
            dim,
            degree,
            terms: Vec::new(),
        }
    }

    pub fn one_form(dim: usize, terms: Vec<(usize, Expr)>) -> Self {
        ChartForm {
            dim,
            degree: 1,
            terms: terms
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, coeff)| {
                    assert!(i < dim);
                    Term {
                        axes: vec![i],
                        coeff,
                    }
                })
                .collect(),
        }
    }

    /// Builds from `(i, j, coeff)` triples meaning `coeff dx_i ∧ dx_j`;
    /// antisymmetry is normalized into the stored orientation.
    pub fn two_form(dim: usize, terms: Vec<(usize, usize, Expr)>) -> Self {
        let mut out = Vec::new();
        for (i, j, coeff) in terms {
            assert_ne!(i, j, "dx_i ∧ dx_i = 0");
            assert!(i < dim && j < dim);
            if coeff.is_zero() {
                continue;
            }
            if i < j {
                out.push(Term {
                    axes: vec![i, j],
                    coeff,
                });
            } else {
                out.push(Term {
                    axes: vec![j, i],
                    coeff: coeff.scaled(-1.0),
                });
            }
        }
        ChartForm {
            dim,
            degree: 2,
            terms: out,
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(mut self, other: ChartForm) -> ChartForm {
        assert_eq!(self.degree, other.degree);
        assert_eq!(self.dim, other.dim);
        self.terms.extend(other.terms);
        self
    }

    pub fn scale(mut self, c: f64) -> ChartForm {
        for t in &mut self.terms {
            t.coeff = std::mem::replace(&mut t.coeff, Expr::Const(0.0)).scaled(c);
        }
        self
    }

    /// Exterior derivative.
    pub fn d(&self) -> ChartForm {
        let mut terms = Vec::new();
        for t in &self.terms {
            // d(f dx_I) = sum_i (df/dx_i) dx_i ∧ dx_I
            for i in 0..self.dim {
                let df = t.coeff.partial(i);
                if df.is_zero() {
                    continue;
                }
                if let Some((axes, sign)) = insert_axis(i, &t.axes) {
                    terms.push(Term {
                        axes,
                        coeff: df.scaled(sign),
                    });
                }
            }
        }
        ChartForm {
            dim: self.dim,
            degree: self.degree + 1,
            terms,
        }
    }

    /// Wedge product.
    pub fn wedge(&self, other: &ChartForm) -> ChartForm {
        assert_eq!(self.dim, other.dim);
        let mut terms = Vec::new();
        for a in &self.terms {
            for b in &other.terms {
                if let Some((axes, sign)) = merge_axes(&a.axes, &b.axes) {
                    terms.push(Term {
                        axes,
                        coeff: a.coeff.clone().mul(b.coeff.clone()).scaled(sign),
                    });
                }
            }
        }
        ChartForm {
            dim: self.dim,
            degree: self.degree + other.degree,
            terms,
        }
    }

    /// Coefficient of the oriented volume monomial `dx_0 ∧ ... ∧ dx_{dim-1}`.
    pub fn top_coeff(&self) -> Expr {
        assert_eq!(self.degree, self.dim);
        let full: Vec<usize> = (0..self.dim).collect();
        let mut out = Expr::Const(0.0);
        for t in &self.terms {
            if t.axes == full {
                out = out.add(t.coeff.clone());
            }
        }
        out
    }

    /// Antisymmetric coefficient matrix of a 2-form at a point.
    pub fn coefficient_matrix(&self, x: &[f64]) -> Vec<Vec<f64>> {
        assert_eq!(self.degree, 2);
        let mut m = vec![vec![0.0; self.dim]; self.dim];
        for t in &self.terms {
            let v = t.coeff.eval(x);
            let (i, j) = (t.axes[0], t.axes[1]);
            m[i][j] += v;
            m[j][i] -= v;
        }
        m
    }

    /// Coefficient covector of a 1-form at a point.
    pub fn coefficient_vector(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(self.degree, 1);
        let mut v = vec![0.0; self.dim];
        for t in &self.terms {
            v[t.axes[0]] += t.coeff.eval(x);
        }
        v
    }
}

/// Inserts axis `i` in front of a sorted monomial, returning the sorted
/// monomial and the sign of the reordering, or `None` when `i` repeats.
fn insert_axis(i: usize, axes: &[usize]) -> Option<(Vec<usize>, f64)> {
    if axes.contains(&i) {
        return None;
    }
    let pos = axes.iter().filter(|&&a| a < i).count();
    let mut out = Vec::with_capacity(axes.len() + 1);
    out.extend_from_slice(&axes[..pos]);
    out.push(i);
    out.extend_from_slice(&axes[pos..]);
    let sign = if pos % 2 == 0 { 1.0 } else { -1.0 };
    Some((out, sign))
}

/// Merges two sorted monomials, returning `None` on a repeated axis and the
/// permutation sign otherwise.
fn merge_axes(a: &[usize], b: &[usize]) -> Option<(Vec<usize>, f64)> {
    let mut out: Vec<usize> = a.iter().chain(b.iter()).copied().collect();
    // count inversions of the concatenation by insertion sort
    let mut swaps = 0usize;
    for i in 1..out.len() {
        let mut j = i;
        while j > 0 && out[j - 1] > out[j] {
            out.swap(j - 1, j);
            swaps += 1;
            j -= 1;
        }
    }
    if out.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((out, if swaps.is_multiple_of(2) { 1.0 } else { -1.0 }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wedge_signs() {
        // dtheta ∧ (dt ∧ dtheta) = 0; dphi ∧ (dt ∧ dtheta) = +dphi∧dt∧dtheta
        let dtheta = ChartForm::one_form(3, vec![(2, Expr::Const(1.0))]);
        let dt_dtheta = ChartForm::two_form(3, vec![(1, 2, Expr::Const(1.0))]);
        assert!(dtheta.wedge(&dt_dtheta).top_coeff().eval(&[0.0; 3]).abs() < 1e-15);
        let dphi = ChartForm::one_form(3, vec![(0, Expr::Const(1.0))]);
        let top = dphi.wedge(&dt_dtheta).top_coeff();
        assert!((top.eval(&[0.0; 3]) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn exterior_derivative_of_e_t_dtheta() {
        // d(e^t dtheta) = e^t dt ∧ dtheta on (phi, t, theta)
        let alpha = ChartForm::one_form(3, vec![(2, Expr::exp_coord(1))]);
        let da = alpha.d();
        assert_eq!(da.degree, 2);
        let x = [0.0, -0.5, 0.3];
        let m = da.coefficient_matrix(&x);
        assert!((m[1][2] - (-0.5f64).exp()).abs() < 1e-14);
        assert!((m[2][1] + (-0.5f64).exp()).abs() < 1e-14);
    }

    #[test]
    fn contact_volume_of_the_collar_model() {
        // (e^t dtheta + K dphi) ∧ d(e^t dtheta + K dphi) = K e^t dphi∧dt∧dtheta
        let k = 2.5;
        let alpha = ChartForm::one_form(3, vec![(2, Expr::exp_coord(1)), (0, Expr::Const(k))]);
        let vol = alpha.wedge(&alpha.d()).top_coeff();
        for t in [-1.0, -0.5, 0.0] {
            let x = [0.7, t, 0.1];
            assert!((vol.eval(&x) - k * t.exp()).abs() < 1e-13);
        }
    }
}
