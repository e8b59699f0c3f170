//! A small closed-form expression tree with exact partial derivatives.
//!
//! This covers the coefficient functions of every built-in model family
//! (constants, coordinates, exponentials, sums, products) plus tabulated or
//! piecewise profiles of a single coordinate.

use super::profile::Profile;
use std::sync::Arc;

#[derive(Debug, Clone)]
pub enum Expr {
    Const(f64),
    Coord(usize),
    Sum(Vec<Expr>),
    Prod(Vec<Expr>),
    Exp(Box<Expr>),
    /// A 1-D profile evaluated at one coordinate.
    Profile {
        profile: Arc<Profile>,
        coord: usize,
    },
}

impl Expr {
    pub fn constant(c: f64) -> Expr {
        Expr::Const(c)
    }

    pub fn coord(i: usize) -> Expr {
        Expr::Coord(i)
    }

    /// e^{x_i}
    pub fn exp_coord(i: usize) -> Expr {
        Expr::Exp(Box::new(Expr::Coord(i)))
    }

    pub fn profile(profile: Arc<Profile>, coord: usize) -> Expr {
        Expr::Profile { profile, coord }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(self, other: Expr) -> Expr {
        match (self, other) {
            (a, b) if b.is_zero() => a,
            (a, b) if a.is_zero() => b,
            (Expr::Sum(mut v), b) => {
                v.push(b);
                Expr::Sum(v)
            }
            (a, b) => Expr::Sum(vec![a, b]),
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: Expr) -> Expr {
        if self.is_zero() || other.is_zero() {
            return Expr::Const(0.0);
        }
        match (self, other) {
            (a, b) if b.is_one() => a,
            (a, b) if a.is_one() => b,
            (Expr::Const(a), Expr::Const(b)) => Expr::Const(a * b),
            (Expr::Prod(mut v), b) => {
                v.push(b);
                Expr::Prod(v)
            }
            (a, b) => Expr::Prod(vec![a, b]),
        }
    }

    pub fn scaled(self, c: f64) -> Expr {
        Expr::Const(c).mul(self)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Expr::Const(c) if *c == 0.0)
    }

    fn is_one(&self) -> bool {
        matches!(self, Expr::Const(c) if *c == 1.0)
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        match self {
            Expr::Const(c) => *c,
            Expr::Coord(i) => x[*i],
            Expr::Sum(v) => v.iter().map(|e| e.eval(x)).sum(),
            Expr::Prod(v) => v.iter().map(|e| e.eval(x)).product(),
            Expr::Exp(e) => e.eval(x).exp(),
            Expr::Profile { profile, coord } => profile.eval(x[*coord]),
        }
    }

    /// Exact partial derivative, except for `Table` profiles where the
    /// derivative is the finite-difference table.
    pub fn partial(&self, i: usize) -> Expr {
        match self {
            Expr::Const(_) => Expr::Const(0.0),
            Expr::Coord(j) => Expr::Const(if *j == i { 1.0 } else { 0.0 }),
            Expr::Sum(v) => {
                let mut out = Expr::Const(0.0);
                for e in v {
                    out = out.add(e.partial(i));
                }
                out
            }
            Expr::Prod(v) => {
                let mut out = Expr::Const(0.0);
                for (k, e) in v.iter().enumerate() {
                    let de = e.partial(i);
                    if de.is_zero() {
                        continue;
                    }
                    let mut term = de;
                    for (l, f) in v.iter().enumerate() {
                        if l != k {
                            term = term.mul(f.clone());
                        }
                    }
                    out = out.add(term);
                }
                out
            }
            Expr::Exp(e) => e.partial(i).mul(self.clone()),
            Expr::Profile { profile, coord } => {
                if *coord == i {
                    Expr::Profile {
                        profile: Arc::new(profile.derivative()),
                        coord: *coord,
                    }
                } else {
                    Expr::Const(0.0)
                }
            }
        }
    }
}
