//! Gauss-Legendre rules and affinely mapped 1D integration.
//!
//! Nodes are the roots of the Legendre polynomial `P_N`, found by Newton
//! iteration started from Chebyshev-like guesses; the weights are the
//! classical `2 / ((1 - x^2) P_N'(x)^2)`.

use std::f64::consts::PI;
use std::ops::{Add, Mul};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest order accepted by [`legendre_rule`].
pub const MAX_ORDER: usize = 64;

/// Order used by the published experiments.
pub const DEFAULT_ORDER: usize = 5;

const NEWTON_TOL: f64 = 1e-15;
const NEWTON_MAX_ITERS: usize = 100;

/// Nodes and weights of an `N`-point Gauss-Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

/// Values that can be integrated: real and complex scalars.
pub trait Integrand: Copy + Add<Output = Self> + Mul<f64, Output = Self> {
    fn zero() -> Self;
    fn is_finite(&self) -> bool;
}

impl Integrand for f64 {
    fn zero() -> Self {
        0.0
    }
    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }
}

impl Integrand for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

/// Evaluates `P_n(x)` and `P_n'(x)` by the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p_prev = 1.0;
    let mut p = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let next = ((2.0 * kf - 1.0) * x * p - (kf - 1.0) * p_prev) / kf;
        p_prev = p;
        p = next;
    }
    let nf = n as f64;
    let dp = nf * (x * p - p_prev) / (x * x - 1.0);
    (p, dp)
}

/// Builds the `order`-point Gauss-Legendre rule, `1 <= order <= 64`.
pub fn legendre_rule(order: usize) -> Result<GaussRule> {
    if !(1..=MAX_ORDER).contains(&order) {
        return Err(Error::param(format!(
            "quadrature order {order} outside 1..={MAX_ORDER}"
        )));
    }
    let n = order;
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    // Roots come in +/- pairs; solve for the positive half and mirror.
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        if n % 2 == 1 && i == n / 2 {
            // Middle root of an odd rule is exactly zero.
            x = 0.0;
        } else {
            for _ in 0..NEWTON_MAX_ITERS {
                let (p, dp) = legendre_with_derivative(n, x);
                let dx = p / dp;
                x -= dx;
                if dx.abs() <= NEWTON_TOL {
                    break;
                }
            }
        }
        let dp = legendre_with_derivative(n, x).1;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    Ok(GaussRule { nodes, weights })
}

impl GaussRule {
    pub fn new(order: usize) -> Result<Self> {
        legendre_rule(order)
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// Nodes on `[-1, 1]`, ascending.
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Node/weight pairs mapped onto `[a, b]`.
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(&x, &w)| (mid + half * x, half * w))
    }

    /// Integrates `f` over `[a, b]`. Exact for polynomials of degree `<= 2N - 1`.
    pub fn integrate<T, F>(&self, a: f64, b: f64, mut f: F) -> Result<T>
    where
        T: Integrand,
        F: FnMut(f64) -> T,
    {
        if !(a <= b) {
            return Err(Error::param(format!("integration bounds [{a}, {b}] reversed")));
        }
        let mut acc = T::zero();
        for (x, w) in self.mapped(a, b) {
            let v = f(x);
            if !v.is_finite() {
                return Err(Error::data(format!("non-finite integrand sample at x = {x}")));
            }
            acc = acc + v * w;
        }
        Ok(acc)
    }

    /// Composite rule: `[a, b]` split into `panels` equal pieces.
    pub fn integrate_composite<T, F>(&self, a: f64, b: f64, panels: usize, mut f: F) -> Result<T>
    where
        T: Integrand,
        F: FnMut(f64) -> T,
    {
        let panels = panels.max(1);
        let h = (b - a) / panels as f64;
        let mut acc = T::zero();
        for p in 0..panels {
            let lo = a + h * p as f64;
            let hi = if p + 1 == panels { b } else { lo + h };
            acc = acc + self.integrate(lo, hi, &mut f)?;
        }
        Ok(acc)
    }
}

/// Free-function form of [`GaussRule::integrate`].
pub fn integrate<T, F>(f: F, a: f64, b: f64, rule: &GaussRule) -> Result<T>
where
    T: Integrand,
    F: FnMut(f64) -> T,
{
    rule.integrate(a, b, f)
}
