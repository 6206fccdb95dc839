//! Composite Gauss–Legendre quadrature with panel doubling.

use std::ops::{Add, Mul};
use std::sync::OnceLock;

use num_complex::Complex64 as C64;

use crate::error::{DecoError, Result};

/// Points per panel.
pub const GL_ORDER: usize = 20;

/// Doublings attempted before giving up.
const MAX_DOUBLINGS: usize = 12;

/// Fraction of ∫|f| below which a result is treated as cancellation noise
/// when judging convergence.
const SCALE_FLOOR: f64 = 1e-6;

/// Nodes and weights of an n-point Gauss–Legendre rule on [-1, 1].
#[derive(Clone, Debug)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre order must be positive");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n.div_ceil(2) {
            // Tricomi initial guess, then Newton on P_n.
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            dp = if d != 0.0 { d } else { dp };
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    /// Shared rule of order [`GL_ORDER`].
    pub fn standard() -> &'static Self {
        static RULE: OnceLock<GaussLegendre> = OnceLock::new();
        RULE.get_or_init(|| GaussLegendre::new(GL_ORDER))
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Single-panel rule on [a, b].
    pub fn integrate<T: QuadValue>(&self, a: f64, b: f64, f: impl Fn(f64) -> T) -> T {
        self.panel(a, b, &f).0
    }

    /// Returns (∫f, ∫|f|) over one panel.
    fn panel<T: QuadValue>(&self, a: f64, b: f64, f: &impl Fn(f64) -> T) -> (T, f64) {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut acc = T::zero();
        let mut abs = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            let v = f(mid + half * x);
            acc = acc + v * (w * half);
            abs += v.magnitude() * w * half.abs();
        }
        (acc, abs)
    }

    /// Composite rule with `panels` equal panels on [a, b].
    pub fn composite<T: QuadValue>(&self, a: f64, b: f64, panels: usize, f: impl Fn(f64) -> T) -> (T, f64) {
        let panels = panels.max(1);
        let h = (b - a) / panels as f64;
        let mut acc = T::zero();
        let mut abs = 0.0;
        for k in 0..panels {
            let lo = a + h * k as f64;
            let hi = if k + 1 == panels { b } else { lo + h };
            let (v, s) = self.panel(lo, hi, &f);
            acc = acc + v;
            abs += s;
        }
        (acc, abs)
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Values a quadrature can accumulate.
pub trait QuadValue: Copy + Add<Output = Self> + Mul<f64, Output = Self> {
    fn zero() -> Self;
    fn magnitude(self) -> f64;
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(self) -> f64 {
        self.abs()
    }
}

impl QuadValue for C64 {
    fn zero() -> Self {
        C64::ZERO
    }
    fn magnitude(self) -> f64 {
        self.norm()
    }
}

/// Result of an adaptive integration.
#[derive(Clone, Copy, Debug)]
pub struct Integral<T> {
    pub value: T,
    /// ∫|f| on the final panel set.
    pub abs_integral: f64,
    pub panels: usize,
    /// Relative change between the last two refinements.
    pub achieved: f64,
}

/// Integrates `f` over [a, b], starting from panels of width at most
/// `max_width` and doubling the panel count until two successive results
/// agree to `rel_tol`.
pub fn integrate_adaptive<T: QuadValue>(
    a: f64,
    b: f64,
    max_width: f64,
    rel_tol: f64,
    f: impl Fn(f64) -> T,
) -> Result<Integral<T>> {
    let rule = GaussLegendre::standard();
    let mut panels = (((b - a).abs() / max_width).ceil() as usize).max(2);
    let (mut prev, _) = rule.composite(a, b, panels, &f);
    let mut achieved = f64::INFINITY;
    for _ in 0..MAX_DOUBLINGS {
        panels *= 2;
        let (cur, abs) = rule.composite(a, b, panels, &f);
        let scale = cur.magnitude().max(SCALE_FLOOR * abs);
        let change = (cur + prev * -1.0).magnitude();
        achieved = if scale > 0.0 { change / scale } else { 0.0 };
        if !achieved.is_finite() {
            return Err(DecoError::Numerical("non-finite integrand".into()));
        }
        if achieved <= rel_tol {
            return Ok(Integral {
                value: cur,
                abs_integral: abs,
                panels,
                achieved,
            });
        }
        prev = cur;
    }
    Err(DecoError::Quadrature {
        achieved,
        requested: rel_tol,
    })
}
