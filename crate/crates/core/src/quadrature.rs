//! Gauss–Legendre rules: fixed panels and adaptive bisection.

use alloc::vec::Vec;
use core::f64::consts::PI;
use core::ops::{Add, Mul};

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

/// Values that can be integrated: real or complex scalars.
pub trait Integrand: Copy + Default + Add<Output = Self> + Mul<f64, Output = Self> {
    fn magnitude(&self) -> f64;
}

impl Integrand for f64 {
    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl Integrand for Complex64 {
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

/// `n`-point Gauss–Legendre rule on `[-1, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Nodes from Newton iteration on `P_n`, started at the Tricomi guesses.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "need at least one node");
        let mut nodes = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        let nf = n as f64;
        for i in 0..n {
            let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            if d != 0.0 {
                dp = d;
            }
            nodes.push(x);
            weights.push(2.0 / ((1.0 - x * x) * dp * dp));
        }
        GaussLegendre { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Nodes and weights mapped to `[a, b]`.
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes.iter().zip(&self.weights).map(move |(&x, &w)| (mid + half * x, half * w))
    }

    pub fn integrate<T: Integrand, F: FnMut(f64) -> T>(&self, mut f: F, a: f64, b: f64) -> T {
        let mut acc = T::default();
        for (x, w) in self.mapped(a, b) {
            acc = acc + f(x) * w;
        }
        acc
    }

    /// Composite rule over `panels` equal sub-intervals.
    pub fn integrate_panels<T: Integrand, F: FnMut(f64) -> T>(&self, mut f: F, a: f64, b: f64, panels: usize) -> T {
        let panels = panels.max(1);
        let h = (b - a) / panels as f64;
        let mut acc = T::default();
        for p in 0..panels {
            let lo = a + p as f64 * h;
            acc = acc + self.integrate(&mut f, lo, lo + h);
        }
        acc
    }

    /// Composite rule over consecutive breakpoints (must be sorted).
    pub fn integrate_breaks<T: Integrand, F: FnMut(f64) -> T>(&self, mut f: F, breaks: &[f64]) -> T {
        let mut acc = T::default();
        for w in breaks.windows(2) {
            if w[1] > w[0] {
                acc = acc + self.integrate(&mut f, w[0], w[1]);
            }
        }
        acc
    }
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
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

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AdaptiveResult<T> {
    pub value: T,
    pub error_estimate: f64,
    pub evaluations: usize,
    pub converged: bool,
}

/// Adaptive bisection: a panel is accepted when the rule on the whole panel
/// and on its two halves agree to `abs_tol + rel_tol·|value|`.
pub fn adaptive<T: Integrand, F: FnMut(f64) -> T>(
    rule: &GaussLegendre,
    mut f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
    max_depth: u32,
) -> AdaptiveResult<T> {
    let mut evaluations = 0;
    let whole = rule.integrate(&mut f, a, b);
    evaluations += rule.len();
    // explicit stack of (lo, hi, estimate, depth)
    let mut stack: Vec<(f64, f64, T, u32)> = alloc::vec![(a, b, whole, 0)];
    let mut value = T::default();
    let mut error = 0.0;
    let mut converged = true;
    let scale = whole.magnitude();
    while let Some((lo, hi, est, depth)) = stack.pop() {
        let mid = 0.5 * (lo + hi);
        let left = rule.integrate(&mut f, lo, mid);
        let right = rule.integrate(&mut f, mid, hi);
        evaluations += 2 * rule.len();
        let refined = left + right;
        let diff = (refined + est * -1.0).magnitude();
        let width_share = (hi - lo) / (b - a).abs().max(f64::MIN_POSITIVE);
        let tol = (abs_tol + rel_tol * scale) * width_share.max(1e-6);
        if diff <= tol || depth >= max_depth {
            if diff > tol {
                converged = false;
            }
            value = value + refined;
            error += diff;
        } else {
            stack.push((lo, mid, left, depth + 1));
            stack.push((mid, hi, right, depth + 1));
        }
    }
    AdaptiveResult { value, error_estimate: error, evaluations, converged }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_weights_sum_to_two() {
        for n in [1, 2, 5, 16, 64] {
            let r = GaussLegendre::new(n);
            let s: f64 = r.weights().iter().sum();
            assert!((s - 2.0).abs() < 1e-13, "n = {n}: {s}");
        }
    }

    #[test]
    fn exact_for_polynomials() {
        let r = GaussLegendre::new(8);
        // degree 15 is integrated exactly
        let v = r.integrate(|x| x.powi(14) + x.powi(15), 0.0, 1.0);
        assert!((v - (1.0 / 15.0 + 1.0 / 16.0)).abs() < 1e-14);
    }

    #[test]
    fn gaussian_integral() {
        let r = GaussLegendre::new(64);
        let v = r.integrate_panels(|x: f64| (-x * x).exp(), -8.0, 8.0, 4);
        assert!((v - PI.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn complex_oscillatory() {
        // ∫_0^1 e^{i 20 x} dx = (e^{20i} − 1) / (20 i)
        let r = GaussLegendre::new(32);
        let v: Complex64 = r.integrate_panels(|x| Complex64::new(0.0, 20.0 * x).exp(), 0.0, 1.0, 4);
        let exact = (Complex64::new(0.0, 20.0).exp() - 1.0) / Complex64::new(0.0, 20.0);
        assert!((v - exact).norm() < 1e-13);
    }

    #[test]
    fn adaptive_log_singularity() {
        // ∫_0^1 ln x dx = −1
        let r = GaussLegendre::new(10);
        let res = adaptive(&r, |x: f64| x.ln(), 0.0, 1.0, 1e-12, 1e-12, 60);
        assert!((res.value + 1.0).abs() < 1e-9, "{}", res.value);
    }
}
