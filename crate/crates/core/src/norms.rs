//! Cross norms, the `a + ib` decomposition of complex vectors, and supporting
//! functions of intervals.
//!
//! For the Euclidean norm on `R^n` the largest complex extension has a closed
//! form: with `ζ = e^{iθ}(a + ib)`, `⟨a, b⟩ = 0`, `|b| ≤ |a|`,
//!
//! ```text
//! |ζ|_c = |a| + |b| = (|ζ|² + (|ζ|⁴ − |⟨ζ,ζ⟩|²)^{1/2})^{1/2}.
//! ```

use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::poly::ComplexPoint;

/// `ζ = e^{iθ}(a + ib)` with `⟨a, b⟩ = 0` and `|b| ≤ |a|`.
#[derive(Clone, Debug, PartialEq)]
pub struct ABDecomposition {
    pub theta: f64,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
}

impl ABDecomposition {
    pub fn a_norm(&self) -> f64 {
        euclid(&self.a)
    }

    pub fn b_norm(&self) -> f64 {
        euclid(&self.b)
    }

    pub fn reconstruct(&self) -> ComplexPoint {
        let phase = Complex64::from_polar(1.0, self.theta);
        ComplexPoint::new(self.a.iter().zip(&self.b).map(|(&x, &y)| phase * Complex64::new(x, y)).collect())
    }
}

fn euclid(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn dot(u: &[f64], v: &[f64]) -> f64 {
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

/// `|ξ ∧ η|²` as a sum of squared 2×2 minors, which stays accurate when `ζ`
/// is close to the complexified reals.
fn wedge_sqr(zeta: &ComplexPoint) -> f64 {
    let c = zeta.coords();
    let mut s = 0.0;
    for i in 0..c.len() {
        for j in i + 1..c.len() {
            let m = c[i].re * c[j].im - c[j].re * c[i].im;
            s += m * m;
        }
    }
    s
}

/// Euclidean cross norm, `(|ζ|² + 2|ξ ∧ η|)^{1/2}`.
pub fn cross_norm_euclidean(zeta: &ComplexPoint) -> f64 {
    (zeta.norm_sqr() + 2.0 * wedge_sqr(zeta).sqrt()).sqrt()
}

/// Cross norm from `|ζ|` and `|⟨ζ,ζ⟩|`:
/// `(|ζ|² + (|ζ|⁴ − |⟨ζ,ζ⟩|²)^{1/2})^{1/2}`.
pub fn cross_norm_via_bilinear(zeta: &ComplexPoint) -> f64 {
    let n2 = zeta.norm_sqr();
    let q = zeta.bilinear(zeta).norm();
    let gap = ((n2 - q) * (n2 + q)).max(0.0);
    (n2 + gap.sqrt()).sqrt()
}

/// Cross norm written through the distance to the complexified reals:
/// `(|ζ|² − d²)^{1/2} + d`.
pub fn cross_norm_via_distance(zeta: &ComplexPoint) -> f64 {
    let d = dist_to_complexified_reals(zeta);
    (zeta.norm_sqr() - d * d).max(0.0).sqrt() + d
}

/// Cross norm written through real and imaginary parts:
/// `(|ξ|² + |η|² + 2(|ξ|²|η|² − ⟨ξ,η⟩²)^{1/2})^{1/2}`, with the Gram
/// determinant expanded by the Lagrange identity.
pub fn cross_norm_via_real_parts(zeta: &ComplexPoint) -> f64 {
    let xi = zeta.real_part();
    let eta = zeta.imag_part();
    let mut gram = 0.0;
    for i in 0..xi.len() {
        for j in i + 1..xi.len() {
            let m = xi[i] * eta[j] - xi[j] * eta[i];
            gram += m * m;
        }
    }
    (dot(&xi, &xi) + dot(&eta, &eta) + 2.0 * gram.sqrt()).sqrt()
}

/// Splits `ζ` as `e^{iθ}(a + ib)`; `θ = arg⟨ζ,ζ⟩ / 2`, and `θ = 0` when
/// `⟨ζ,ζ⟩ = 0`.
pub fn ab_decompose(zeta: &ComplexPoint) -> ABDecomposition {
    let q = zeta.bilinear(zeta);
    let theta = if q.re == 0.0 && q.im == 0.0 { 0.0 } else { q.arg() / 2.0 };
    let rot = Complex64::from_polar(1.0, -theta);
    let w: Vec<Complex64> = zeta.coords().iter().map(|z| z * rot).collect();
    ABDecomposition { theta, a: w.iter().map(|z| z.re).collect(), b: w.iter().map(|z| z.im).collect() }
}

/// `d(ζ, C·R^n)`, equal to `|b|` in the decomposition.
pub fn dist_to_complexified_reals(zeta: &ComplexPoint) -> f64 {
    // (|ζ|² − |⟨ζ,ζ⟩|)/2 rewritten without the cancellation
    let n2 = zeta.norm_sqr();
    let q = zeta.bilinear(zeta).norm();
    let s = n2 + q;
    if s == 0.0 {
        return 0.0;
    }
    (2.0 * wedge_sqr(zeta) / s).sqrt()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum NormError {
    EmptyInterval { a: f64, b: f64 },
    NonFinite { theta: f64 },
}

impl fmt::Display for NormError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormError::EmptyInterval { a, b } => write!(f, "interval [{a}, {b}] is empty"),
            NormError::NonFinite { theta } => {
                write!(f, "norm evaluator returned a non-finite value at theta = {theta}")
            }
        }
    }
}

impl core::error::Error for NormError {}

/// Supporting function of the interval `[a, b]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IntervalSupportFn {
    a: f64,
    b: f64,
}

impl IntervalSupportFn {
    pub fn new(a: f64, b: f64) -> Result<Self, NormError> {
        if a <= b {
            Ok(IntervalSupportFn { a, b })
        } else {
            Err(NormError::EmptyInterval { a, b })
        }
    }

    pub fn lower(&self) -> f64 {
        self.a
    }

    pub fn upper(&self) -> f64 {
        self.b
    }

    /// `max(-a, b)`, the exponential type bound of the Fourier–Laplace
    /// transform of anything supported in `[a, b]`.
    pub fn sigma(&self) -> f64 {
        (-self.a).max(self.b)
    }

    pub fn eval(&self, t: f64) -> f64 {
        interval_support(self, t)
    }
}

/// `H(t) = a·t` for `t ≤ 0` and `b·t` for `t ≥ 0`.
pub fn interval_support(h: &IntervalSupportFn, t: f64) -> f64 {
    if t <= 0.0 {
        h.a * t
    } else {
        h.b * t
    }
}

/// Upper bound on a general cross norm from the `e^{iθ}(a + ib)` family.
#[derive(Clone, Debug, PartialEq)]
pub struct CrossNormUpperBound {
    pub value: f64,
    pub theta: f64,
    /// Always `false`: the value is the best two-term decomposition found,
    /// not a certified infimum over all decompositions.
    pub certified_infimum: bool,
}

/// Minimizes `‖a(θ)‖ + ‖b(θ)‖` where `a(θ) + i b(θ) = e^{-iθ}ζ`, over a grid of
/// `theta_steps` phases in `[0, π)` followed by a golden-section polish.
///
/// The Euclidean optimum phase is always among the candidates, so for the
/// Euclidean norm the result matches [`cross_norm_euclidean`].
pub fn cross_norm_general<N>(norm: N, zeta: &ComplexPoint, theta_steps: usize) -> Result<CrossNormUpperBound, NormError>
where
    N: Fn(&[f64]) -> f64,
{
    let n = zeta.dim();
    let mut re = alloc::vec![0.0; n];
    let mut im = alloc::vec![0.0; n];
    let mut objective = |theta: f64| -> Result<f64, NormError> {
        let rot = Complex64::from_polar(1.0, -theta);
        for (j, z) in zeta.coords().iter().enumerate() {
            let w = z * rot;
            re[j] = w.re;
            im[j] = w.im;
        }
        let v = norm(&re) + norm(&im);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(NormError::NonFinite { theta })
        }
    };

    let steps = theta_steps.max(4);
    let h = PI / steps as f64;
    let mut best = (0.0, objective(0.0)?);
    for i in 1..steps {
        let t = i as f64 * h;
        let v = objective(t)?;
        if v < best.1 {
            best = (t, v);
        }
    }
    let euclid_theta = ab_decompose(zeta).theta;
    let v = objective(euclid_theta)?;
    if v < best.1 {
        best = (euclid_theta, v);
    }

    // golden-section search on the bracket around the best grid phase
    let (mut lo, mut hi) = (best.0 - h, best.0 + h);
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let mut f1 = objective(x1)?;
    let mut f2 = objective(x2)?;
    for _ in 0..60 {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = objective(x1)?;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = objective(x2)?;
        }
    }
    for (t, v) in [(x1, f1), (x2, f2)] {
        if v < best.1 {
            best = (t, v);
        }
    }
    Ok(CrossNormUpperBound { value: best.1, theta: best.0, certified_infimum: false })
}
