//! Growth of entire functions of one variable: Cauchy bounds, order and type
//! from Taylor coefficients, the comparison series, and ray indicators.
//!
//! Coefficients are stored as `log|c_k|`; the comparison coefficients
//! `(eσρ/k)^{k/ρ}` underflow long before the estimators need them.
//!
//! The textbook limsup formulas
//!
//! ```text
//! ρ = limsup k log k / (−log|c_k|),   (eσρ)^{1/ρ} = limsup k^{1/ρ} |c_k|^{1/k}
//! ```
//!
//! converge only like `1 + O(1/log k)` (for `1/k!` the first ratio is still
//! 1.23 at `k = 200`). The estimators therefore fit the Stirling-type model
//!
//! ```text
//! −log|c_k| ≈ A k log k + B k + C log k + D
//! ```
//!
//! on the top half of the available indices and read `ρ = 1/A`,
//! `σ = exp(−Bρ)/(eρ)`. The raw limsup values over the same window are kept
//! in the reports as `naive`.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::E;
use core::fmt;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::linalg::lstsq_min_norm;
use crate::poly::ComplexPoint;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GrowthError {
    InvalidParameter(&'static str),
    /// Too few nonzero coefficients in the estimation window.
    InsufficientData {
        nonzero: usize,
    },
}

impl fmt::Display for GrowthError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GrowthError::InvalidParameter(m) => write!(f, "invalid parameter: {m}"),
            GrowthError::InsufficientData { nonzero } => {
                write!(f, "only {nonzero} nonzero coefficients in the estimation window")
            }
        }
    }
}

impl core::error::Error for GrowthError {}

/// Taylor coefficients `c_0, …, c_K` as `log|c_k|` (`−∞` for zero).
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientSequence {
    log_abs: Vec<f64>,
}

impl CoefficientSequence {
    pub fn from_complex(c: &[Complex64]) -> Self {
        CoefficientSequence { log_abs: c.iter().map(|z| z.norm().ln()).collect() }
    }

    pub fn from_real(c: &[f64]) -> Self {
        CoefficientSequence { log_abs: c.iter().map(|x| x.abs().ln()).collect() }
    }

    /// Entries must be finite or `−∞`.
    pub fn from_log_abs(log_abs: Vec<f64>) -> Result<Self, GrowthError> {
        if log_abs.iter().any(|v| v.is_nan() || *v == f64::INFINITY) {
            return Err(GrowthError::InvalidParameter("log-magnitudes must be finite or -inf"));
        }
        Ok(CoefficientSequence { log_abs })
    }

    /// `c_k = (eσρ/k)^{k/ρ}`, `c_0 = 1`, for `k = 0..=k_max`.
    pub fn comparison(sigma: f64, rho: f64, k_max: usize) -> Self {
        CoefficientSequence { log_abs: (0..=k_max).map(|k| log_cauchy_bound(0.0, sigma, rho, k)).collect() }
    }

    /// `c_k = a^k / k!`, the coefficients of `e^{aw}`.
    pub fn exponential(a: f64, k_max: usize) -> Self {
        let mut log_abs = Vec::with_capacity(k_max + 1);
        let mut acc = 0.0;
        for k in 0..=k_max {
            if k > 0 {
                acc += a.abs().ln() - (k as f64).ln();
            }
            log_abs.push(acc);
        }
        CoefficientSequence { log_abs }
    }

    pub fn k_max(&self) -> usize {
        self.log_abs.len().saturating_sub(1)
    }

    pub fn log_abs(&self) -> &[f64] {
        &self.log_abs
    }

    pub fn is_zero_at(&self, k: usize) -> bool {
        self.log_abs.get(k).is_none_or(|v| *v == f64::NEG_INFINITY)
    }
}

/// `C (eσρ/k)^{k/ρ}` with the value `C` at `k = 0`.
pub fn cauchy_bound(c: f64, sigma: f64, rho: f64, k: usize) -> f64 {
    c * log_cauchy_bound(0.0, sigma, rho, k).exp()
}

/// `log C + (k/ρ) log(eσρ/k)`.
pub fn log_cauchy_bound(log_c: f64, sigma: f64, rho: f64, k: usize) -> f64 {
    if k == 0 {
        return log_c;
    }
    let kf = k as f64;
    log_c + kf / rho * ((E * sigma * rho).ln() - kf.ln())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GrowthFlag {
    Finite,
    /// Coefficients vanish in the estimation window.
    Polynomial,
    /// Coefficients do not decay: infinite order.
    Infinite,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OrderEstimate {
    /// `0` for polynomials, `+∞` for infinite order.
    pub order: f64,
    pub flag: GrowthFlag,
    /// Index range `[lo, hi]` used.
    pub window: (usize, usize),
    pub points: usize,
    /// Max of `k log k / (−log|c_k|)` over the window.
    pub naive: f64,
    /// RMS residual of the regression, in units of `log|c_k|`.
    pub residual: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TypeEstimate {
    pub sigma: f64,
    pub flag: GrowthFlag,
    pub window: (usize, usize),
    pub points: usize,
    /// `L^ρ/(eρ)` with `L` the max of `k^{1/ρ}|c_k|^{1/k}` over the window.
    pub naive: f64,
    pub residual: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GrowthProfile {
    pub order: OrderEstimate,
    pub sigma: TypeEstimate,
}

/// Nonzero indices `k ≥ 1` in the top half `[⌈K/2⌉, K]`.
fn window(c: &CoefficientSequence) -> Result<Option<((usize, usize), Vec<usize>)>, GrowthError> {
    let k_max = c.k_max();
    if k_max < 8 {
        return Err(GrowthError::InvalidParameter("at least 9 coefficients are required"));
    }
    let lo = k_max.div_ceil(2).max(1);
    let ks: Vec<usize> = (lo..=k_max).filter(|&k| !c.is_zero_at(k)).collect();
    if ks.is_empty() {
        return Ok(None);
    }
    if ks.len() < 8 {
        return Err(GrowthError::InsufficientData { nonzero: ks.len() });
    }
    Ok(Some(((lo, k_max), ks)))
}

/// Least squares `y ≈ X β` with columns normalized to unit max; returns `β`
/// and the RMS residual.
fn regress(features: &[Vec<f64>], y: &[f64]) -> (Vec<f64>, f64) {
    let cols = features.len();
    let rows = y.len();
    let scale: Vec<f64> = features.iter().map(|f| f.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(1e-300)).collect();
    let mut a = vec![Complex64::new(0.0, 0.0); rows * cols];
    for (j, f) in features.iter().enumerate() {
        for i in 0..rows {
            a[i * cols + j] = Complex64::new(f[i] / scale[j], 0.0);
        }
    }
    let b: Vec<Complex64> = y.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    let sol = lstsq_min_norm(&a, rows, cols, &b, 1e-13);
    let beta: Vec<f64> = sol.x.iter().zip(&scale).map(|(x, s)| x.re / s).collect();
    let ss: f64 = (0..rows)
        .map(|i| {
            let fit: f64 = (0..cols).map(|j| features[j][i] * beta[j]).sum();
            (y[i] - fit).powi(2)
        })
        .sum();
    (beta, (ss / rows as f64).sqrt())
}

pub fn estimate_order(c: &CoefficientSequence) -> Result<OrderEstimate, GrowthError> {
    let Some((win, ks)) = window(c)? else {
        let lo = c.k_max().div_ceil(2);
        return Ok(OrderEstimate {
            order: 0.0,
            flag: GrowthFlag::Polynomial,
            window: (lo, c.k_max()),
            points: 0,
            naive: 0.0,
            residual: 0.0,
        });
    };
    let y: Vec<f64> = ks.iter().map(|&k| -c.log_abs()[k]).collect();
    let naive = ks.iter().zip(&y).filter(|(_, &v)| v > 0.0).map(|(&k, &v)| k as f64 * (k as f64).ln() / v).fold(0.0, f64::max);
    if y.iter().all(|&v| v <= 0.0) {
        return Ok(OrderEstimate {
            order: f64::INFINITY,
            flag: GrowthFlag::Infinite,
            window: win,
            points: ks.len(),
            naive: f64::INFINITY,
            residual: 0.0,
        });
    }
    let kf: Vec<f64> = ks.iter().map(|&k| k as f64).collect();
    let features = vec![
        kf.iter().map(|k| k * k.ln()).collect::<Vec<_>>(),
        kf.clone(),
        kf.iter().map(|k| k.ln()).collect(),
        vec![1.0; kf.len()],
    ];
    let (beta, residual) = regress(&features, &y);
    let (order, flag) = if beta[0] > 0.0 { (1.0 / beta[0], GrowthFlag::Finite) } else { (f64::INFINITY, GrowthFlag::Infinite) };
    Ok(OrderEstimate { order, flag, window: win, points: ks.len(), naive, residual })
}

/// Type with respect to a given finite order `rho`.
pub fn estimate_type(c: &CoefficientSequence, rho: f64) -> Result<TypeEstimate, GrowthError> {
    if !(rho > 0.0 && rho.is_finite()) {
        return Err(GrowthError::InvalidParameter("order must be positive and finite"));
    }
    let Some((win, ks)) = window(c)? else {
        let lo = c.k_max().div_ceil(2);
        return Ok(TypeEstimate {
            sigma: 0.0,
            flag: GrowthFlag::Polynomial,
            window: (lo, c.k_max()),
            points: 0,
            naive: 0.0,
            residual: 0.0,
        });
    };
    let kf: Vec<f64> = ks.iter().map(|&k| k as f64).collect();
    let l = ks.iter().map(|&k| ((k as f64).ln() / rho + c.log_abs()[k] / k as f64).exp()).fold(0.0, f64::max);
    let naive = l.powf(rho) / (E * rho);
    // −log|c_k| − (k log k)/ρ ≈ B k + C log k + D
    let y: Vec<f64> = ks.iter().zip(&kf).map(|(&k, &x)| -c.log_abs()[k] - x * x.ln() / rho).collect();
    let features = vec![kf.clone(), kf.iter().map(|k| k.ln()).collect(), vec![1.0; kf.len()]];
    let (beta, residual) = regress(&features, &y);
    let sigma = (-beta[0] * rho).exp() / (E * rho);
    let flag = if sigma.is_finite() { GrowthFlag::Finite } else { GrowthFlag::Infinite };
    Ok(TypeEstimate { sigma, flag, window: win, points: ks.len(), naive, residual })
}

/// Order, then type with respect to the estimated order.
pub fn estimate_growth(c: &CoefficientSequence) -> Result<GrowthProfile, GrowthError> {
    let order = estimate_order(c)?;
    let sigma = match order.flag {
        GrowthFlag::Finite => estimate_type(c, order.order)?,
        flag => TypeEstimate {
            sigma: if flag == GrowthFlag::Infinite { f64::INFINITY } else { 0.0 },
            flag,
            window: order.window,
            points: order.points,
            naive: order.naive,
            residual: 0.0,
        },
    };
    Ok(GrowthProfile { order, sigma })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesValue {
    /// `+∞` when the sum overflows `f64`.
    pub value: f64,
    pub log_value: f64,
    pub terms: usize,
    pub overflow: bool,
}

/// `C Σ_k (eσρ/k)^{k/ρ} r^k`, summed in log space until the geometric tail
/// bound from the term ratio falls below `1e-12` of the running sum.
pub fn comparison_series(c: f64, sigma: f64, rho: f64, r: f64) -> Result<SeriesValue, GrowthError> {
    if !(c > 0.0 && sigma > 0.0 && rho > 0.0 && r >= 0.0) {
        return Err(GrowthError::InvalidParameter("C, σ, ρ must be positive and r non-negative"));
    }
    let log_term = |k: usize| log_cauchy_bound(0.0, sigma, rho, k) + if k == 0 { 0.0 } else { k as f64 * r.ln() };
    if r == 0.0 {
        return Ok(SeriesValue { value: c, log_value: c.ln(), terms: 1, overflow: false });
    }
    // running log-sum-exp with a moving reference
    let mut log_ref = 0.0;
    let mut acc = 1.0;
    let mut k = 1usize;
    loop {
        let lt = log_term(k);
        if lt > log_ref {
            acc = acc * (log_ref - lt).exp() + 1.0;
            log_ref = lt;
        } else {
            acc += (lt - log_ref).exp();
        }
        let log_ratio = log_term(k + 1) - lt;
        if log_ratio < 0.0 {
            let q = log_ratio.exp();
            let tail = (lt - log_ref).exp() * q / (1.0 - q);
            if tail < 1e-12 * acc {
                break;
            }
        }
        k += 1;
        if k > 100_000_000 {
            break;
        }
    }
    let log_value = c.ln() + log_ref + acc.ln();
    let value = log_value.exp();
    Ok(SeriesValue { value, log_value, terms: k + 1, overflow: !value.is_finite() })
}

/// Laplace approximation `log Σ ≈ σ r^ρ + ½ log(2π ρ² σ r^ρ)` of the
/// comparison series for large `r` (with `C = 1`).
pub fn comparison_series_asymptotic(sigma: f64, rho: f64, r: f64) -> f64 {
    let s = sigma * r.powf(rho);
    s + 0.5 * (2.0 * core::f64::consts::PI * rho * rho * s).ln()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RayGrid {
    pub t_max: f64,
    pub samples: usize,
}

impl Default for RayGrid {
    fn default() -> Self {
        RayGrid { t_max: 400.0, samples: 32 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IndicatorEstimate {
    /// `−∞` when `f` vanishes at every sample.
    pub value: f64,
    /// RMS residual of the fit relative to the spread of `log|f|`.
    pub residual: f64,
    pub t_max: f64,
    /// The grid was shrunk because the evaluator overflowed.
    pub shrunk: bool,
    pub vanishing: bool,
}

/// Estimates `limsup_{t→∞} t^{−ρ} log|f(tζ)|` as the least-squares slope of
/// `log|f(tζ)|` against `t^ρ` over the top decade `[t_max/10, t_max]`.
///
/// `log_abs_f` returns `log|f|`; a non-finite value other than `−∞` counts as
/// overflow and halves `t_max` (down to `1e-3` of the original).
pub fn indicator_estimate_log<F>(
    log_abs_f: F,
    zeta: &ComplexPoint,
    rho: f64,
    grid: &RayGrid,
) -> Result<IndicatorEstimate, GrowthError>
where
    F: Fn(&ComplexPoint) -> f64,
{
    if !(rho > 0.0) || !(grid.t_max > 0.0) || grid.samples < 3 {
        return Err(GrowthError::InvalidParameter("need ρ > 0, t_max > 0 and at least 3 samples"));
    }
    let mut t_max = grid.t_max;
    let mut shrunk = false;
    'outer: loop {
        let mut ts = Vec::with_capacity(grid.samples);
        let mut ls = Vec::with_capacity(grid.samples);
        for i in 0..grid.samples {
            let t = t_max * (0.1 + 0.9 * i as f64 / (grid.samples - 1) as f64);
            let v = log_abs_f(&zeta.scale_real(t));
            if v == f64::NEG_INFINITY {
                continue;
            }
            if !v.is_finite() {
                if t_max < grid.t_max * 1e-3 {
                    return Err(GrowthError::InvalidParameter("evaluator overflows on the whole ray"));
                }
                t_max *= 0.5;
                shrunk = true;
                continue 'outer;
            }
            ts.push(t.powf(rho));
            ls.push(v);
        }
        if ts.len() < 2 {
            return Ok(IndicatorEstimate { value: f64::NEG_INFINITY, residual: 0.0, t_max, shrunk, vanishing: true });
        }
        let n = ts.len() as f64;
        let mt = ts.iter().sum::<f64>() / n;
        let ml = ls.iter().sum::<f64>() / n;
        let sxx: f64 = ts.iter().map(|t| (t - mt) * (t - mt)).sum();
        let sxy: f64 = ts.iter().zip(&ls).map(|(t, l)| (t - mt) * (l - ml)).sum();
        let slope = sxy / sxx;
        let ss: f64 = ts.iter().zip(&ls).map(|(t, l)| (l - ml - slope * (t - mt)).powi(2)).sum();
        let spread = ls.iter().map(|l| (l - ml).abs()).fold(0.0, f64::max).max(1.0);
        return Ok(IndicatorEstimate { value: slope, residual: (ss / n).sqrt() / spread, t_max, shrunk, vanishing: false });
    }
}

/// [`indicator_estimate_log`] for an evaluator returning `f` itself.
pub fn indicator_estimate<F>(f: F, zeta: &ComplexPoint, rho: f64, grid: &RayGrid) -> Result<IndicatorEstimate, GrowthError>
where
    F: Fn(&ComplexPoint) -> Complex64,
{
    indicator_estimate_log(|z| f(z).norm().ln(), zeta, rho, grid)
}
