//! Entire extension from Taylor data on a union of complex lines.
//!
//! If `f(zω) = Σ_k c_k(ω) z^k` on every line `Cω`, `ω ∈ E`, and each
//! `c_k(·)` is the restriction of a `k`-homogeneous polynomial `P_k`, then
//! `Σ_k P_k` is the extension of `f` to `C^n`. Each `P_k` is recovered by least
//! squares on the monomial system at the sample directions; a residual above
//! tolerance means no such polynomial exists.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{E, SQRT_2};
use core::fmt;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::entire::{indicator_estimate_log, log_cauchy_bound, GrowthError, IndicatorEstimate, RayGrid};
use crate::extremal::{ExtremalSolver, PsiError, SolverConfig, WeightedDirectionSet};
use crate::linalg::lstsq_min_norm;
use crate::poly::{enumerate_multiindices, monomial_vector_for, ComplexPoint, HomogeneousPolynomial, Scaling};

#[derive(Clone, Debug, PartialEq)]
pub enum ExtensionError {
    InvalidData(&'static str),
    /// No degree-`degree` homogeneous polynomial matches the line data.
    IncompatibleData {
        degree: usize,
        residual: f64,
    },
    /// The bound check needs growth data.
    MissingGrowth,
    Psi(PsiError),
    Growth(GrowthError),
}

impl fmt::Display for ExtensionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtensionError::InvalidData(m) => write!(f, "invalid line data: {m}"),
            ExtensionError::IncompatibleData { degree, residual } => write!(
                f,
                "line data at degree {degree} is not the restriction of a homogeneous polynomial (residual {residual:e})"
            ),
            ExtensionError::MissingGrowth => f.write_str("bound check requires growth data (C, rho, sigma)"),
            ExtensionError::Psi(e) => write!(f, "extremal function: {e}"),
            ExtensionError::Growth(e) => write!(f, "growth estimate: {e}"),
        }
    }
}

impl core::error::Error for ExtensionError {}

impl From<PsiError> for ExtensionError {
    fn from(e: PsiError) -> Self {
        ExtensionError::Psi(e)
    }
}

impl From<GrowthError> for ExtensionError {
    fn from(e: GrowthError) -> Self {
        ExtensionError::Growth(e)
    }
}

/// Claimed growth `|f(zω)| ≤ C e^{σ(ω)|z|^ρ}` along each line.
#[derive(Clone, Debug, PartialEq)]
pub struct GrowthClaim {
    pub c: f64,
    pub rho: f64,
    pub sigma: Vec<f64>,
}

impl GrowthClaim {
    pub fn sigma_max(&self) -> f64 {
        self.sigma.iter().copied().fold(0.0, f64::max)
    }

    /// Weights `γ = σ^{1/ρ}`.
    pub fn weights(&self) -> Vec<f64> {
        self.sigma.iter().map(|s| s.powf(1.0 / self.rho)).collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LineSeriesData {
    directions: Vec<ComplexPoint>,
    /// `coefficients[j][k] = c_k(ω_j)`.
    coefficients: Vec<Vec<Complex64>>,
    growth: Option<GrowthClaim>,
}

impl LineSeriesData {
    pub fn new(
        directions: Vec<ComplexPoint>,
        coefficients: Vec<Vec<Complex64>>,
        growth: Option<GrowthClaim>,
    ) -> Result<Self, ExtensionError> {
        let Some(first) = directions.first() else {
            return Err(ExtensionError::InvalidData("at least one direction is required"));
        };
        let n = first.dim();
        if n == 0 || directions.iter().any(|d| d.dim() != n) {
            return Err(ExtensionError::InvalidData("directions must share a positive dimension"));
        }
        if coefficients.len() != directions.len() {
            return Err(ExtensionError::InvalidData("one coefficient row per direction is required"));
        }
        let width = coefficients[0].len();
        if width == 0 || coefficients.iter().any(|row| row.len() != width) {
            return Err(ExtensionError::InvalidData("coefficient table must be rectangular and non-empty"));
        }
        if coefficients.iter().flatten().any(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(ExtensionError::InvalidData("coefficients must be finite"));
        }
        if let Some(g) = &growth {
            if g.sigma.len() != directions.len() {
                return Err(ExtensionError::InvalidData("one sigma value per direction is required"));
            }
            if g.sigma.iter().any(|s| !(s.is_finite() && *s >= 0.0)) {
                return Err(ExtensionError::InvalidData("sigma must be finite and non-negative"));
            }
            if !(g.c > 0.0 && g.rho > 0.0 && g.c.is_finite() && g.rho.is_finite()) {
                return Err(ExtensionError::InvalidData("C and rho must be positive"));
            }
        }
        Ok(LineSeriesData { directions, coefficients, growth })
    }

    /// Taylor data of `e^{⟨a,ζ⟩}` along each direction, with the growth claim
    /// `C = 1`, `ρ = 1`, `σ(ω) = |⟨a,ω⟩|`.
    pub fn exponential(a: &ComplexPoint, directions: Vec<ComplexPoint>, max_degree: usize) -> Result<Self, ExtensionError> {
        let mut coefficients = Vec::with_capacity(directions.len());
        let mut sigma = Vec::with_capacity(directions.len());
        for d in &directions {
            if d.dim() != a.dim() {
                return Err(ExtensionError::InvalidData("direction and exponent dimensions differ"));
            }
            let s = a.bilinear(d);
            let mut row = Vec::with_capacity(max_degree + 1);
            let mut term = Complex64::new(1.0, 0.0);
            for k in 0..=max_degree {
                if k > 0 {
                    term = term * s / k as f64;
                }
                row.push(term);
            }
            coefficients.push(row);
            sigma.push(s.norm());
        }
        Self::new(directions, coefficients, Some(GrowthClaim { c: 1.0, rho: 1.0, sigma }))
    }

    pub fn dimension(&self) -> usize {
        self.directions[0].dim()
    }

    pub fn max_degree(&self) -> usize {
        self.coefficients[0].len() - 1
    }

    pub fn line_count(&self) -> usize {
        self.directions.len()
    }

    pub fn directions(&self) -> &[ComplexPoint] {
        &self.directions
    }

    pub fn coefficients(&self) -> &[Vec<Complex64>] {
        &self.coefficients
    }

    pub fn growth(&self) -> Option<&GrowthClaim> {
        self.growth.as_ref()
    }

    /// Column `k` of the table: `c_k(ω_j)` over all lines.
    pub fn degree_column(&self, k: usize) -> Vec<Complex64> {
        self.coefficients.iter().map(|row| row[k]).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RecoveryOptions {
    /// Maximum relative equation error accepted as compatible.
    pub tol: f64,
    pub scaling: Scaling,
    /// Relative pivot threshold for the rank decision.
    pub rcond: f64,
}

impl Default for RecoveryOptions {
    fn default() -> Self {
        RecoveryOptions { tol: 1e-8, scaling: Scaling::SqrtMultinomial, rcond: 1e-13 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Recovery {
    pub polynomial: HomogeneousPolynomial,
    /// `max_j |P(ω_j) − c_j| / max_j |c_j|` (absolute when all `c_j` vanish).
    pub residual: f64,
    pub rank: usize,
    pub rank_deficient: bool,
}

pub fn recover_homogeneous(
    k: usize,
    directions: &[ComplexPoint],
    values: &[Complex64],
    opts: &RecoveryOptions,
) -> Result<Recovery, ExtensionError> {
    let Some(first) = directions.first() else {
        return Err(ExtensionError::InvalidData("at least one sample is required"));
    };
    if values.len() != directions.len() {
        return Err(ExtensionError::InvalidData("one value per direction is required"));
    }
    let n = first.dim();
    if directions.iter().any(|d| d.dim() != n) {
        return Err(ExtensionError::InvalidData("directions must share a dimension"));
    }
    let indices = enumerate_multiindices(n, k);
    let cols = indices.len();
    let rows = directions.len();
    let mut a = Vec::with_capacity(rows * cols);
    for d in directions {
        a.extend(monomial_vector_for(d, &indices, opts.scaling));
    }
    let sol = lstsq_min_norm(&a, rows, cols, values, opts.rcond);
    let (rank, rank_deficient) = (sol.rank, sol.rank_deficient(cols));
    let polynomial = HomogeneousPolynomial::from_scaled_coefficients(n, k, sol.x, opts.scaling)
        .map_err(|_| ExtensionError::InvalidData("coefficient count mismatch"))?;

    let scale = values.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let mut worst: f64 = 0.0;
    for (d, v) in directions.iter().zip(values) {
        let p = polynomial.eval(d).map_err(|_| ExtensionError::InvalidData("dimension mismatch"))?;
        worst = worst.max((p - v).norm());
    }
    let residual = if scale > 0.0 { worst / scale } else { worst };
    if !(residual <= opts.tol) {
        return Err(ExtensionError::IncompatibleData { degree: k, residual });
    }
    Ok(Recovery { polynomial, residual, rank, rank_deficient })
}

#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedEntireExtension {
    dimension: usize,
    polynomials: Vec<HomogeneousPolynomial>,
    residuals: Vec<f64>,
    rank_deficient: Vec<bool>,
    growth: Option<GrowthClaim>,
}

impl TruncatedEntireExtension {
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn max_degree(&self) -> usize {
        self.polynomials.len() - 1
    }

    pub fn polynomials(&self) -> &[HomogeneousPolynomial] {
        &self.polynomials
    }

    pub fn residuals(&self) -> &[f64] {
        &self.residuals
    }

    pub fn rank_deficient(&self) -> &[bool] {
        &self.rank_deficient
    }

    pub fn growth(&self) -> Option<&GrowthClaim> {
        self.growth.as_ref()
    }

    pub fn is_zero(&self) -> bool {
        self.polynomials.iter().all(|p| p.is_zero())
    }

    /// `Σ_{k ≤ K} P_k(ζ)`; zero on a dimension mismatch.
    pub fn eval(&self, zeta: &ComplexPoint) -> Complex64 {
        self.polynomials.iter().map(|p| p.eval(zeta).unwrap_or_default()).sum()
    }

    /// `Σ_k P_k(tζ) = Σ_k P_k(ζ) t^k` for many `t`, reusing `P_k(ζ)`.
    pub fn ray_values(&self, zeta: &ComplexPoint) -> Vec<Complex64> {
        self.polynomials.iter().map(|p| p.eval(zeta).unwrap_or_default()).collect()
    }
}

/// Recovers `P_0, …, P_K` from the table.
pub fn extend(data: &LineSeriesData, opts: &RecoveryOptions) -> Result<TruncatedEntireExtension, ExtensionError> {
    let kmax = data.max_degree();
    let mut polynomials = Vec::with_capacity(kmax + 1);
    let mut residuals = Vec::with_capacity(kmax + 1);
    let mut rank_deficient = Vec::with_capacity(kmax + 1);
    for k in 0..=kmax {
        let r = recover_homogeneous(k, data.directions(), &data.degree_column(k), opts)?;
        polynomials.push(r.polynomial);
        residuals.push(r.residual);
        rank_deficient.push(r.rank_deficient);
    }
    Ok(TruncatedEntireExtension {
        dimension: data.dimension(),
        polynomials,
        residuals,
        rank_deficient,
        growth: data.growth.clone(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExtensionValue {
    pub value: Complex64,
    /// Bound on `Σ_{k > K} |P_k(ζ)|` from the comparison series, when growth
    /// data and `Ψ̂(ζ)` are available.
    pub tail_bound: Option<f64>,
}

/// `C Σ_{k > K} (eρ/k)^{k/ρ} ψ^k`, summed until the ratio test bounds the rest
/// below `1e-12` of the running total.
pub fn tail_bound(c: f64, rho: f64, psi: f64, max_degree: usize) -> f64 {
    if psi <= 0.0 {
        return 0.0;
    }
    let sigma = psi.powf(rho);
    let log_c = c.ln();
    let lt = |k: usize| log_cauchy_bound(log_c, sigma, rho, k);
    let mut k = max_degree + 1;
    let mut sum = 0.0;
    loop {
        let t = lt(k).exp();
        sum += t;
        let log_ratio = lt(k + 1) - lt(k);
        if log_ratio < 0.0 {
            let q = log_ratio.exp();
            if t * q / (1.0 - q) < 1e-12 * sum.max(f64::MIN_POSITIVE) || sum == f64::INFINITY {
                return sum + t * q / (1.0 - q);
            }
        }
        k += 1;
        if k > max_degree + 10_000_000 {
            return f64::INFINITY;
        }
    }
}

/// Evaluates the extension and, given `Ψ̂(ζ)`, the tail bound of the
/// truncation.
pub fn eval_extension(ext: &TruncatedEntireExtension, zeta: &ComplexPoint, psi: Option<f64>) -> ExtensionValue {
    let value = ext.eval(zeta);
    let tail_bound = match (ext.growth(), psi) {
        (Some(g), Some(p)) => Some(tail_bound(g.c, g.rho, p, ext.max_degree())),
        _ => None,
    };
    ExtensionValue { value, tail_bound }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProbeBound {
    pub probe: ComplexPoint,
    pub degree: usize,
    pub value: f64,
    pub bound: f64,
    /// `1 − |P_k(ζ)| / bound` (`1` when both vanish).
    pub margin: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub entries: Vec<ProbeBound>,
    /// Smallest margin per degree.
    pub degree_margins: Vec<f64>,
    pub min_margin: f64,
}

impl BoundReport {
    pub fn passed(&self) -> bool {
        self.min_margin >= 0.0
    }
}

/// Checks `|P_k(ζ)| ≤ C (eρ/k)^{k/ρ} v_k(ζ)^k` at each probe, with `v_k` the
/// degree-`k` extremal value for `E = {ω_j}` and weights `γ = σ^{1/ρ}`.
///
/// The per-degree value is used instead of the sup over degrees: `P_k` scaled
/// by the Cauchy factor is itself a feasible degree-`k` polynomial, so this is
/// the sharpest bound the samples support.
pub fn bound_check(
    ext: &TruncatedEntireExtension,
    data: &LineSeriesData,
    probes: &[ComplexPoint],
    cfg: &SolverConfig,
) -> Result<BoundReport, ExtensionError> {
    let growth = data.growth().ok_or(ExtensionError::MissingGrowth)?;
    let kmax = ext.max_degree();
    let set = WeightedDirectionSet::new(data.directions().to_vec(), growth.weights())?;
    let solver_cfg = SolverConfig { max_degree: kmax.max(1), ..*cfg };
    let solver = ExtremalSolver::new(&set, &solver_cfg)?;
    let mut entries = Vec::with_capacity(probes.len() * (kmax + 1));
    let mut degree_margins = vec![f64::INFINITY; kmax + 1];
    for z in probes {
        let res = solver.eval(z)?;
        for (k, p) in ext.polynomials().iter().enumerate() {
            let value = p.eval(z).unwrap_or_default().norm();
            let vk = if k == 0 { 1.0 } else { res.degree_value(k).map_or(0.0, |d| d.value) };
            let log_bound = log_cauchy_bound(growth.c.ln(), 1.0, growth.rho, k) + k as f64 * vk.ln();
            let bound = if k == 0 { growth.c } else { log_bound.exp() };
            // a few ulps of slack for rounding in the recovered coefficients
            let margin = if bound > 0.0 {
                1.0 - value / (bound * (1.0 + 8.0 * f64::EPSILON))
            } else if value <= 1e-300 {
                1.0
            } else {
                f64::NEG_INFINITY
            };
            degree_margins[k] = degree_margins[k].min(margin);
            entries.push(ProbeBound { probe: z.clone(), degree: k, value, bound, margin });
        }
    }
    let min_margin = degree_margins.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(BoundReport { entries, degree_margins, min_margin })
}

#[derive(Clone, Debug, PartialEq)]
pub struct RayType {
    pub direction: ComplexPoint,
    pub estimate: IndicatorEstimate,
    /// Residual above the reliability threshold.
    pub unreliable: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TypeBoundReport {
    pub rays: Vec<RayType>,
    pub max_observed: f64,
    /// `√2 σ_m`, the type bound for unit rays.
    pub bound: f64,
    pub t_max: f64,
}

impl TypeBoundReport {
    pub fn passed(&self, rel_tol: f64) -> bool {
        self.max_observed <= self.bound * (1.0 + rel_tol) + 1e-12
    }
}

/// Residual above which an indicator fit is flagged.
pub const INDICATOR_RESIDUAL_LIMIT: f64 = 1e-2;

/// Estimates the exponential type of the extension along each probe ray
/// (normalized to unit length) and compares it with `√2 σ_m`.
///
/// The extension is a truncated series, so the ray is only sampled up to
/// `t_max = K / (2e√2 σ_m)`, where the omitted terms are negligible against
/// the retained ones.
pub fn type_bound_check(
    ext: &TruncatedEntireExtension,
    sigma_max: f64,
    probes: &[ComplexPoint],
    samples: usize,
) -> Result<TypeBoundReport, ExtensionError> {
    if !(sigma_max >= 0.0 && sigma_max.is_finite()) {
        return Err(ExtensionError::InvalidData("sigma_max must be finite and non-negative"));
    }
    let bound = SQRT_2 * sigma_max;
    let kmax = ext.max_degree().max(1) as f64;
    let t_max = if sigma_max > 0.0 { kmax / (2.0 * E * bound) } else { kmax };
    let grid = RayGrid { t_max, samples: samples.max(3) };
    let mut rays = Vec::with_capacity(probes.len());
    let mut max_observed = f64::NEG_INFINITY;
    for z in probes {
        let nz = z.norm();
        if nz == 0.0 {
            return Err(ExtensionError::InvalidData("probe rays must be nonzero"));
        }
        let dir = z.scale_real(1.0 / nz);
        let coeffs = ext.ray_values(&dir);
        let log_abs = |w: &ComplexPoint| {
            // w = t·dir; recover t from the norm
            let t = w.norm();
            let mut acc = Complex64::new(0.0, 0.0);
            for c in coeffs.iter().rev() {
                acc = acc * t + c;
            }
            acc.norm().ln()
        };
        let estimate = indicator_estimate_log(log_abs, &dir, 1.0, &grid)?;
        max_observed = max_observed.max(estimate.value);
        rays.push(RayType { direction: dir, unreliable: estimate.residual > INDICATOR_RESIDUAL_LIMIT, estimate });
    }
    if ext.is_zero() {
        max_observed = 0.0;
    }
    Ok(TypeBoundReport { rays, max_observed, bound, t_max })
}
