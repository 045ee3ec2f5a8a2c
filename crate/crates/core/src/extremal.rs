//! Weighted homogeneous extremal function
//!
//! ```text
//! Ψ_{E,γ}(ζ) = sup { |p(ζ)|^{1/k} : p homogeneous of degree k ≥ 1, |p|^{1/k} ≤ γ on E }
//! ```
//!
//! evaluated by truncating the degree at `K` and solving one linear program per
//! degree. Multiplying `p` by a unit scalar leaves the constraints unchanged, so
//! maximizing `|p(ζ)|` is the same as maximizing `Re p(ζ)`. Each modulus
//! constraint `|p(ω)| ≤ γ(ω)^k` is replaced by `m` half-planes
//! `Re(e^{iθ_l} p(ω)) ≤ γ(ω)^k`, a regular polygon circumscribing the disc.
//! Shrinking the radii by `cos(π/m)` gives the inscribed polygon, whose optimum
//! is exactly `cos(π/m)` times the circumscribed one; the two bracket the
//! second-order-cone value for the sampled set.
//!
//! Reported values are upper-biased by the finite sampling of `E` and by the
//! circumscribed polygon, and lower-biased by the degree truncation. The
//! certified value removes the polygon bias only.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::poly::{enumerate_multiindices, monomial_vector_for, ComplexPoint, HomogeneousPolynomial, MultiIndex, Scaling};
use crate::quadrature::{adaptive, GaussLegendre};
use crate::sampling;
use crate::simplex::{self, LinearProgram, LpError, LpOutcome, SimplexOptions};

#[derive(Clone, Debug, PartialEq)]
pub enum PsiError {
    InvalidConfig(&'static str),
    InvalidSet(&'static str),
    DimensionMismatch {
        expected: usize,
        found: usize,
    },
    /// The degree-`k` program is unbounded: the samples of `E` do not
    /// determine homogeneous polynomials of this degree.
    UnboundedDegree(usize),
    /// Zero-weight equality constraints leave no polynomial with `Re p(ζ) > 0`.
    InfeasibleZeroWeights,
    Solver {
        degree: usize,
        error: LpError,
    },
}

impl fmt::Display for PsiError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PsiError::InvalidConfig(m) => write!(f, "invalid solver configuration: {m}"),
            PsiError::InvalidSet(m) => write!(f, "invalid direction set: {m}"),
            PsiError::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            PsiError::UnboundedDegree(k) => {
                write!(f, "degree-{k} program is unbounded; the sample set does not determine degree-{k} polynomials")
            }
            PsiError::InfeasibleZeroWeights => {
                f.write_str("zero-weight constraints force every polynomial to vanish at the point")
            }
            PsiError::Solver { degree, error } => write!(f, "LP failure at degree {degree}: {error}"),
        }
    }
}

impl core::error::Error for PsiError {}

/// Finite sample of the compact set `E` with weights `γ ≥ 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedDirectionSet {
    dimension: usize,
    points: Vec<ComplexPoint>,
    weights: Vec<f64>,
}

impl WeightedDirectionSet {
    pub fn new(points: Vec<ComplexPoint>, weights: Vec<f64>) -> Result<Self, PsiError> {
        let Some(first) = points.first() else {
            return Err(PsiError::InvalidSet("at least one point is required"));
        };
        let dimension = first.dim();
        if dimension == 0 {
            return Err(PsiError::InvalidSet("points must have at least one coordinate"));
        }
        if points.iter().any(|p| p.dim() != dimension) {
            return Err(PsiError::InvalidSet("points have different dimensions"));
        }
        if weights.len() != points.len() {
            return Err(PsiError::InvalidSet("one weight per point is required"));
        }
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(PsiError::InvalidSet("weights must be finite and non-negative"));
        }
        Ok(WeightedDirectionSet { dimension, points, weights })
    }

    pub fn unweighted(points: Vec<ComplexPoint>) -> Result<Self, PsiError> {
        let w = vec![1.0; points.len()];
        Self::new(points, w)
    }

    /// Real unit directions; rejects vectors whose length differs from one by
    /// more than `1e-12`.
    pub fn from_real_directions(dirs: &[Vec<f64>], weights: Vec<f64>) -> Result<Self, PsiError> {
        for d in dirs {
            let n = d.iter().map(|x| x * x).sum::<f64>().sqrt();
            if (n - 1.0).abs() > 1e-12 {
                return Err(PsiError::InvalidSet("sphere directions must have unit length"));
            }
        }
        Self::new(dirs.iter().map(|d| ComplexPoint::from_real(d)).collect(), weights)
    }

    /// `count` equispaced points of the real unit circle in `C²`, weight one.
    pub fn real_circle(count: usize) -> Self {
        let pts = sampling::circle(count, 0.0).into_iter().map(|p| ComplexPoint::from_real(&p)).collect();
        Self::unweighted(pts).expect("circle samples are valid")
    }

    /// Quasi-uniform points of the unit sphere of `C^n`, weight one.
    pub fn complex_unit_sphere(n: usize, count: usize) -> Self {
        Self::unweighted(sampling::complex_sphere(n, count, 0)).expect("sphere samples are valid")
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[ComplexPoint] {
        &self.points
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Points whose weight is zero; these become equality constraints.
    pub fn zero_flags(&self) -> Vec<bool> {
        self.weights.iter().map(|&w| w == 0.0).collect()
    }

    pub fn max_weight(&self) -> f64 {
        self.weights.iter().copied().fold(0.0, f64::max)
    }

    pub fn with_weights(&self, weights: Vec<f64>) -> Result<Self, PsiError> {
        Self::new(self.points.clone(), weights)
    }

    pub fn scale_weights(&self, c: f64) -> Result<Self, PsiError> {
        self.with_weights(self.weights.iter().map(|w| w * c).collect())
    }

    /// Union of two samples of the same dimension.
    pub fn union(&self, other: &Self) -> Result<Self, PsiError> {
        let mut points = self.points.clone();
        points.extend(other.points.iter().cloned());
        let mut weights = self.weights.clone();
        weights.extend_from_slice(&other.weights);
        Self::new(points, weights)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolverConfig {
    pub max_degree: usize,
    /// Number of half-planes per modulus constraint.
    pub phases: usize,
    /// Number of sample-density doublings allowed in adaptive evaluation.
    pub refinement_limit: usize,
    pub pivot_tol: f64,
    pub feas_tol: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig { max_degree: 8, phases: 16, refinement_limit: 3, pivot_tol: 1e-9, feas_tol: 1e-9 }
    }
}

impl SolverConfig {
    pub fn with_max_degree(mut self, k: usize) -> Self {
        self.max_degree = k;
        self
    }

    pub fn validate(&self) -> Result<(), PsiError> {
        if self.max_degree < 1 {
            return Err(PsiError::InvalidConfig("max degree must be at least 1"));
        }
        if self.phases < 8 {
            return Err(PsiError::InvalidConfig("at least 8 phases are required"));
        }
        if !(self.pivot_tol > 0.0 && self.feas_tol > 0.0) {
            return Err(PsiError::InvalidConfig("tolerances must be positive"));
        }
        Ok(())
    }

    /// `cos(π/m)`: ratio of inscribed to circumscribed polygon radius.
    pub fn polygon_factor(&self) -> f64 {
        (PI / self.phases as f64).cos()
    }

    fn simplex_options(&self) -> SimplexOptions {
        SimplexOptions { pivot_tol: self.pivot_tol, feas_tol: self.feas_tol, ..SimplexOptions::default() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DegreeValue {
    pub degree: usize,
    /// `v_k` from the circumscribed polygon.
    pub value: f64,
    /// `v_k` from the inscribed polygon; a lower bound for the sampled set.
    pub certified: f64,
    pub iterations: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExtremalEvalResult {
    pub per_degree: Vec<DegreeValue>,
    /// `Ψ̂ = max_k v_k`.
    pub value: f64,
    pub best_degree: usize,
    pub certified: f64,
    /// Witness at `best_degree`: feasible for the unrelaxed constraints and
    /// normalized so that `p(ζ)` is real and non-negative.
    pub polynomial: Option<HomogeneousPolynomial>,
}

impl ExtremalEvalResult {
    fn zero(max_degree: usize) -> Self {
        ExtremalEvalResult {
            per_degree: (1..=max_degree).map(|k| DegreeValue { degree: k, value: 0.0, certified: 0.0, iterations: 0 }).collect(),
            value: 0.0,
            best_degree: 1,
            certified: 0.0,
            polynomial: None,
        }
    }

    pub fn degree_value(&self, k: usize) -> Option<&DegreeValue> {
        self.per_degree.iter().find(|d| d.degree == k)
    }
}

/// Constraint rows of one degree, shared by every evaluation point.
#[derive(Clone, Debug)]
struct DegreeProgram {
    degree: usize,
    indices: Vec<MultiIndex>,
    template: LinearProgram,
}

/// Extremal-function evaluator for a fixed set and configuration.
///
/// Constraint matrices are built once per degree; evaluating many points
/// (grids, localizer directions) reuses them. The struct is immutable after
/// construction and can be shared across threads.
#[derive(Clone, Debug)]
pub struct ExtremalSolver {
    set: WeightedDirectionSet,
    cfg: SolverConfig,
    programs: Vec<DegreeProgram>,
}

impl ExtremalSolver {
    pub fn new(set: &WeightedDirectionSet, cfg: &SolverConfig) -> Result<Self, PsiError> {
        cfg.validate()?;
        let programs = (1..=cfg.max_degree).map(|k| build_program(set, cfg, k)).collect();
        Ok(ExtremalSolver { set: set.clone(), cfg: *cfg, programs })
    }

    pub fn set(&self) -> &WeightedDirectionSet {
        &self.set
    }

    pub fn config(&self) -> &SolverConfig {
        &self.cfg
    }

    pub fn eval(&self, zeta: &ComplexPoint) -> Result<ExtremalEvalResult, PsiError> {
        let n = self.set.dimension();
        if zeta.dim() != n {
            return Err(PsiError::DimensionMismatch { expected: n, found: zeta.dim() });
        }
        if zeta.is_zero() {
            return Ok(ExtremalEvalResult::zero(self.cfg.max_degree));
        }
        let (canon, radius) = canonicalize(zeta);
        let shrink = self.cfg.polygon_factor();
        let opts = self.cfg.simplex_options();

        let mut per_degree = Vec::with_capacity(self.programs.len());
        let mut witnesses = Vec::with_capacity(self.programs.len());
        for prog in &self.programs {
            let k = prog.degree;
            let row = monomial_vector_for(&canon, &prog.indices, Scaling::SqrtMultinomial);
            let nm = row.len();
            let mut objective = vec![0.0; 2 * nm];
            for (a, m) in row.iter().enumerate() {
                objective[a] = m.re;
                objective[nm + a] = -m.im;
            }
            let mut lp = prog.template.clone();
            lp.set_objective(objective);
            let sol = match simplex::solve(&lp, &opts) {
                Ok(LpOutcome::Optimal(s)) => s,
                Ok(LpOutcome::Unbounded) => return Err(PsiError::UnboundedDegree(k)),
                Ok(LpOutcome::Infeasible) => return Err(PsiError::Solver { degree: k, error: LpError::SingularBasis }),
                Err(error) => return Err(PsiError::Solver { degree: k, error }),
            };
            let opt = sol.value.max(0.0);
            let kf = k as f64;
            per_degree.push(DegreeValue {
                degree: k,
                value: opt.powf(1.0 / kf) * radius,
                certified: (shrink * opt).powf(1.0 / kf) * radius,
                iterations: sol.iterations,
            });
            witnesses.push((sol.x, nm));
        }

        let has_zero = self.set.weights().contains(&0.0);
        if has_zero && per_degree.iter().all(|d| d.value <= 1e-14 * radius) {
            return Err(PsiError::InfeasibleZeroWeights);
        }

        let (best_idx, best) =
            per_degree
                .iter()
                .enumerate()
                .fold((0, per_degree[0]), |acc, (i, d)| if d.value > acc.1.value { (i, *d) } else { acc });
        let certified = per_degree.iter().map(|d| d.certified).fold(0.0, f64::max);

        let polynomial = if best.value > 0.0 {
            let (x, nm) = &witnesses[best_idx];
            let k = self.programs[best_idx].degree;
            // inscribed witness, rotated so that p(ζ) ≥ 0 at the original point
            let coeffs: Vec<Complex64> = (0..*nm).map(|a| Complex64::new(x[a], x[nm + a]) * shrink).collect();
            HomogeneousPolynomial::from_scaled_coefficients(n, k, coeffs, Scaling::SqrtMultinomial).ok().map(|p| {
                let pz = p.eval(zeta).unwrap_or_default();
                if pz.norm() > 0.0 {
                    p.scale(pz.conj() / pz.norm())
                } else {
                    p
                }
            })
        } else {
            None
        };

        Ok(ExtremalEvalResult { per_degree, value: best.value, best_degree: best.degree, certified, polynomial })
    }
}

/// Variables are the real and imaginary parts of the coefficients in the
/// `√multinomial` basis, which keeps the constraint rows of similar size.
fn build_program(set: &WeightedDirectionSet, cfg: &SolverConfig, k: usize) -> DegreeProgram {
    let indices = enumerate_multiindices(set.dimension(), k);
    let nm = indices.len();
    let mut lp = LinearProgram::new(vec![0.0; 2 * nm]);
    let phases: Vec<(f64, f64)> = (0..cfg.phases)
        .map(|l| {
            let t = 2.0 * PI * l as f64 / cfg.phases as f64;
            (t.cos(), t.sin())
        })
        .collect();
    let mut row = vec![0.0; 2 * nm];
    for (omega, &w) in set.points().iter().zip(set.weights()) {
        let mono = monomial_vector_for(omega, &indices, Scaling::SqrtMultinomial);
        if w == 0.0 {
            // Re p(ω) = 0 and Im p(ω) = 0
            for (a, m) in mono.iter().enumerate() {
                row[a] = m.re;
                row[nm + a] = -m.im;
            }
            lp.add_eq(&row, 0.0);
            for (a, m) in mono.iter().enumerate() {
                row[a] = m.im;
                row[nm + a] = m.re;
            }
            lp.add_eq(&row, 0.0);
            continue;
        }
        let bound = w.powi(k as i32);
        for &(c, s) in &phases {
            // Re(e^{iθ} p(ω)) = cos θ · Re p(ω) − sin θ · Im p(ω)
            for (a, m) in mono.iter().enumerate() {
                row[a] = c * m.re - s * m.im;
                row[nm + a] = -c * m.im - s * m.re;
            }
            lp.add_le(&row, bound);
        }
    }
    DegreeProgram { degree: k, indices, template: lp }
}

/// `ζ = radius · e^{iφ} · canon` with `|canon| = 1` and the largest-modulus
/// coordinate of `canon` real and positive. `Ψ̂(tζ) = |t| Ψ̂(ζ)` then holds
/// exactly, because `tζ` has the same canonical representative.
fn canonicalize(zeta: &ComplexPoint) -> (ComplexPoint, f64) {
    let radius = zeta.norm();
    let max_mod = zeta.coords().iter().map(|c| c.norm()).fold(0.0, f64::max);
    let lead = zeta.coords().iter().find(|c| c.norm() >= max_mod * (1.0 - 1e-9)).copied().unwrap_or(Complex64::new(1.0, 0.0));
    let phase = lead.arg();
    let rot = Complex64::from_polar(1.0 / radius, -phase);
    (zeta.scale(rot), radius)
}

/// One-shot evaluation of `Ψ̂_{E,γ}(ζ)`.
pub fn psi_eval(set: &WeightedDirectionSet, zeta: &ComplexPoint, cfg: &SolverConfig) -> Result<ExtremalEvalResult, PsiError> {
    if zeta.dim() != set.dimension() {
        return Err(PsiError::DimensionMismatch { expected: set.dimension(), found: zeta.dim() });
    }
    ExtremalSolver::new(set, cfg)?.eval(zeta)
}

/// Elementwise evaluation; failures are kept per point.
pub fn psi_grid(
    set: &WeightedDirectionSet,
    grid: &[ComplexPoint],
    cfg: &SolverConfig,
) -> Result<Vec<Result<ExtremalEvalResult, PsiError>>, PsiError> {
    let solver = ExtremalSolver::new(set, cfg)?;
    Ok(grid.iter().map(|z| solver.eval(z)).collect())
}

#[derive(Clone, Debug, PartialEq)]
pub struct AdaptiveEval {
    pub result: ExtremalEvalResult,
    pub sample_count: usize,
    pub refinements: usize,
    /// Whether the last doubling changed `Ψ̂` by less than the target.
    pub converged: bool,
}

/// Relative change in `Ψ̂` below which refinement stops.
pub const REFINEMENT_TARGET: f64 = 0.005;

/// Doubles the sample density of `E` (regenerated by `sampler`) until `Ψ̂`
/// moves by less than 0.5% or `cfg.refinement_limit` doublings have been made.
pub fn psi_eval_adaptive<S>(
    sampler: S,
    initial_count: usize,
    zeta: &ComplexPoint,
    cfg: &SolverConfig,
) -> Result<AdaptiveEval, PsiError>
where
    S: Fn(usize) -> WeightedDirectionSet,
{
    let mut count = initial_count.max(1);
    let mut result = psi_eval(&sampler(count), zeta, cfg)?;
    for r in 0..cfg.refinement_limit {
        count *= 2;
        let next = psi_eval(&sampler(count), zeta, cfg)?;
        let change = (next.value - result.value).abs() / result.value.abs().max(f64::MIN_POSITIVE);
        result = next;
        if change < REFINEMENT_TARGET {
            return Ok(AdaptiveEval { result, sample_count: count, refinements: r + 1, converged: true });
        }
    }
    let refinements = cfg.refinement_limit;
    Ok(AdaptiveEval { result, sample_count: count, refinements, converged: refinements == 0 })
}

/// Largest `|p(ω)| / γ(ω)^k` over a (typically denser) validation sample.
/// Zero-weight points contribute `|p(ω)|` itself.
pub fn constraint_violation(set: &WeightedDirectionSet, p: &HomogeneousPolynomial) -> Result<f64, PsiError> {
    let k = p.degree() as i32;
    let mut worst: f64 = 0.0;
    for (omega, &w) in set.points().iter().zip(set.weights()) {
        let v = p.eval(omega).map_err(|_| PsiError::DimensionMismatch { expected: p.dimension(), found: omega.dim() })?.norm();
        let ratio = if w == 0.0 { v } else { v / w.powi(k) };
        worst = worst.max(ratio);
    }
    Ok(worst)
}

#[derive(Clone, Debug, PartialEq)]
pub struct CapacityEstimate {
    /// `1 / sup Ψ̂` over the sphere samples; zero when `zero_flag` is set.
    pub capacity: f64,
    pub zero_flag: bool,
    pub sup_psi: f64,
    pub maximizer: Option<ComplexPoint>,
    pub samples: usize,
    /// Solver failure that triggered the zero flag, if any.
    pub diagnostic: Option<PsiError>,
}

/// Homogeneous capacity with respect to the Euclidean norm of `C^n`,
/// estimated from `sphere_samples` quasi-uniform points of the unit sphere.
pub fn capacity_homog(
    set: &WeightedDirectionSet,
    cfg: &SolverConfig,
    sphere_samples: usize,
) -> Result<CapacityEstimate, PsiError> {
    if set.weights().iter().any(|&w| w != 1.0) {
        return Err(PsiError::InvalidSet("capacity is defined for unit weights"));
    }
    let solver = ExtremalSolver::new(set, cfg)?;
    let mut sup = 0.0;
    let mut maximizer = None;
    for z in sampling::complex_sphere(set.dimension(), sphere_samples, 0) {
        match solver.eval(&z) {
            Ok(r) => {
                if r.value > sup {
                    sup = r.value;
                    maximizer = Some(z);
                }
            }
            Err(e @ PsiError::UnboundedDegree(_)) => {
                return Ok(CapacityEstimate {
                    capacity: 0.0,
                    zero_flag: true,
                    sup_psi: f64::INFINITY,
                    maximizer: Some(z),
                    samples: sphere_samples,
                    diagnostic: Some(e),
                })
            }
            Err(e) => return Err(e),
        }
    }
    Ok(CapacityEstimate {
        capacity: if sup > 0.0 { 1.0 / sup } else { 0.0 },
        zero_flag: sup <= 0.0,
        sup_psi: sup,
        maximizer,
        samples: sphere_samples,
        diagnostic: None,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HullMembership {
    pub inside: bool,
    /// `1 − Ψ̂(z)`.
    pub margin: f64,
    pub psi: f64,
}

/// Membership of `z` in the homogeneous hull `{Ψ̂ < 1}`.
pub fn hull_member(set: &WeightedDirectionSet, z: &ComplexPoint, cfg: &SolverConfig) -> Result<HullMembership, PsiError> {
    let r = psi_eval(set, z, cfg)?;
    Ok(HullMembership { inside: r.value < 1.0, margin: 1.0 - r.value, psi: r.value })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureConfig {
    pub nodes: usize,
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_depth: u32,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig { nodes: 20, abs_tol: 1e-12, rel_tol: 1e-11, max_depth: 40 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum BaranError {
    DimensionMismatch(usize),
    NonConvergence { error_estimate: f64 },
    NonFinite,
}

impl fmt::Display for BaranError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaranError::DimensionMismatch(n) => write!(f, "expected a point of C², got dimension {n}"),
            BaranError::NonConvergence { error_estimate } => {
                write!(f, "Poisson integral did not converge (error estimate {error_estimate:e})")
            }
            BaranError::NonFinite => f.write_str("norm evaluator returned a non-finite value"),
        }
    }
}

impl core::error::Error for BaranError {}

/// `Ψ_E` for the unit ball `E` of a norm on `R²`, through the Poisson integral
/// of `u(ξ) = log‖(1, ξ)‖` over the real line.
///
/// The logarithmic growth of `u` is split off as `½ log(1 + ξ²)`, whose
/// Poisson integral is `½ log(x² + (|y| + 1)²)` in closed form at `w = x + iy`.
/// The bounded remainder is integrated in the angle variable
/// `ξ = x + |y| tan φ`, where the kernel becomes `dφ/π`. The roles of the
/// coordinates are swapped when `|z₂| > |z₁|`, which also covers `z₁ = 0`.
pub fn baran_psi<N>(norm: N, z: &ComplexPoint, quad: &QuadratureConfig) -> Result<f64, BaranError>
where
    N: Fn(&[f64]) -> f64,
{
    if z.dim() != 2 {
        return Err(BaranError::DimensionMismatch(z.dim()));
    }
    let (z1, z2) = (z.coords()[0], z.coords()[1]);
    if z1.norm() == 0.0 && z2.norm() == 0.0 {
        return Ok(0.0);
    }
    let swapped = z2.norm() > z1.norm();
    let (lead, w) = if swapped { (z2, z1 / z2) } else { (z1, z2 / z1) };
    let eval = |a: f64, b: f64| -> f64 {
        if swapped {
            norm(&[b, a])
        } else {
            norm(&[a, b])
        }
    };

    let (x, y) = (w.re, w.im.abs());
    if y <= 1e-14 * (1.0 + x.abs()) {
        let v = eval(1.0, x);
        return if v.is_finite() { Ok(lead.norm() * v) } else { Err(BaranError::NonFinite) };
    }

    // r(ξ) = log‖(1, ξ)‖ − ½ log(1 + ξ²), written to stay finite as |ξ| → ∞
    let remainder = |xi: f64| -> f64 {
        if xi.abs() <= 1.0 {
            eval(1.0, xi).ln() - 0.5 * (1.0 + xi * xi).ln()
        } else {
            let inv = 1.0 / xi;
            eval(inv.abs(), xi.signum()).ln() - 0.5 * (1.0 + inv * inv).ln()
        }
    };
    let rule = GaussLegendre::new(quad.nodes.max(2));
    let res =
        adaptive(&rule, |phi: f64| remainder(x + y * phi.tan()), -PI / 2.0, PI / 2.0, quad.abs_tol, quad.rel_tol, quad.max_depth);
    if !res.value.is_finite() {
        return Err(BaranError::NonFinite);
    }
    if !res.converged {
        return Err(BaranError::NonConvergence { error_estimate: res.error_estimate });
    }
    let poisson = 0.5 * (x * x + (y + 1.0) * (y + 1.0)).ln() + res.value / PI;
    Ok(lead.norm() * poisson.exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::norms::cross_norm_euclidean;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn circle_isotropic_point() {
        let e = WeightedDirectionSet::real_circle(256);
        let cfg = SolverConfig { max_degree: 1, ..SolverConfig::default() };
        let z = ComplexPoint::new(vec![c(1.0, 0.0), c(0.0, 1.0)]);
        let r = psi_eval(&e, &z, &cfg).unwrap();
        assert!(r.value >= 2.0 - 1e-6, "{}", r.value);
        assert!(r.value <= 2.0 / cfg.polygon_factor() + 1e-6);
        assert!(r.certified <= 2.0 + 1e-9);
    }

    #[test]
    fn single_point_is_unbounded() {
        let e = WeightedDirectionSet::unweighted(vec![ComplexPoint::from_real(&[1.0, 0.0])]).unwrap();
        let z = ComplexPoint::from_real(&[0.0, 1.0]);
        assert_eq!(psi_eval(&e, &z, &SolverConfig::default()), Err(PsiError::UnboundedDegree(1)));
    }

    #[test]
    fn zero_point_is_zero() {
        let e = WeightedDirectionSet::real_circle(32);
        let r = psi_eval(&e, &ComplexPoint::zeros(2), &SolverConfig::default()).unwrap();
        assert_eq!(r.value, 0.0);
        assert!(r.polynomial.is_none());
    }

    #[test]
    fn witness_is_feasible_and_attains_certified_value() {
        let e = WeightedDirectionSet::real_circle(64);
        let cfg = SolverConfig { max_degree: 3, ..SolverConfig::default() };
        let z = ComplexPoint::new(vec![c(0.4, 0.3), c(-0.2, 1.1)]);
        let r = psi_eval(&e, &z, &cfg).unwrap();
        let p = r.polynomial.clone().unwrap();
        assert!(constraint_violation(&e, &p).unwrap() <= 1.0 + 1e-8);
        let pz = p.eval(&z).unwrap();
        assert!(pz.im.abs() < 1e-9 * pz.norm());
        let k = p.degree() as f64;
        let cert_k = r.degree_value(p.degree()).unwrap().certified;
        // the polygon is only invariant under rotations by 2π/m, so |p(ζ)| may
        // exceed the optimal real part
        assert!(pz.re.powf(1.0 / k) >= cert_k * (1.0 - 1e-8));
        assert!(pz.re.powf(1.0 / k) <= r.degree_value(p.degree()).unwrap().value * (1.0 + 1e-8));
        assert!(r.value >= cross_norm_euclidean(&z) * (1.0 - 1e-9));
    }

    #[test]
    fn dimension_mismatch() {
        let e = WeightedDirectionSet::real_circle(8);
        assert!(matches!(
            psi_eval(&e, &ComplexPoint::from_real(&[1.0, 0.0, 0.0]), &SolverConfig::default()),
            Err(PsiError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn config_validation() {
        let e = WeightedDirectionSet::real_circle(8);
        let z = ComplexPoint::from_real(&[1.0, 0.0]);
        let bad = SolverConfig { phases: 4, ..SolverConfig::default() };
        assert!(matches!(psi_eval(&e, &z, &bad), Err(PsiError::InvalidConfig(_))));
        let bad = SolverConfig { max_degree: 0, ..SolverConfig::default() };
        assert!(matches!(psi_eval(&e, &z, &bad), Err(PsiError::InvalidConfig(_))));
    }

    #[test]
    fn zero_weights_force_vanishing() {
        // all weights zero: only p = 0 is feasible
        let pts = vec![ComplexPoint::from_real(&[1.0, 0.0]), ComplexPoint::from_real(&[0.0, 1.0])];
        let e = WeightedDirectionSet::new(pts, vec![0.0, 0.0]).unwrap();
        let cfg = SolverConfig { max_degree: 1, ..SolverConfig::default() };
        assert_eq!(psi_eval(&e, &ComplexPoint::from_real(&[1.0, 1.0]), &cfg), Err(PsiError::InfeasibleZeroWeights));
    }

    #[test]
    fn grid_examples() {
        let e = WeightedDirectionSet::real_circle(64);
        let cfg = SolverConfig { max_degree: 2, ..SolverConfig::default() };
        let z = ComplexPoint::new(vec![c(0.3, 0.1), c(0.5, -0.7)]);
        let grid = vec![z.clone(), z.scale_real(2.0), z.scale_real(3.0), ComplexPoint::zeros(2)];
        let out = psi_grid(&e, &grid, &cfg).unwrap();
        let v: Vec<f64> = out.iter().map(|r| r.as_ref().unwrap().value).collect();
        assert!((v[1] / v[0] - 2.0).abs() < 1e-8);
        assert!((v[2] / v[0] - 3.0).abs() < 1e-8);
        assert_eq!(v[3], 0.0);
        assert!(psi_grid(&e, &[], &cfg).unwrap().is_empty());
    }

    #[test]
    fn hull_examples() {
        let e = WeightedDirectionSet::real_circle(128);
        let cfg = SolverConfig { max_degree: 2, ..SolverConfig::default() };
        let inside = hull_member(&e, &ComplexPoint::from_real(&[0.5, 0.0]), &cfg).unwrap();
        assert!(inside.inside);
        let out = hull_member(&e, &ComplexPoint::new(vec![c(1.0, 0.0), c(0.0, 1.0)]), &cfg).unwrap();
        assert!(!out.inside);
        let origin = hull_member(&e, &ComplexPoint::zeros(2), &cfg).unwrap();
        assert!(origin.inside);
        assert_eq!(origin.margin, 1.0);
    }

    #[test]
    fn poisson_integral_euclidean_closed_form() {
        let euclid = |v: &[f64]| (v[0] * v[0] + v[1] * v[1]).sqrt();
        let q = QuadratureConfig::default();
        for xi in [-3.0, -0.5, 0.0, 0.7, 10.0] {
            let v = baran_psi(euclid, &ComplexPoint::from_real(&[1.0, xi]), &q).unwrap();
            assert!((v - (1.0 + xi * xi).sqrt()).abs() < 1e-12);
        }
        let z = ComplexPoint::new(vec![c(1.0, 0.0), c(0.0, 1.0)]);
        assert!((baran_psi(euclid, &z, &q).unwrap() - 2.0).abs() < 1e-10);
        let z = ComplexPoint::new(vec![c(0.0, 0.0), c(1.0, 0.5)]);
        let v = baran_psi(euclid, &z, &q).unwrap();
        assert!((v - cross_norm_euclidean(&z)).abs() < 1e-10);
    }
}
