//! Convex support bounds from Radon-support intervals on a set of directions.
//!
//! Given intervals `[a_ω, b_ω]` containing the support of `Ru(ω, ·)` for
//! `ω ∈ E`, the support of `u` lies in
//!
//! ```text
//! { x : ⟨x,θ⟩ ≤ Ψ_{E,σ}(θ) for all real θ },   σ(ω) = max(−a_ω, b_ω)
//! ```
//!
//! and, under regularity hypotheses on `ω ↦ a_ω, b_ω` that finite data cannot
//! check, also in the slabs `a_ω ≤ ⟨x,ω⟩ ≤ b_ω`. Bodies are kept as lists of
//! half-spaces; in the plane the vertex polygon is computed as well.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::entire::{indicator_estimate_log, GrowthError, IndicatorEstimate, RayGrid};
use crate::extremal::{ExtremalSolver, PsiError, SolverConfig, WeightedDirectionSet};
use crate::poly::ComplexPoint;
use crate::radon::{
    detect_support, radon_profile, LineQuadrature, LineTransform, ProfileGrid, RadonError, ScalarFieldDescriptor, SupportInterval,
};
use crate::sampling;
use crate::simplex::{self, LinearProgram, LpOutcome, SimplexOptions};

/// Slack allowed by membership tests.
pub const MEMBERSHIP_SLACK: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub enum LocalizeError {
    InvalidInput(&'static str),
    /// The extremal program is unbounded: `E` looks pluripolar (capacity
    /// zero) and no bound can be produced.
    CapacityZeroSuspicion {
        direction: usize,
        degree: usize,
    },
    Psi(PsiError),
    /// The slabs and half-spaces have empty intersection.
    Infeasible,
    Radon(RadonError),
    Growth(GrowthError),
}

impl fmt::Display for LocalizeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LocalizeError::InvalidInput(m) => write!(f, "invalid input: {m}"),
            LocalizeError::CapacityZeroSuspicion { direction, degree } => write!(
                f,
                "degree-{degree} program unbounded at grid direction {direction}; the direction set appears to have zero capacity"
            ),
            LocalizeError::Psi(e) => write!(f, "extremal function: {e}"),
            LocalizeError::Infeasible => f.write_str("support constraints are inconsistent (empty intersection)"),
            LocalizeError::Radon(e) => write!(f, "radon: {e}"),
            LocalizeError::Growth(e) => write!(f, "indicator: {e}"),
        }
    }
}

impl core::error::Error for LocalizeError {}

impl From<RadonError> for LocalizeError {
    fn from(e: RadonError) -> Self {
        LocalizeError::Radon(e)
    }
}

impl From<GrowthError> for LocalizeError {
    fn from(e: GrowthError) -> Self {
        LocalizeError::Growth(e)
    }
}

/// `⟨x, normal⟩ ≤ offset`.
#[derive(Clone, Debug, PartialEq)]
pub struct HalfSpace {
    pub normal: Vec<f64>,
    pub offset: f64,
}

impl HalfSpace {
    pub fn slack(&self, x: &[f64]) -> f64 {
        self.offset - dot(&self.normal, x)
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvexBody {
    dimension: usize,
    halfspaces: Vec<HalfSpace>,
    /// Counterclockwise vertices (plane only).
    polygon: Option<Vec<[f64; 2]>>,
    /// Slab constraints were used, so the body depends on hypotheses the
    /// data cannot verify.
    conditional: bool,
}

impl ConvexBody {
    /// Builds a body; in the plane computes its polygon and fails with
    /// [`LocalizeError::Infeasible`] when it is empty.
    pub fn from_halfspaces(dimension: usize, halfspaces: Vec<HalfSpace>) -> Result<Self, LocalizeError> {
        if halfspaces.is_empty() {
            return Err(LocalizeError::InvalidInput("a body needs at least one half-space"));
        }
        if halfspaces.iter().any(|h| h.normal.len() != dimension || !h.offset.is_finite()) {
            return Err(LocalizeError::InvalidInput("half-spaces must match the dimension and be finite"));
        }
        let polygon = if dimension == 2 {
            Some(polygon_from_halfplanes(&halfspaces).ok_or(LocalizeError::Infeasible)?)
        } else {
            if !feasible(dimension, &halfspaces) {
                return Err(LocalizeError::Infeasible);
            }
            None
        };
        Ok(ConvexBody { dimension, halfspaces, polygon, conditional: false })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn halfspaces(&self) -> &[HalfSpace] {
        &self.halfspaces
    }

    pub fn polygon(&self) -> Option<&[[f64; 2]]> {
        self.polygon.as_deref()
    }

    pub fn is_conditional(&self) -> bool {
        self.conditional
    }

    /// Smallest `offset − ⟨x, normal⟩` over the half-spaces.
    pub fn slack(&self, x: &[f64]) -> f64 {
        self.halfspaces.iter().map(|h| h.slack(x)).fold(f64::INFINITY, f64::min)
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        self.slack(x) >= -MEMBERSHIP_SLACK
    }

    /// `sup_{x ∈ K} ⟨x, θ⟩`: from the polygon in the plane, by LP otherwise.
    pub fn support(&self, theta: &[f64]) -> f64 {
        if let Some(p) = &self.polygon {
            return p.iter().map(|v| v[0] * theta[0] + v[1] * theta[1]).fold(f64::NEG_INFINITY, f64::max);
        }
        let mut lp = LinearProgram::new(theta.to_vec());
        for h in &self.halfspaces {
            lp.add_le(&h.normal, h.offset);
        }
        match simplex::solve(&lp, &SimplexOptions::default()) {
            Ok(LpOutcome::Optimal(s)) => s.value,
            _ => f64::INFINITY,
        }
    }

    /// Every vertex of `self` lies in `other` (plane only; `None` otherwise).
    pub fn vertices_within(&self, other: &ConvexBody, slack: f64) -> Option<bool> {
        let p = self.polygon.as_ref()?;
        Some(p.iter().all(|v| other.slack(v) >= -slack))
    }

    /// Hausdorff distance to the disc `|x − c| ≤ r`, as the largest gap
    /// between support functions over the edge and vertex normals and a
    /// fine angular grid (plane only).
    pub fn hausdorff_to_disc(&self, center: [f64; 2], r: f64) -> Option<f64> {
        let p = self.polygon.as_ref()?;
        let mut dirs: Vec<[f64; 2]> = sampling::circle(4096, 0.0);
        for v in p {
            let d = [v[0] - center[0], v[1] - center[1]];
            let n = (d[0] * d[0] + d[1] * d[1]).sqrt();
            if n > 0.0 {
                dirs.push([d[0] / n, d[1] / n]);
            }
        }
        for h in &self.halfspaces {
            let n = (h.normal[0] * h.normal[0] + h.normal[1] * h.normal[1]).sqrt();
            dirs.push([h.normal[0] / n, h.normal[1] / n]);
        }
        Some(dirs.iter().map(|t| (self.support(t) - (t[0] * center[0] + t[1] * center[1]) - r).abs()).fold(0.0, f64::max))
    }

    /// `c·K` for `c > 0`.
    pub fn scaled(&self, c: f64) -> Result<Self, LocalizeError> {
        let hs = self.halfspaces.iter().map(|h| HalfSpace { normal: h.normal.clone(), offset: h.offset * c }).collect();
        let mut b = Self::from_halfspaces(self.dimension, hs)?;
        b.conditional = self.conditional;
        Ok(b)
    }
}

/// LP feasibility of `{x : ⟨x, n_i⟩ ≤ h_i}`.
fn feasible(dimension: usize, halfspaces: &[HalfSpace]) -> bool {
    let mut lp = LinearProgram::new(vec![0.0; dimension]);
    for h in halfspaces {
        lp.add_le(&h.normal, h.offset);
    }
    matches!(simplex::solve(&lp, &SimplexOptions::default()), Ok(LpOutcome::Optimal(_)))
}

/// Intersection of half-planes clipped to a large box, by sorting boundary
/// lines by angle and sweeping with a deque. `None` when empty or
/// degenerate.
pub fn polygon_from_halfplanes(halfspaces: &[HalfSpace]) -> Option<Vec<[f64; 2]>> {
    // line: point p0, direction d, inside on the left of d
    #[derive(Clone, Copy)]
    struct Line {
        p: [f64; 2],
        d: [f64; 2],
        angle: f64,
        dist: f64,
    }
    let mk = |n: [f64; 2], h: f64| -> Option<Line> {
        let nn = (n[0] * n[0] + n[1] * n[1]).sqrt();
        if nn == 0.0 {
            return None;
        }
        let u = [n[0] / nn, n[1] / nn];
        let dist = h / nn;
        let d = [-u[1], u[0]];
        Some(Line { p: [u[0] * dist, u[1] * dist], d, angle: d[1].atan2(d[0]), dist })
    };
    let scale = halfspaces.iter().map(|h| h.offset.abs()).fold(1.0, f64::max);
    let bound = 1e3 * scale;
    let mut lines = Vec::with_capacity(halfspaces.len() + 4);
    for h in halfspaces {
        match mk([h.normal[0], h.normal[1]], h.offset) {
            Some(l) => lines.push(l),
            None if h.offset < 0.0 => return None,
            None => {}
        }
    }
    for n in [[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]] {
        lines.push(mk(n, bound).expect("box normal"));
    }
    lines.sort_by(|a, b| a.angle.total_cmp(&b.angle).then(a.dist.total_cmp(&b.dist)));
    // keep the most restrictive line among equal angles
    let mut uniq: Vec<Line> = Vec::with_capacity(lines.len());
    for l in lines {
        if let Some(last) = uniq.last() {
            if (l.angle - last.angle).abs() < 1e-12 {
                continue;
            }
        }
        uniq.push(l);
    }

    let cross = |a: [f64; 2], b: [f64; 2]| a[0] * b[1] - a[1] * b[0];
    let outside = |l: &Line, q: [f64; 2]| cross(l.d, [q[0] - l.p[0], q[1] - l.p[1]]) < -1e-12 * (1.0 + bound);
    let meet = |a: &Line, b: &Line| -> Option<[f64; 2]> {
        let den = cross(a.d, b.d);
        if den.abs() < 1e-15 {
            return None;
        }
        let t = cross([b.p[0] - a.p[0], b.p[1] - a.p[1]], b.d) / den;
        Some([a.p[0] + t * a.d[0], a.p[1] + t * a.d[1]])
    };

    let mut dq: alloc::collections::VecDeque<Line> = alloc::collections::VecDeque::new();
    let mut pts: alloc::collections::VecDeque<[f64; 2]> = alloc::collections::VecDeque::new();
    for l in uniq {
        while !pts.is_empty() && outside(&l, *pts.back().unwrap()) {
            pts.pop_back();
            dq.pop_back();
        }
        while !pts.is_empty() && outside(&l, *pts.front().unwrap()) {
            pts.pop_front();
            dq.pop_front();
        }
        if let Some(last) = dq.back() {
            if cross(last.d, l.d) <= 0.0 {
                // turning clockwise or antiparallel: region is empty or unbounded
                return None;
            }
            pts.push_back(meet(last, &l)?);
        }
        dq.push_back(l);
    }
    while pts.len() > 1 && outside(dq.front().unwrap(), *pts.back().unwrap()) {
        pts.pop_back();
        dq.pop_back();
    }
    if dq.len() < 3 {
        return None;
    }
    pts.push_back(meet(dq.back().unwrap(), dq.front().unwrap())?);
    let mut poly: Vec<[f64; 2]> = pts.into_iter().collect();
    poly.dedup_by(|a, b| (a[0] - b[0]).abs() < 1e-12 && (a[1] - b[1]).abs() < 1e-12);
    if poly.len() >= 2 {
        let (f, l) = (poly[0], poly[poly.len() - 1]);
        if (f[0] - l[0]).abs() < 1e-12 && (f[1] - l[1]).abs() < 1e-12 {
            poly.pop();
        }
    }
    if poly.len() < 3 {
        return None;
    }
    // reject a body that is infeasible: the sweep can leave points violating
    // constraints when the intersection is empty
    let tol = 1e-9 * (1.0 + bound);
    for h in halfspaces {
        if poly.iter().any(|v| h.slack(v) < -tol) {
            return None;
        }
    }
    Some(poly)
}

/// Directions `ω ∈ E` with their support intervals.
#[derive(Clone, Debug, PartialEq)]
pub struct DirectionalIntervalData {
    directions: Vec<Vec<f64>>,
    intervals: Vec<(f64, f64)>,
}

impl DirectionalIntervalData {
    pub fn new(directions: Vec<Vec<f64>>, intervals: Vec<(f64, f64)>) -> Result<Self, LocalizeError> {
        let Some(first) = directions.first() else {
            return Err(LocalizeError::InvalidInput("at least one direction is required"));
        };
        let n = first.len();
        if directions.len() != intervals.len() {
            return Err(LocalizeError::InvalidInput("one interval per direction is required"));
        }
        for d in &directions {
            if d.len() != n || (dot(d, d).sqrt() - 1.0).abs() > 1e-12 {
                return Err(LocalizeError::InvalidInput("directions must be unit vectors of one dimension"));
            }
        }
        if intervals.iter().any(|(a, b)| !(a.is_finite() && b.is_finite() && a <= b)) {
            return Err(LocalizeError::InvalidInput("intervals must be finite with a ≤ b"));
        }
        Ok(DirectionalIntervalData { directions, intervals })
    }

    pub fn from_supports(directions: Vec<Vec<f64>>, supports: &[SupportInterval]) -> Result<Self, LocalizeError> {
        Self::new(directions, supports.iter().map(|s| (s.a, s.b)).collect())
    }

    pub fn dimension(&self) -> usize {
        self.directions[0].len()
    }

    pub fn directions(&self) -> &[Vec<f64>] {
        &self.directions
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }

    /// `σ(ω) = max(−a_ω, b_ω)`, clamped at zero.
    pub fn sigma(&self) -> Vec<f64> {
        self.intervals.iter().map(|&(a, b)| (-a).max(b).max(0.0)).collect()
    }
}

/// Weighted set with `γ = σ` (exponential type, `ρ = 1`).
pub fn build_sigma(data: &DirectionalIntervalData) -> Result<WeightedDirectionSet, LocalizeError> {
    let points = data.directions().iter().map(|d| ComplexPoint::from_real(d)).collect();
    WeightedDirectionSet::new(points, data.sigma()).map_err(LocalizeError::Psi)
}

/// Default grid: 256 directions in the plane, 2048 on `S²`.
pub fn default_grid(n: usize) -> Vec<Vec<f64>> {
    sampling::real_sphere(n, if n == 2 { 256 } else { 2048 })
}

fn map_psi(e: PsiError, direction: usize) -> LocalizeError {
    match e {
        PsiError::UnboundedDegree(degree) => LocalizeError::CapacityZeroSuspicion { direction, degree },
        other => LocalizeError::Psi(other),
    }
}

/// `Ψ̂_{E,σ}(θ)` for grid direction number `index`.
pub fn support_offset(solver: &ExtremalSolver, index: usize, theta: &[f64]) -> Result<f64, LocalizeError> {
    solver.eval(&ComplexPoint::from_real(theta)).map(|r| r.value).map_err(|e| map_psi(e, index))
}

/// Offsets `Ψ̂_{E,σ}(θ)` for each grid direction.
pub fn support_offsets(solver: &ExtremalSolver, grid: &[Vec<f64>]) -> Result<Vec<f64>, LocalizeError> {
    grid.iter().enumerate().map(|(i, t)| support_offset(solver, i, t)).collect()
}

/// Body `{⟨x,θ⟩ ≤ Ψ̂_{E,σ}(θ)}` over the grid directions.
pub fn localize(set: &WeightedDirectionSet, grid: &[Vec<f64>], cfg: &SolverConfig) -> Result<ConvexBody, LocalizeError> {
    let solver = ExtremalSolver::new(set, cfg).map_err(|e| map_psi(e, 0))?;
    let offsets = support_offsets(&solver, grid)?;
    body_from_offsets(set.dimension(), grid, &offsets)
}

pub fn body_from_offsets(n: usize, grid: &[Vec<f64>], offsets: &[f64]) -> Result<ConvexBody, LocalizeError> {
    if grid.is_empty() || grid.len() != offsets.len() {
        return Err(LocalizeError::InvalidInput("one offset per grid direction is required"));
    }
    let hs = grid.iter().zip(offsets).map(|(t, &h)| HalfSpace { normal: t.clone(), offset: h }).collect();
    ConvexBody::from_halfspaces(n, hs)
}

/// Adds the slabs `a_ω ≤ ⟨x,ω⟩ ≤ b_ω` to a localized body.
pub fn refine(body: &ConvexBody, data: &DirectionalIntervalData) -> Result<ConvexBody, LocalizeError> {
    if data.dimension() != body.dimension() {
        return Err(LocalizeError::InvalidInput("data and body dimensions differ"));
    }
    let mut hs = body.halfspaces().to_vec();
    for (d, &(a, b)) in data.directions().iter().zip(data.intervals()) {
        hs.push(HalfSpace { normal: d.clone(), offset: b });
        hs.push(HalfSpace { normal: d.iter().map(|v| -v).collect(), offset: -a });
    }
    let mut out = ConvexBody::from_halfspaces(body.dimension(), hs)?;
    out.conditional = true;
    Ok(out)
}

pub fn localize_refined(
    set: &WeightedDirectionSet,
    data: &DirectionalIntervalData,
    grid: &[Vec<f64>],
    cfg: &SolverConfig,
) -> Result<ConvexBody, LocalizeError> {
    refine(&localize(set, grid, cfg)?, data)
}

pub fn body_contains(body: &ConvexBody, x: &[f64]) -> bool {
    body.contains(x)
}

#[derive(Clone, Debug, PartialEq)]
pub struct PipelineOptions {
    pub threshold: f64,
    pub spacing: f64,
    pub grid: Vec<Vec<f64>>,
    pub support_samples: usize,
    pub solver: SolverConfig,
    pub refine: bool,
}

impl PipelineOptions {
    pub fn new(n: usize) -> Self {
        PipelineOptions {
            threshold: 1e-6,
            spacing: 0.01,
            grid: default_grid(n),
            support_samples: 500,
            solver: SolverConfig::default(),
            refine: true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PipelineStage {
    Radon,
    Support,
    Sigma,
    Localize,
    Refine,
}

impl fmt::Display for PipelineStage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PipelineStage::Radon => "radon",
            PipelineStage::Support => "support",
            PipelineStage::Sigma => "sigma",
            PipelineStage::Localize => "localize",
            PipelineStage::Refine => "refine",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PipelineError {
    pub stage: PipelineStage,
    pub error: LocalizeError,
}

impl fmt::Display for PipelineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "stage {}: {}", self.stage, self.error)
    }
}

impl core::error::Error for PipelineError {}

fn at<T, E: Into<LocalizeError>>(stage: PipelineStage, r: Result<T, E>) -> Result<T, PipelineError> {
    r.map_err(|e| PipelineError { stage, error: e.into() })
}

impl From<PsiError> for LocalizeError {
    fn from(e: PsiError) -> Self {
        map_psi(e, 0)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PipelineReport {
    pub intervals: Vec<SupportInterval>,
    pub sigma: Vec<f64>,
    pub body: ConvexBody,
    pub refined: Option<ConvexBody>,
    pub samples: usize,
    pub contained: usize,
    /// Smallest slack of the support samples in the body.
    pub margin: f64,
    pub refined_contained: Option<usize>,
    /// `(ε, max σ)` for thresholds around the chosen one.
    pub sensitivity: Vec<(f64, f64)>,
}

impl PipelineReport {
    pub fn all_contained(&self) -> bool {
        self.contained == self.samples
    }
}

/// Radon profiles → support intervals → σ → localized (and refined) body,
/// then membership of samples of the field's true support.
pub fn helgason_pipeline(
    field: &ScalarFieldDescriptor,
    directions: &[Vec<f64>],
    opts: &PipelineOptions,
) -> Result<PipelineReport, PipelineError> {
    helgason_pipeline_with(field, directions, opts, support_offsets)
}

/// [`helgason_pipeline`] with a caller-supplied evaluator for the grid
/// offsets, e.g. one that spreads the directions over threads.
pub fn helgason_pipeline_with<F>(
    field: &ScalarFieldDescriptor,
    directions: &[Vec<f64>],
    opts: &PipelineOptions,
    offsets: F,
) -> Result<PipelineReport, PipelineError>
where
    F: Fn(&ExtremalSolver, &[Vec<f64>]) -> Result<Vec<f64>, LocalizeError>,
{
    let pgrid = ProfileGrid::for_field(field, opts.spacing);
    let mut profiles = Vec::with_capacity(directions.len());
    for d in directions {
        profiles.push(at(PipelineStage::Radon, radon_profile(field, d, &pgrid))?);
    }
    let mut intervals = Vec::with_capacity(profiles.len());
    for p in &profiles {
        intervals.push(at(PipelineStage::Support, detect_support(p, opts.threshold))?);
    }
    let sensitivity = [opts.threshold * 1e-2, opts.threshold, (opts.threshold * 1e2).min(0.5)]
        .iter()
        .map(|&eps| {
            let s = profiles.iter().filter_map(|p| detect_support(p, eps).ok()).map(|s| s.sigma()).fold(0.0, f64::max);
            (eps, s)
        })
        .collect();
    let data = at(PipelineStage::Sigma, DirectionalIntervalData::from_supports(directions.to_vec(), &intervals))?;
    let set = at(PipelineStage::Sigma, build_sigma(&data))?;
    let solver = at(PipelineStage::Localize, ExtremalSolver::new(&set, &opts.solver))?;
    let h = at(PipelineStage::Localize, offsets(&solver, &opts.grid))?;
    let body = at(PipelineStage::Localize, body_from_offsets(set.dimension(), &opts.grid, &h))?;
    let refined = if opts.refine { Some(at(PipelineStage::Refine, refine(&body, &data))?) } else { None };

    let samples = field.support_samples(opts.support_samples, 0);
    let contained = samples.iter().filter(|x| body.contains(x)).count();
    let margin = samples.iter().map(|x| body.slack(x)).fold(f64::INFINITY, f64::min);
    let refined_contained = refined.as_ref().map(|r| samples.iter().filter(|x| r.contains(x)).count());
    Ok(PipelineReport {
        sigma: data.sigma(),
        intervals,
        body,
        refined,
        samples: samples.len(),
        contained,
        margin,
        refined_contained,
        sensitivity,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IndicatorSupportReport {
    /// Growth rate of `t ↦ û(itω)`, bounded by `b_ω`.
    pub plus: IndicatorEstimate,
    /// Growth rate of `t ↦ û(−itω)`, bounded by `−a_ω`.
    pub minus: IndicatorEstimate,
    pub a: f64,
    pub b: f64,
    pub plus_ok: bool,
    pub minus_ok: bool,
    pub unreliable: bool,
}

impl IndicatorSupportReport {
    pub fn passed(&self) -> bool {
        self.plus_ok && self.minus_ok
    }
}

/// Compares the growth of the Fourier–Laplace transform along `±iω` with
/// the detected support interval.
pub fn indicator_support_check(
    field: &ScalarFieldDescriptor,
    omega: &[f64],
    interval: &SupportInterval,
    grid: &RayGrid,
    tol: f64,
) -> Result<IndicatorSupportReport, LocalizeError> {
    let lt = LineTransform::new(field, omega, grid.t_max, &LineQuadrature::default())?;
    let eval = |z: &ComplexPoint| lt.log_abs_laplace(z.coords()[0]).unwrap_or(f64::NAN);
    let up = ComplexPoint::new(vec![Complex64::new(0.0, 1.0)]);
    let down = ComplexPoint::new(vec![Complex64::new(0.0, -1.0)]);
    let plus = indicator_estimate_log(eval, &up, 1.0, grid)?;
    let minus = indicator_estimate_log(eval, &down, 1.0, grid)?;
    let scale = 1.0 + interval.a.abs().max(interval.b.abs());
    let plus_ok = plus.vanishing || plus.value <= interval.b + tol * scale;
    let minus_ok = minus.vanishing || minus.value <= -interval.a + tol * scale;
    let limit = crate::extension::INDICATOR_RESIDUAL_LIMIT;
    Ok(IndicatorSupportReport {
        plus,
        minus,
        a: interval.a,
        b: interval.b,
        plus_ok,
        minus_ok,
        unreliable: plus.residual > limit || minus.residual > limit,
    })
}
