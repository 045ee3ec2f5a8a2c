//! Radon transforms of synthetic fields on `R²` and `R³`.
//!
//! Fields are finite sums of radial bumps `A g(|x − c|)`. The hyperplane
//! integral of one component reduces to a one-dimensional integral in the
//! in-plane radius, which Gauss–Legendre handles to near machine precision once
//! the kinks of `g` are used as breakpoints.
//!
//! The Fourier convention is `û(ξ) = ∫ e^{−i⟨x,ξ⟩} u(x) dx`.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::quadrature::GaussLegendre;
use crate::sampling;

/// Field magnitude below which a Gaussian is treated as zero.
pub const GAUSSIAN_CUTOFF: f64 = 1e-12;

/// Largest `|Im z| · max|p|` accepted before `e^{|Im z| p}` could overflow.
pub const EXPONENT_LIMIT: f64 = 700.0;

#[derive(Clone, Debug, PartialEq)]
pub enum RadonError {
    InvalidField(&'static str),
    InvalidDirection,
    InvalidGrid(&'static str),
    InvalidThreshold,
    /// `e^{|Im z|·P}` would overflow.
    Overflow {
        im_z: f64,
        p_max: f64,
    },
    OutOfRange {
        z: f64,
        z_max: f64,
    },
}

impl fmt::Display for RadonError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RadonError::InvalidField(m) => write!(f, "invalid field: {m}"),
            RadonError::InvalidDirection => f.write_str("direction must be a real unit vector of the field dimension"),
            RadonError::InvalidGrid(m) => write!(f, "invalid profile grid: {m}"),
            RadonError::InvalidThreshold => f.write_str("relative threshold must lie in (0, 1)"),
            RadonError::Overflow { im_z, p_max } => {
                write!(f, "exp(|Im z|·p) overflows for |Im z| = {im_z}, p = {p_max}")
            }
            RadonError::OutOfRange { z, z_max } => {
                write!(f, "|z| = {z} exceeds the range {z_max} the quadrature was built for")
            }
        }
    }
}

impl core::error::Error for RadonError {}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldFamily {
    /// `A e^{−|x−c|²/w²}`.
    Gaussian,
    /// `A · clamp((R − |x−c|)/δ, 0, 1)`: flat top, linear edge of width `δ`,
    /// support exactly the closed ball of radius `R`.
    SmoothedBall,
    /// `A (1 − |x−c|²/r²)³₊`.
    BumpSum,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FieldComponent {
    pub center: Vec<f64>,
    /// Width `w`, ball radius `R` or bump radius `r`, depending on the family.
    pub radius: f64,
    pub amplitude: f64,
}

impl FieldComponent {
    pub fn new(center: Vec<f64>, radius: f64, amplitude: f64) -> Self {
        FieldComponent { center, radius, amplitude }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScalarFieldDescriptor {
    dimension: usize,
    family: FieldFamily,
    components: Vec<FieldComponent>,
    /// Edge width `δ` of smoothed balls; unused otherwise.
    edge: f64,
    r_eff: f64,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

impl ScalarFieldDescriptor {
    pub fn new(family: FieldFamily, components: Vec<FieldComponent>, edge: f64) -> Result<Self, RadonError> {
        let Some(first) = components.first() else {
            return Err(RadonError::InvalidField("at least one component is required"));
        };
        let dimension = first.center.len();
        if dimension != 2 && dimension != 3 {
            return Err(RadonError::InvalidField("only dimensions 2 and 3 are supported"));
        }
        for c in &components {
            if c.center.len() != dimension {
                return Err(RadonError::InvalidField("component centers differ in dimension"));
            }
            if c.center.iter().any(|v| !v.is_finite()) || !c.amplitude.is_finite() {
                return Err(RadonError::InvalidField("centers and amplitudes must be finite"));
            }
            if !(c.radius > 0.0 && c.radius.is_finite()) {
                return Err(RadonError::InvalidField("radii and widths must be positive"));
            }
            if family == FieldFamily::SmoothedBall && !(edge > 0.0 && edge <= c.radius) {
                return Err(RadonError::InvalidField("edge width must lie in (0, R]"));
            }
        }
        let mut field = ScalarFieldDescriptor { dimension, family, components, edge, r_eff: 0.0 };
        field.r_eff = field.components.iter().map(|c| norm(&c.center) + field.extent(c)).fold(0.0, f64::max);
        Ok(field)
    }

    pub fn gaussian(components: Vec<FieldComponent>) -> Result<Self, RadonError> {
        Self::new(FieldFamily::Gaussian, components, 0.0)
    }

    /// Single Gaussian `e^{−|x|²}` at the origin of `R^n`.
    pub fn standard_gaussian(n: usize) -> Self {
        Self::gaussian(vec![FieldComponent::new(vec![0.0; n], 1.0, 1.0)]).expect("valid gaussian")
    }

    pub fn smoothed_ball(center: Vec<f64>, radius: f64, edge: f64) -> Result<Self, RadonError> {
        Self::new(FieldFamily::SmoothedBall, vec![FieldComponent::new(center, radius, 1.0)], edge)
    }

    pub fn bump_sum(components: Vec<FieldComponent>) -> Result<Self, RadonError> {
        Self::new(FieldFamily::BumpSum, components, 0.0)
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn family(&self) -> FieldFamily {
        self.family
    }

    pub fn components(&self) -> &[FieldComponent] {
        &self.components
    }

    pub fn edge(&self) -> f64 {
        self.edge
    }

    /// Radius around the origin beyond which `|u| < 1e-12`.
    pub fn r_eff(&self) -> f64 {
        self.r_eff
    }

    /// Radius of the ball around a component's center outside which it
    /// vanishes (below [`GAUSSIAN_CUTOFF`] for Gaussians).
    pub fn extent(&self, c: &FieldComponent) -> f64 {
        match self.family {
            FieldFamily::Gaussian => {
                let a = c.amplitude.abs();
                if a <= GAUSSIAN_CUTOFF {
                    0.0
                } else {
                    c.radius * (a / GAUSSIAN_CUTOFF).ln().sqrt()
                }
            }
            FieldFamily::SmoothedBall | FieldFamily::BumpSum => c.radius,
        }
    }

    /// Radii where the radial profile of a component is not smooth.
    fn kinks(&self, c: &FieldComponent) -> Vec<f64> {
        match self.family {
            FieldFamily::Gaussian => Vec::new(),
            FieldFamily::SmoothedBall => vec![c.radius - self.edge, c.radius],
            FieldFamily::BumpSum => vec![c.radius],
        }
    }

    /// `A g(r)` for one component.
    pub fn radial(&self, c: &FieldComponent, r: f64) -> f64 {
        match self.family {
            FieldFamily::Gaussian => c.amplitude * (-(r * r) / (c.radius * c.radius)).exp(),
            FieldFamily::SmoothedBall => c.amplitude * ((c.radius - r) / self.edge).clamp(0.0, 1.0),
            FieldFamily::BumpSum => {
                let t = 1.0 - r * r / (c.radius * c.radius);
                if t > 0.0 {
                    c.amplitude * t * t * t
                } else {
                    0.0
                }
            }
        }
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.components
            .iter()
            .map(|c| {
                let r = x.iter().zip(&c.center).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
                self.radial(c, r)
            })
            .sum()
    }

    pub fn translated(&self, shift: &[f64]) -> Result<Self, RadonError> {
        if shift.len() != self.dimension {
            return Err(RadonError::InvalidField("shift dimension mismatch"));
        }
        let components = self
            .components
            .iter()
            .map(|c| FieldComponent { center: c.center.iter().zip(shift).map(|(a, b)| a + b).collect(), ..c.clone() })
            .collect();
        Self::new(self.family, components, self.edge)
    }

    pub fn scaled(&self, factor: f64) -> Result<Self, RadonError> {
        let components =
            self.components.iter().map(|c| FieldComponent { amplitude: c.amplitude * factor, ..c.clone() }).collect();
        Self::new(self.family, components, self.edge)
    }

    /// `[min, max]` of `⟨x,ω⟩` over the union of component supports.
    pub fn projection_range(&self, omega: &[f64]) -> (f64, f64) {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for c in &self.components {
            let m = dot(&c.center, omega);
            let e = self.extent(c);
            lo = lo.min(m - e);
            hi = hi.max(m + e);
        }
        (lo, hi)
    }

    /// Breakpoints of the Radon profile along `ω`: projected kinks and ends.
    fn profile_breaks(&self, omega: &[f64]) -> Vec<f64> {
        let mut b = Vec::new();
        for c in &self.components {
            let m = dot(&c.center, omega);
            let e = self.extent(c);
            b.push(m - e);
            b.push(m + e);
            for k in self.kinks(c) {
                b.push(m - k);
                b.push(m + k);
            }
        }
        b.sort_by(f64::total_cmp);
        b.dedup_by(|a, b| (*a - *b).abs() < 1e-14);
        b
    }

    /// Halton samples of the true support (the union of component balls; for
    /// Gaussians, the balls where `|u| ≥ 1e-12`).
    pub fn support_samples(&self, count: usize, start: u64) -> Vec<Vec<f64>> {
        let m = self.components.len();
        let mut out = Vec::with_capacity(count);
        for (i, c) in self.components.iter().enumerate() {
            let share = count / m + usize::from(i < count % m);
            // points strictly inside the open ball, where u ≠ 0
            out.extend(sampling::ball(&c.center, self.extent(c) * (1.0 - 1e-9), share, start + (i * count) as u64));
        }
        out
    }
}

fn check_direction(field: &ScalarFieldDescriptor, omega: &[f64]) -> Result<(), RadonError> {
    if omega.len() != field.dimension() || (norm(omega) - 1.0).abs() > 1e-12 {
        return Err(RadonError::InvalidDirection);
    }
    Ok(())
}

/// Default Gauss–Legendre nodes per panel.
pub const DEFAULT_NODES: usize = 64;

/// `Ru(ω, p)` with the default rule.
pub fn radon_forward(field: &ScalarFieldDescriptor, omega: &[f64], p: f64) -> f64 {
    radon_forward_with(field, omega, p, &GaussLegendre::new(DEFAULT_NODES))
}

/// `Ru(ω, p)` with a caller-supplied rule. For a component at distance `d`
/// from the hyperplane, the integral is `2∫ g(√(d²+s²)) ds` in `R²` and
/// `2π∫ g(√(d²+s²)) s ds` in `R³` over the in-plane radius `s`.
pub fn radon_forward_with(field: &ScalarFieldDescriptor, omega: &[f64], p: f64, rule: &GaussLegendre) -> f64 {
    let mut total = 0.0;
    for c in field.components() {
        let d = p - dot(&c.center, omega);
        let ext = field.extent(c);
        if d.abs() >= ext {
            continue;
        }
        let d2 = d * d;
        let s_max = (ext * ext - d2).sqrt();
        let mut breaks = vec![0.0, s_max];
        for k in field.kinks(c) {
            if k > d.abs() && k < ext {
                breaks.push((k * k - d2).sqrt());
            }
        }
        if field.family() == FieldFamily::Gaussian {
            let panel = c.radius;
            let n = (s_max / panel).ceil() as usize;
            for i in 1..n {
                breaks.push(i as f64 * panel);
            }
        }
        breaks.sort_by(f64::total_cmp);
        let v = match field.dimension() {
            2 => 2.0 * rule.integrate_breaks(|s: f64| field.radial(c, (d2 + s * s).sqrt()), &breaks),
            _ => 2.0 * PI * rule.integrate_breaks(|s: f64| field.radial(c, (d2 + s * s).sqrt()) * s, &breaks),
        };
        total += v;
    }
    total
}

/// Orthonormal basis of the hyperplane `ω^⊥`.
fn hyperplane_basis(omega: &[f64]) -> Vec<Vec<f64>> {
    match omega.len() {
        2 => vec![vec![-omega[1], omega[0]]],
        _ => {
            let helper = if omega[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
            let d = dot(&helper, omega);
            let mut e1: Vec<f64> = (0..3).map(|i| helper[i] - d * omega[i]).collect();
            let n1 = norm(&e1);
            e1.iter_mut().for_each(|v| *v /= n1);
            let e2 = vec![
                omega[1] * e1[2] - omega[2] * e1[1],
                omega[2] * e1[0] - omega[0] * e1[2],
                omega[0] * e1[1] - omega[1] * e1[0],
            ];
            vec![e1, e2]
        }
    }
}

/// `Ru(ω, p)` by tensor Gauss–Legendre on the square patch `[−R_eff, R_eff]^{n−1}`
/// of the hyperplane around the foot point `pω`, evaluating the field
/// directly. Independent of the radial reduction; used for cross-checks.
pub fn radon_forward_patch(field: &ScalarFieldDescriptor, omega: &[f64], p: f64, nodes: usize, panels: usize) -> f64 {
    let rule = GaussLegendre::new(nodes);
    let r = field.r_eff();
    let basis = hyperplane_basis(omega);
    let n = omega.len();
    let foot: Vec<f64> = omega.iter().map(|w| w * p).collect();
    let h = 2.0 * r / panels as f64;
    let pts: Vec<(f64, f64)> = (0..panels)
        .flat_map(|i| {
            let lo = -r + i as f64 * h;
            rule.mapped(lo, lo + h).collect::<Vec<_>>()
        })
        .collect();
    let mut x = vec![0.0; n];
    let mut total = 0.0;
    if n == 2 {
        for &(s, w) in &pts {
            for i in 0..n {
                x[i] = foot[i] + s * basis[0][i];
            }
            total += w * field.eval(&x);
        }
    } else {
        for &(s, ws) in &pts {
            for &(t, wt) in &pts {
                for i in 0..n {
                    x[i] = foot[i] + s * basis[0][i] + t * basis[1][i];
                }
                total += ws * wt * field.eval(&x);
            }
        }
    }
    total
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProfileGrid {
    pub p_max: f64,
    pub spacing: f64,
}

impl ProfileGrid {
    /// Grid covering `[−R_eff, R_eff]`, rounded outward to whole cells.
    pub fn for_field(field: &ScalarFieldDescriptor, spacing: f64) -> Self {
        let cells = (field.r_eff() / spacing).ceil().max(1.0);
        ProfileGrid { p_max: cells * spacing, spacing }
    }

    pub fn points(&self) -> Vec<f64> {
        let n = (self.p_max / self.spacing).round() as i64;
        (-n..=n).map(|i| i as f64 * self.spacing).collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RadonProfile {
    pub direction: Vec<f64>,
    pub spacing: f64,
    pub p: Vec<f64>,
    pub values: Vec<f64>,
}

impl RadonProfile {
    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

pub fn radon_profile(field: &ScalarFieldDescriptor, omega: &[f64], grid: &ProfileGrid) -> Result<RadonProfile, RadonError> {
    check_direction(field, omega)?;
    if !(grid.spacing > 0.0) {
        return Err(RadonError::InvalidGrid("spacing must be positive"));
    }
    if grid.p_max < field.r_eff() {
        return Err(RadonError::InvalidGrid("grid must cover the effective radius"));
    }
    let rule = GaussLegendre::new(DEFAULT_NODES);
    let p = grid.points();
    let values = p.iter().map(|&q| radon_forward_with(field, omega, q, &rule)).collect();
    Ok(RadonProfile { direction: omega.to_vec(), spacing: grid.spacing, p, values })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SupportInterval {
    pub a: f64,
    pub b: f64,
    pub threshold: f64,
    /// The profile is zero everywhere; `a = b = 0`.
    pub empty: bool,
}

impl SupportInterval {
    /// `max(−a, b)`.
    pub fn sigma(&self) -> f64 {
        if self.empty {
            0.0
        } else {
            (-self.a).max(self.b)
        }
    }
}

/// Smallest grid interval holding every `p` with `|Ru| > ε_rel · max|Ru|`,
/// widened by one cell on each side.
pub fn detect_support(profile: &RadonProfile, eps_rel: f64) -> Result<SupportInterval, RadonError> {
    if !(eps_rel > 0.0 && eps_rel < 1.0) {
        return Err(RadonError::InvalidThreshold);
    }
    let max = profile.max_abs();
    if max == 0.0 {
        return Ok(SupportInterval { a: 0.0, b: 0.0, threshold: eps_rel, empty: true });
    }
    let cut = eps_rel * max;
    let lo = profile.values.iter().position(|v| v.abs() > cut).unwrap_or(0);
    let hi = profile.values.iter().rposition(|v| v.abs() > cut).unwrap_or(0);
    Ok(SupportInterval {
        a: profile.p[lo] - profile.spacing,
        b: profile.p[hi] + profile.spacing,
        threshold: eps_rel,
        empty: false,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SliceQuadrature {
    pub nodes: usize,
    /// Largest panel width before oscillation limits apply.
    pub panel: f64,
}

impl Default for SliceQuadrature {
    fn default() -> Self {
        SliceQuadrature { nodes: 48, panel: 0.5 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SliceCheck {
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub discrepancy: f64,
}

/// Splits `[breaks]` into panels no wider than `width`.
fn refine_breaks(breaks: &[f64], width: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(breaks.len());
    for w in breaks.windows(2) {
        let n = ((w[1] - w[0]) / width).ceil().max(1.0) as usize;
        for i in 0..n {
            out.push(w[0] + (w[1] - w[0]) * i as f64 / n as f64);
        }
    }
    if let Some(&last) = breaks.last() {
        out.push(last);
    }
    out
}

/// Compares `∫ e^{−isp} Ru(ω,p) dp` with `û(sω)` computed directly in polar
/// (`R²`) or spherical (`R³`) coordinates around each component center.
pub fn fourier_slice_check(
    field: &ScalarFieldDescriptor,
    omega: &[f64],
    s: f64,
    quad: &SliceQuadrature,
) -> Result<SliceCheck, RadonError> {
    check_direction(field, omega)?;
    let rule = GaussLegendre::new(quad.nodes);
    let width = if s == 0.0 { quad.panel } else { quad.panel.min(PI / s.abs()) };

    let radon_rule = GaussLegendre::new(DEFAULT_NODES);
    let breaks = refine_breaks(&field.profile_breaks(omega), width);
    let lhs: Complex64 =
        rule.integrate_breaks(|p: f64| Complex64::from_polar(radon_forward_with(field, omega, p, &radon_rule), -s * p), &breaks);

    let mut rhs = Complex64::new(0.0, 0.0);
    for c in field.components() {
        let ext = field.extent(c);
        let mut rb = vec![0.0, ext];
        for k in field.kinks(c) {
            if k > 0.0 && k < ext {
                rb.push(k);
            }
        }
        rb.sort_by(f64::total_cmp);
        let rb = refine_breaks(&rb, width);
        let shift = Complex64::from_polar(1.0, -s * dot(&c.center, omega));
        let radial_part: Complex64 = match field.dimension() {
            2 => {
                // ∫_0^{2π} e^{−i s r cos θ} dθ by panels in θ
                let ang_width = if s == 0.0 { PI / 4.0 } else { (1.0 / (s.abs() * ext)).clamp(PI / 64.0, PI / 4.0) };
                let ang = refine_breaks(&[0.0, 2.0 * PI], ang_width);
                rule.integrate_breaks(
                    |r: f64| {
                        let g = field.radial(c, r);
                        if g == 0.0 {
                            return Complex64::new(0.0, 0.0);
                        }
                        let inner: Complex64 = rule.integrate_breaks(|t: f64| Complex64::from_polar(1.0, -s * r * t.cos()), &ang);
                        inner * (g * r)
                    },
                    &rb,
                )
            }
            _ => {
                // 2π ∫ r² g(r) ∫_{−1}^{1} e^{−i s r μ} dμ dr
                let mu = refine_breaks(&[-1.0, 1.0], if s == 0.0 { 2.0 } else { (2.0 / (s.abs() * ext)).clamp(0.05, 2.0) });
                rule.integrate_breaks(
                    |r: f64| {
                        let g = field.radial(c, r);
                        if g == 0.0 {
                            return Complex64::new(0.0, 0.0);
                        }
                        let inner: Complex64 = rule.integrate_breaks(|m: f64| Complex64::from_polar(1.0, -s * r * m), &mu);
                        inner * (2.0 * PI * g * r * r)
                    },
                    &rb,
                )
            }
        };
        rhs += shift * radial_part;
    }
    Ok(SliceCheck { lhs, rhs, discrepancy: (lhs - rhs).norm() })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LineQuadrature {
    pub nodes: usize,
    /// Panel width for slowly varying integrands.
    pub base_panel: f64,
}

impl Default for LineQuadrature {
    fn default() -> Self {
        LineQuadrature { nodes: 16, base_panel: 0.125 }
    }
}

/// Radon profile along one direction, sampled at quadrature nodes fine
/// enough for `e^{−izp}` with `|z| ≤ z_max`, so that many Fourier–Laplace
/// values and moments can be taken from one set of hyperplane integrals.
#[derive(Clone, Debug, PartialEq)]
pub struct LineTransform {
    direction: Vec<f64>,
    nodes: Vec<f64>,
    weights: Vec<f64>,
    values: Vec<f64>,
    range: (f64, f64),
    z_max: f64,
}

impl LineTransform {
    /// Panels are at most `min(base_panel, 1/(4 z_max))` wide and break at
    /// the kinks of the profile.
    pub fn new(field: &ScalarFieldDescriptor, omega: &[f64], z_max: f64, quad: &LineQuadrature) -> Result<Self, RadonError> {
        check_direction(field, omega)?;
        let z_max = z_max.abs();
        let width = if z_max > 0.0 { quad.base_panel.min(0.25 / z_max) } else { quad.base_panel };
        let breaks = refine_breaks(&field.profile_breaks(omega), width);
        let rule = GaussLegendre::new(quad.nodes);
        let radon_rule = GaussLegendre::new(DEFAULT_NODES);
        let mut nodes = Vec::new();
        let mut weights = Vec::new();
        for w in breaks.windows(2) {
            if w[1] > w[0] {
                for (x, wt) in rule.mapped(w[0], w[1]) {
                    nodes.push(x);
                    weights.push(wt);
                }
            }
        }
        let values = nodes.iter().map(|&p| radon_forward_with(field, omega, p, &radon_rule)).collect();
        Ok(LineTransform { direction: omega.to_vec(), nodes, weights, values, range: field.projection_range(omega), z_max })
    }

    pub fn direction(&self) -> &[f64] {
        &self.direction
    }

    pub fn z_max(&self) -> f64 {
        self.z_max
    }

    /// `[min, max]` of `p` over the support of the profile.
    pub fn range(&self) -> (f64, f64) {
        self.range
    }

    /// `‖Ru(ω,·)‖_{L¹}`.
    pub fn l1_norm(&self) -> f64 {
        self.weights.iter().zip(&self.values).map(|(w, v)| w * v.abs()).sum()
    }

    fn p_extent(&self) -> f64 {
        self.range.0.abs().max(self.range.1.abs())
    }

    /// `∫ e^{−izp} Ru(ω,p) dp`.
    pub fn laplace(&self, z: Complex64) -> Result<Complex64, RadonError> {
        if z.norm() > self.z_max * (1.0 + 1e-12) {
            return Err(RadonError::OutOfRange { z: z.norm(), z_max: self.z_max });
        }
        if z.im.abs() * self.p_extent() > EXPONENT_LIMIT {
            return Err(RadonError::Overflow { im_z: z.im.abs(), p_max: self.p_extent() });
        }
        let mi = Complex64::new(0.0, -1.0);
        Ok(self.nodes.iter().zip(&self.weights).zip(&self.values).map(|((&p, &w), &v)| (mi * z * p).exp() * (w * v)).sum())
    }

    /// `log|∫ e^{−izp} Ru(ω,p) dp|`, evaluated with the largest exponent
    /// factored out so that it never overflows.
    pub fn log_abs_laplace(&self, z: Complex64) -> Result<f64, RadonError> {
        if z.norm() > self.z_max * (1.0 + 1e-12) {
            return Err(RadonError::OutOfRange { z: z.norm(), z_max: self.z_max });
        }
        // Re(−izp) = Im(z)·p
        let shift = self.nodes.iter().map(|&p| z.im * p).fold(f64::NEG_INFINITY, f64::max);
        let mi = Complex64::new(0.0, -1.0);
        let s: Complex64 = self
            .nodes
            .iter()
            .zip(&self.weights)
            .zip(&self.values)
            .map(|((&p, &w), &v)| (mi * z * p - shift).exp() * (w * v))
            .sum();
        Ok(s.norm().ln() + shift)
    }

    /// `c_k = ∫ (−ip)^k / k! · Ru(ω,p) dp` for `k = 0..=max_degree`.
    pub fn taylor(&self, max_degree: usize) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); max_degree + 1];
        let mi = Complex64::new(0.0, -1.0);
        for ((&p, &w), &v) in self.nodes.iter().zip(&self.weights).zip(&self.values) {
            let mut term = Complex64::new(w * v, 0.0);
            for (k, o) in out.iter_mut().enumerate() {
                if k > 0 {
                    term = term * mi * p / k as f64;
                }
                *o += term;
            }
        }
        out
    }
}

/// `∫ e^{−izp} Ru(ω,p) dp` for a single `z`.
pub fn line_laplace(
    field: &ScalarFieldDescriptor,
    omega: &[f64],
    z: Complex64,
    quad: &LineQuadrature,
) -> Result<Complex64, RadonError> {
    let (lo, hi) = field.projection_range(omega);
    if z.im.abs() * lo.abs().max(hi.abs()) > EXPONENT_LIMIT {
        return Err(RadonError::Overflow { im_z: z.im.abs(), p_max: lo.abs().max(hi.abs()) });
    }
    LineTransform::new(field, omega, z.norm(), quad)?.laplace(z)
}

/// Taylor coefficients at `0` of `z ↦ û(zω)`, as moments of the profile.
pub fn taylor_on_line(
    field: &ScalarFieldDescriptor,
    omega: &[f64],
    max_degree: usize,
    quad: &LineQuadrature,
) -> Result<Vec<Complex64>, RadonError> {
    Ok(LineTransform::new(field, omega, 0.0, quad)?.taylor(max_degree))
}

/// Profiles for several directions on a common grid.
pub fn sinogram(
    field: &ScalarFieldDescriptor,
    directions: &[Vec<f64>],
    grid: &ProfileGrid,
) -> Result<Vec<RadonProfile>, RadonError> {
    directions.iter().map(|w| radon_profile(field, w, grid)).collect()
}
