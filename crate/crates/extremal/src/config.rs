//! JSON run configuration. Every section has defaults, so an empty object is
//! a valid configuration for every command.

use std::path::{Path, PathBuf};

use extremal_core::extremal::{SolverConfig, WeightedDirectionSet};
use extremal_core::poly::ComplexPoint;
use extremal_core::radon::{FieldComponent, FieldFamily, ScalarFieldDescriptor};
use extremal_core::sampling;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// A coordinate: a bare real number or `[re, im]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coord {
    Real(f64),
    Complex([f64; 2]),
}

impl Coord {
    pub fn value(self) -> Complex64 {
        match self {
            Coord::Real(x) => Complex64::new(x, 0.0),
            Coord::Complex([re, im]) => Complex64::new(re, im),
        }
    }
}

pub fn to_point(coords: &[Coord]) -> ComplexPoint {
    ComplexPoint::new(coords.iter().map(|c| c.value()).collect())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
#[derive(Default)]
pub struct RunConfig {
    /// When present, must name the command being run.
    pub command: Option<String>,
    pub seed: u64,
    pub solver: SolverSpec,
    pub set: Option<SetSpec>,
    pub points: Option<PointsSpec>,
    pub capacity: CapacitySpec,
    pub extend: ExtendSpec,
    pub order_type: OrderTypeSpec,
    pub radon: RadonSpec,
    pub locate: LocateSpec,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Config(format!("invalid configuration: {e}")))
    }

    /// Checks the command name and that every referenced input file exists.
    pub fn validate(&self, command: &str) -> Result<(), CliError> {
        if let Some(c) = &self.command {
            if c != command {
                return Err(CliError::Config(format!("configuration is for `{c}`, not `{command}`")));
            }
        }
        self.solver.build()?;
        for p in [&self.extend.data, &self.order_type.coefficients].into_iter().flatten() {
            if !p.exists() {
                return Err(CliError::Config(format!("input file {} does not exist", p.display())));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SolverSpec {
    pub max_degree: usize,
    pub phases: usize,
    pub refinement_limit: usize,
    pub pivot_tol: f64,
    pub feas_tol: f64,
}

impl Default for SolverSpec {
    fn default() -> Self {
        let d = SolverConfig::default();
        SolverSpec {
            max_degree: d.max_degree,
            phases: d.phases,
            refinement_limit: d.refinement_limit,
            pivot_tol: d.pivot_tol,
            feas_tol: d.feas_tol,
        }
    }
}

impl SolverSpec {
    pub fn build(&self) -> Result<SolverConfig, CliError> {
        let cfg = SolverConfig {
            max_degree: self.max_degree,
            phases: self.phases,
            refinement_limit: self.refinement_limit,
            pivot_tol: self.pivot_tol,
            feas_tol: self.feas_tol,
        };
        cfg.validate().map_err(|e| CliError::Config(format!("solver: {e}")))?;
        Ok(cfg)
    }
}

fn one() -> f64 {
    1.0
}

/// The sample set `E` with its weights.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SetSpec {
    Points {
        points: Vec<Vec<Coord>>,
        weights: Option<Vec<f64>>,
    },
    RealDirections {
        directions: Vec<Vec<f64>>,
        weights: Option<Vec<f64>>,
    },
    Circle {
        count: usize,
        #[serde(default = "one")]
        weight: f64,
    },
    Arc {
        start: f64,
        end: f64,
        count: usize,
        #[serde(default = "one")]
        weight: f64,
    },
    RealSphere {
        n: usize,
        count: usize,
        #[serde(default = "one")]
        weight: f64,
    },
    Cap {
        axis: [f64; 3],
        half_angle: f64,
        count: usize,
        #[serde(default = "one")]
        weight: f64,
    },
    ComplexSphere {
        n: usize,
        count: usize,
    },
}

impl Default for SetSpec {
    fn default() -> Self {
        SetSpec::Circle { count: 256, weight: 1.0 }
    }
}

fn set_error(e: impl std::fmt::Display) -> CliError {
    CliError::Config(format!("set: {e}"))
}

impl SetSpec {
    pub fn build(&self) -> Result<WeightedDirectionSet, CliError> {
        let real = |dirs: Vec<Vec<f64>>, w: f64| {
            let n = dirs.len();
            WeightedDirectionSet::from_real_directions(&dirs, vec![w; n]).map_err(set_error)
        };
        match self {
            SetSpec::Points { points, weights } => {
                let pts: Vec<ComplexPoint> = points.iter().map(|p| to_point(p)).collect();
                let w = weights.clone().unwrap_or_else(|| vec![1.0; pts.len()]);
                WeightedDirectionSet::new(pts, w).map_err(set_error)
            }
            SetSpec::RealDirections { directions, weights } => {
                let w = weights.clone().unwrap_or_else(|| vec![1.0; directions.len()]);
                WeightedDirectionSet::from_real_directions(directions, w).map_err(set_error)
            }
            SetSpec::Circle { count, weight } => real(sampling::real_sphere(2, *count), *weight),
            SetSpec::Arc { start, end, count, weight } => {
                real(sampling::arc(*start, *end, *count).iter().map(|p| p.to_vec()).collect(), *weight)
            }
            SetSpec::RealSphere { n, count, weight } => {
                if !(2..=3).contains(n) {
                    return Err(set_error("real spheres are supported for n = 2, 3"));
                }
                real(sampling::real_sphere(*n, *count), *weight)
            }
            SetSpec::Cap { axis, half_angle, count, weight } => {
                let dirs = sampling::spherical_cap(*axis, *half_angle, *count).iter().map(|p| p.to_vec()).collect();
                real(dirs, *weight)
            }
            SetSpec::ComplexSphere { n, count } => {
                if *n == 0 || *n > 6 {
                    return Err(set_error("complex spheres are supported for 1 ≤ n ≤ 6"));
                }
                Ok(WeightedDirectionSet::complex_unit_sphere(*n, *count))
            }
        }
    }
}

/// Evaluation points.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum PointsSpec {
    List {
        points: Vec<Vec<Coord>>,
    },
    /// Uniform in the ball `|ζ| ≤ radius` of `C^n`, drawn from the run seed.
    Random {
        count: usize,
        dimension: usize,
        radius: f64,
    },
    /// Quasi-uniform points of the sphere `|ζ| = radius`.
    ComplexSphere {
        count: usize,
        dimension: usize,
        radius: f64,
    },
}

impl PointsSpec {
    pub fn build(&self, seed: u64) -> Result<Vec<ComplexPoint>, CliError> {
        match self {
            PointsSpec::List { points } => Ok(points.iter().map(|p| to_point(p)).collect()),
            PointsSpec::Random { count, dimension, radius } => {
                if *dimension == 0 || !(*radius > 0.0) {
                    return Err(CliError::Config("points: dimension and radius must be positive".into()));
                }
                Ok(random_ball(*count, *dimension, *radius, seed))
            }
            PointsSpec::ComplexSphere { count, dimension, radius } => {
                if *dimension == 0 || *dimension > 6 {
                    return Err(CliError::Config("points: sphere dimension must be 1..=6".into()));
                }
                Ok(sampling::complex_sphere(*dimension, *count, seed).into_iter().map(|z| z.scale_real(*radius)).collect())
            }
        }
    }
}

/// Uniform points in the ball of radius `radius` in `C^n`.
pub fn random_ball(count: usize, n: usize, radius: f64, seed: u64) -> Vec<ComplexPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let g: Vec<f64> = (0..2 * n).map(|_| StandardNormal.sample(&mut rng)).collect();
            let norm = g.iter().map(|x| x * x).sum::<f64>().sqrt();
            let u: f64 = rand::Rng::random(&mut rng);
            let r = radius * u.powf(1.0 / (2 * n) as f64) / norm;
            ComplexPoint::new((0..n).map(|j| Complex64::new(g[2 * j] * r, g[2 * j + 1] * r)).collect())
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CapacitySpec {
    pub sphere_samples: usize,
}

impl Default for CapacitySpec {
    fn default() -> Self {
        CapacitySpec { sphere_samples: 200 }
    }
}

/// Line data of `e^{⟨a,ζ⟩}` along the directions of a set.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExponentialSpec {
    pub a: Vec<Coord>,
    pub directions: SetSpec,
    pub max_degree: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ExtendSpec {
    /// Line data as CSV or JSON (by extension).
    pub data: Option<PathBuf>,
    pub exponential: Option<ExponentialSpec>,
    /// Growth constants for CSV data carrying a `sigma` column.
    pub c: f64,
    pub rho: f64,
    pub tol: f64,
    pub probes: Option<PointsSpec>,
    pub bound_check: bool,
    pub type_check: bool,
    pub type_samples: usize,
}

impl Default for ExtendSpec {
    fn default() -> Self {
        ExtendSpec {
            data: None,
            exponential: None,
            c: 1.0,
            rho: 1.0,
            tol: 1e-8,
            probes: None,
            bound_check: true,
            type_check: true,
            type_samples: 24,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FamilySpec {
    /// `(eσρ/k)^{k/ρ}`.
    Comparison { sigma: f64, rho: f64, k_max: usize },
    /// `a^k / k!`.
    Exponential { a: f64, k_max: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
#[derive(Default)]
pub struct OrderTypeSpec {
    /// CSV with columns `k,re,im`.
    pub coefficients: Option<PathBuf>,
    pub family: Option<FamilySpec>,
    /// Order used for the type; estimated when absent.
    pub rho: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentSpec {
    pub center: Vec<f64>,
    pub radius: f64,
    #[serde(default = "one")]
    pub amplitude: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyTag {
    Gaussian,
    SmoothedBall,
    BumpSum,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub family: FamilyTag,
    pub components: Vec<ComponentSpec>,
    #[serde(default)]
    pub edge: f64,
}

impl Default for FieldSpec {
    /// Smoothed unit disc at the origin.
    fn default() -> Self {
        FieldSpec {
            family: FamilyTag::SmoothedBall,
            components: vec![ComponentSpec { center: vec![0.0, 0.0], radius: 1.0, amplitude: 1.0 }],
            edge: 0.2,
        }
    }
}

impl FieldSpec {
    pub fn build(&self) -> Result<ScalarFieldDescriptor, CliError> {
        let family = match self.family {
            FamilyTag::Gaussian => FieldFamily::Gaussian,
            FamilyTag::SmoothedBall => FieldFamily::SmoothedBall,
            FamilyTag::BumpSum => FieldFamily::BumpSum,
        };
        let comps = self.components.iter().map(|c| FieldComponent::new(c.center.clone(), c.radius, c.amplitude)).collect();
        ScalarFieldDescriptor::new(family, comps, self.edge).map_err(|e| CliError::Config(format!("field: {e}")))
    }
}

/// Real unit directions.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum DirectionSpec {
    List { directions: Vec<Vec<f64>> },
    Circle { count: usize },
    Arc { start: f64, end: f64, count: usize },
    Sphere { n: usize, count: usize },
    Cap { axis: [f64; 3], half_angle: f64, count: usize },
}

impl DirectionSpec {
    pub fn build(&self) -> Result<Vec<Vec<f64>>, CliError> {
        let dirs = match self {
            DirectionSpec::List { directions } => directions.clone(),
            DirectionSpec::Circle { count } => sampling::real_sphere(2, *count),
            DirectionSpec::Arc { start, end, count } => sampling::arc(*start, *end, *count).iter().map(|p| p.to_vec()).collect(),
            DirectionSpec::Sphere { n, count } => {
                if !(2..=3).contains(n) {
                    return Err(CliError::Config("directions: spheres are supported for n = 2, 3".into()));
                }
                sampling::real_sphere(*n, *count)
            }
            DirectionSpec::Cap { axis, half_angle, count } => {
                sampling::spherical_cap(*axis, *half_angle, *count).iter().map(|p| p.to_vec()).collect()
            }
        };
        if dirs.is_empty() {
            return Err(CliError::Config("directions: at least one direction is required".into()));
        }
        for d in &dirs {
            let n = d.iter().map(|x| x * x).sum::<f64>().sqrt();
            if (n - 1.0).abs() > 1e-12 {
                return Err(CliError::Config("directions must be unit vectors".into()));
            }
        }
        Ok(dirs)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RadonSpec {
    pub field: FieldSpec,
    pub directions: DirectionSpec,
    pub spacing: f64,
    pub threshold: f64,
    /// Frequencies `s` at which the Fourier slice identity is checked for
    /// each direction.
    pub slice_frequencies: Vec<f64>,
}

impl Default for RadonSpec {
    fn default() -> Self {
        RadonSpec {
            field: FieldSpec::default(),
            directions: DirectionSpec::Circle { count: 16 },
            spacing: 0.02,
            threshold: 1e-6,
            slice_frequencies: vec![0.0, 1.0, 5.0],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct LocateSpec {
    pub field: FieldSpec,
    pub directions: DirectionSpec,
    pub spacing: f64,
    pub threshold: f64,
    /// Number of grid directions; 256 in the plane and 2048 in space when
    /// absent.
    pub grid: Option<usize>,
    pub support_samples: usize,
    pub refine: bool,
    /// Also compare the growth of the Fourier–Laplace transform along `±iω`
    /// with the detected intervals.
    pub indicator_check: bool,
}

impl Default for LocateSpec {
    fn default() -> Self {
        LocateSpec {
            field: FieldSpec::default(),
            directions: DirectionSpec::Circle { count: 128 },
            spacing: 0.01,
            threshold: 1e-6,
            grid: None,
            support_samples: 500,
            refine: true,
            indicator_check: false,
        }
    }
}
