//! One function per command. Each reads its section of the configuration,
//! writes its artifacts through an [`OutputDir`] and prints a summary line per
//! stage.

use std::path::Path;

use extremal_core::entire::{
    estimate_order, estimate_type, CoefficientSequence, GrowthFlag, OrderEstimate, RayGrid, TypeEstimate,
};
use extremal_core::extension::{bound_check, eval_extension, extend, type_bound_check, LineSeriesData, RecoveryOptions};
use extremal_core::localize::{default_grid, helgason_pipeline_with, indicator_support_check, PipelineOptions};
use extremal_core::norms::{
    ab_decompose, cross_norm_euclidean, cross_norm_via_distance, cross_norm_via_real_parts, dist_to_complexified_reals,
};
use extremal_core::poly::ComplexPoint;
use extremal_core::radon::{detect_support, fourier_slice_check, radon_profile, ProfileGrid, SliceQuadrature};
use extremal_core::sampling;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{to_point, FamilySpec, PointsSpec, RunConfig};
use crate::error::{CliError, StageExt};
use crate::formats::{self, num, BodyJson, PolyJson};
use crate::manifest::{FileEntry, OutputDir};
use crate::parallel;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    CrossNorm,
    Psi,
    Capacity,
    Extend,
    OrderType,
    Radon,
    Locate,
}

impl Command {
    pub const ALL: [Command; 7] = [
        Command::CrossNorm,
        Command::Psi,
        Command::Capacity,
        Command::Extend,
        Command::OrderType,
        Command::Radon,
        Command::Locate,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::CrossNorm => "cross-norm",
            Command::Psi => "psi",
            Command::Capacity => "capacity",
            Command::Extend => "extend",
            Command::OrderType => "order-type",
            Command::Radon => "radon",
            Command::Locate => "locate",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.name() == s)
    }
}

/// Runs `command`, writing artifacts and `manifest.json` into `out`.
pub fn run(command: Command, cfg: &RunConfig, out: &Path, threads: usize) -> Result<Vec<FileEntry>, CliError> {
    cfg.validate(command.name())?;
    let mut dir = OutputDir::create(out)?;
    match command {
        Command::CrossNorm => cross_norm(cfg, &mut dir)?,
        Command::Psi => psi(cfg, &mut dir)?,
        Command::Capacity => capacity(cfg, &mut dir)?,
        Command::Extend => extend_cmd(cfg, &mut dir)?,
        Command::OrderType => order_type(cfg, &mut dir)?,
        Command::Radon => radon(cfg, &mut dir)?,
        Command::Locate => locate(cfg, &mut dir)?,
    }
    dir.finish(command.name(), cfg, threads)
}

fn complex_cells(z: Complex64) -> [String; 2] {
    [num(z.re), num(z.im)]
}

fn point_cells(z: &ComplexPoint) -> Vec<String> {
    z.coords().iter().flat_map(|&c| complex_cells(c)).collect()
}

fn point_header(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).flat_map(|j| [format!("{prefix}{j}_re"), format!("{prefix}{j}_im")]).collect()
}

fn opt_cell(v: Option<f64>) -> String {
    v.map_or_else(String::new, num)
}

fn table(dir: &mut OutputDir, name: &str, header: Vec<String>, rows: Vec<Vec<String>>) -> Result<(), CliError> {
    let h: Vec<&str> = header.iter().map(String::as_str).collect();
    dir.write_with(name, |buf| formats::write_table(&h, &rows, buf))
}

fn points(cfg: &RunConfig, fallback: Option<PointsSpec>) -> Result<Vec<ComplexPoint>, CliError> {
    match cfg.points.clone().or(fallback) {
        Some(p) => p.build(cfg.seed),
        None => Err(CliError::Config("`points` is required for this command".into())),
    }
}

#[derive(Serialize)]
struct CrossNormRow {
    point: Vec<[f64; 2]>,
    euclidean: f64,
    cross_norm: f64,
    via_distance: f64,
    via_real_parts: f64,
    a: Vec<f64>,
    b: Vec<f64>,
    theta: f64,
    dist_to_real: f64,
}

fn cross_norm(cfg: &RunConfig, dir: &mut OutputDir) -> Result<(), CliError> {
    let pts = points(cfg, None)?;
    let rows: Vec<CrossNormRow> = dir.timed("cross-norm", || {
        pts.iter()
            .map(|z| {
                let ab = ab_decompose(z);
                CrossNormRow {
                    point: z.coords().iter().map(|c| [c.re, c.im]).collect(),
                    euclidean: z.norm(),
                    cross_norm: cross_norm_euclidean(z),
                    via_distance: cross_norm_via_distance(z),
                    via_real_parts: cross_norm_via_real_parts(z),
                    a: ab.a.clone(),
                    b: ab.b.clone(),
                    theta: ab.theta,
                    dist_to_real: dist_to_complexified_reals(z),
                }
            })
            .collect()
    });
    for (i, r) in rows.iter().enumerate() {
        dir.summary(format!(
            "cross-norm: point {i}: |z| = {}, |z|_c = {}, dist to CR^n = {}",
            r.euclidean, r.cross_norm, r.dist_to_real
        ));
    }
    let n = pts.first().map_or(0, ComplexPoint::dim);
    let mut header = point_header("z", n);
    header.extend(
        ["euclidean", "cross_norm", "via_distance", "via_real_parts", "a_norm", "b_norm", "dist_to_real"].map(String::from),
    );
    let csv_rows = pts
        .iter()
        .zip(&rows)
        .map(|(z, r)| {
            let mut c = point_cells(z);
            let an = r.a.iter().map(|x| x * x).sum::<f64>().sqrt();
            let bn = r.b.iter().map(|x| x * x).sum::<f64>().sqrt();
            c.extend([r.euclidean, r.cross_norm, r.via_distance, r.via_real_parts, an, bn, r.dist_to_real].map(num));
            c
        })
        .collect();
    table(dir, "cross_norm.csv", header, csv_rows)?;
    dir.write_json("cross_norm.json", &rows)
}

fn psi(cfg: &RunConfig, dir: &mut OutputDir) -> Result<(), CliError> {
    let set = cfg.set.clone().unwrap_or_default().build()?;
    let n = set.dimension();
    let pts = points(cfg, Some(PointsSpec::ComplexSphere { count: 20, dimension: n, radius: 1.0 }))?;
    if pts.iter().any(|z| z.dim() != n) {
        return Err(CliError::Config(format!("points must have dimension {n}")));
    }
    let solver = cfg.solver.build()?;
    let results = dir.timed("psi", || parallel::psi_grid(&set, &pts, &solver)).stage("psi")?;
    let failures = results.iter().filter(|r| r.is_err()).count();
    dir.summary(format!(
        "psi: {} points, |E| = {}, K = {}, m = {}, {} failures",
        pts.len(),
        set.len(),
        solver.max_degree,
        solver.phases,
        failures
    ));

    let mut header = point_header("z", n);
    header.extend(["value", "certified", "best_degree", "status"].map(String::from));
    let mut rows = Vec::new();
    let mut degree_rows = Vec::new();
    for (i, (z, r)) in pts.iter().zip(&results).enumerate() {
        let mut c = point_cells(z);
        match r {
            Ok(r) => {
                c.extend([num(r.value), num(r.certified), r.best_degree.to_string(), "ok".into()]);
                for d in &r.per_degree {
                    degree_rows.push(vec![
                        i.to_string(),
                        d.degree.to_string(),
                        num(d.value),
                        num(d.certified),
                        d.iterations.to_string(),
                    ]);
                }
            }
            Err(e) => c.extend([String::new(), String::new(), String::new(), e.to_string()]),
        }
        rows.push(c);
    }
    table(dir, "psi.csv", header, rows)?;
    table(
        dir,
        "psi_degrees.csv",
        ["point", "degree", "value", "certified", "iterations"].map(String::from).to_vec(),
        degree_rows,
    )?;
    if failures > 0 {
        let first = results.iter().find_map(|r| r.as_ref().err()).map(ToString::to_string).unwrap_or_default();
        return Err(CliError::stage("psi", format!("{failures} points failed; first: {first}")));
    }
    Ok(())
}

#[derive(Serialize)]
struct CapacityJson {
    capacity: f64,
    zero_flag: bool,
    sup_psi: Option<f64>,
    maximizer: Option<Vec<[f64; 2]>>,
    samples: usize,
    diagnostic: Option<String>,
}

fn capacity(cfg: &RunConfig, dir: &mut OutputDir) -> Result<(), CliError> {
    let set = cfg.set.clone().unwrap_or_default().build()?;
    let solver = cfg.solver.build()?;
    let samples = cfg.capacity.sphere_samples;
    if samples == 0 {
        return Err(CliError::Config("capacity.sphere_samples must be positive".into()));
    }
    let est = dir.timed("capacity", || parallel::capacity_homog(&set, &solver, samples)).stage("capacity")?;
    dir.summary(format!(
        "capacity: estimate {} from {} sphere samples (sup psi = {}){}",
        est.capacity,
        est.samples,
        est.sup_psi,
        if est.zero_flag { ", zero capacity suspected" } else { "" }
    ));
    dir.write_json(
        "capacity.json",
        &CapacityJson {
            capacity: est.capacity,
            zero_flag: est.zero_flag,
            sup_psi: est.sup_psi.is_finite().then_some(est.sup_psi),
            maximizer: est.maximizer.as_ref().map(|z| z.coords().iter().map(|c| [c.re, c.im]).collect()),
            samples: est.samples,
            diagnostic: est.diagnostic.as_ref().map(ToString::to_string),
        },
    )
}

#[derive(Serialize)]
struct ExtensionJson {
    dimension: usize,
    max_degree: usize,
    residuals: Vec<f64>,
    rank_deficient: Vec<bool>,
    polynomials: Vec<PolyJson>,
}

fn extend_cmd(cfg: &RunConfig, dir: &mut OutputDir) -> Result<(), CliError> {
    let section = &cfg.extend;
    let data = match (&section.data, &section.exponential) {
        (Some(path), _) => formats::read_line_series(path, section.c, section.rho)?,
        (None, Some(e)) => {
            let set = e.directions.build()?;
            LineSeriesData::exponential(&to_point(&e.a), set.points().to_vec(), e.max_degree)
                .map_err(|err| CliError::Config(format!("extend: {err}")))?
        }
        (None, None) => return Err(CliError::Config("extend needs `data` or `exponential`".into())),
    };
    let n = data.dimension();
    let solver = cfg.solver.build()?;
    let opts = RecoveryOptions { tol: section.tol, ..RecoveryOptions::default() };
    let ext = dir.timed("recover", || extend(&data, &opts)).stage("recover")?;
    let worst = ext.residuals().iter().copied().fold(0.0, f64::max);
    dir.summary(format!(
        "recover: {} lines, degrees 0..={}, max residual {worst:e}, {} rank-deficient degrees",
        data.line_count(),
        ext.max_degree(),
        ext.rank_deficient().iter().filter(|r| **r).count()
    ));
    dir.write_json(
        "extension.json",
        &ExtensionJson {
            dimension: n,
            max_degree: ext.max_degree(),
            residuals: ext.residuals().to_vec(),
            rank_deficient: ext.rank_deficient().to_vec(),
            polynomials: ext.polynomials().iter().map(PolyJson::from_poly).collect(),
        },
    )?;

    let probes = match &section.probes {
        Some(p) => p.build(cfg.seed)?,
        None => sampling::complex_sphere(n, 8, cfg.seed),
    };
    if probes.iter().any(|z| z.dim() != n) {
        return Err(CliError::Config(format!("probes must have dimension {n}")));
    }
    let growth = data.growth().cloned();
    let psi: Vec<Option<f64>> = match &growth {
        Some(g) => {
            let set =
                extremal_core::extremal::WeightedDirectionSet::new(data.directions().to_vec(), g.weights()).stage("evaluate")?;
            dir.timed("evaluate", || parallel::psi_grid(&set, &probes, &solver))
                .stage("evaluate")?
                .into_iter()
                .map(|r| r.ok().map(|r| r.value))
                .collect()
        }
        None => vec![None; probes.len()],
    };
    let mut header = point_header("z", n);
    header.extend(["re", "im", "psi", "tail_bound"].map(String::from));
    let rows = probes
        .iter()
        .zip(&psi)
        .map(|(z, &p)| {
            let v = eval_extension(&ext, z, p);
            let mut c = point_cells(z);
            c.extend(complex_cells(v.value));
            c.push(opt_cell(p));
            c.push(opt_cell(v.tail_bound));
            c
        })
        .collect();
    table(dir, "probes.csv", header, rows)?;
    dir.summary(format!("evaluate: {} probes", probes.len()));

    let Some(g) = growth else {
        dir.summary("checks: skipped, no growth data".into());
        return Ok(());
    };
    if section.bound_check {
        let report = dir.timed("bound-check", || bound_check(&ext, &data, &probes, &solver)).stage("bound-check")?;
        dir.summary(format!(
            "bound-check: min margin {} over {} probes: {}",
            report.min_margin,
            probes.len(),
            verdict(report.passed())
        ));
        let rows = report
            .entries
            .iter()
            .enumerate()
            .map(|(i, e)| {
                vec![(i / (ext.max_degree() + 1)).to_string(), e.degree.to_string(), num(e.value), num(e.bound), num(e.margin)]
            })
            .collect();
        table(dir, "bound_check.csv", ["probe", "degree", "value", "bound", "margin"].map(String::from).to_vec(), rows)?;
    }
    if section.type_check {
        let sigma_max = g.sigma_max();
        let report =
            dir.timed("type-check", || type_bound_check(&ext, sigma_max, &probes, section.type_samples)).stage("type-check")?;
        dir.summary(format!(
            "type-check: max type {} vs bound {} (t_max {}): {}",
            report.max_observed,
            report.bound,
            report.t_max,
            verdict(report.passed(0.03))
        ));
        let mut header = point_header("u", n);
        header.extend(["type", "residual", "unreliable"].map(String::from));
        let rows = report
            .rays
            .iter()
            .map(|r| {
                let mut c = point_cells(&r.direction);
                c.extend([num(r.estimate.value), num(r.estimate.residual), r.unreliable.to_string()]);
                c
            })
            .collect();
        table(dir, "type_check.csv", header, rows)?;
    }
    Ok(())
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn flag_name(f: GrowthFlag) -> &'static str {
    match f {
        GrowthFlag::Finite => "finite",
        GrowthFlag::Polynomial => "polynomial",
        GrowthFlag::Infinite => "infinite",
    }
}

#[derive(Serialize)]
struct OrderJson {
    order: Option<f64>,
    flag: &'static str,
    window: (usize, usize),
    points: usize,
    naive: Option<f64>,
    residual: f64,
}

#[derive(Serialize)]
struct TypeJson {
    rho: f64,
    sigma: Option<f64>,
    flag: &'static str,
    window: (usize, usize),
    points: usize,
    naive: Option<f64>,
    residual: f64,
}

#[derive(Serialize)]
struct OrderTypeJson {
    k_max: usize,
    order: OrderJson,
    #[serde(rename = "type")]
    type_: Option<TypeJson>,
}

fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

fn order_json(o: &OrderEstimate) -> OrderJson {
    OrderJson {
        order: finite(o.order),
        flag: flag_name(o.flag),
        window: o.window,
        points: o.points,
        naive: finite(o.naive),
        residual: o.residual,
    }
}

fn type_json(rho: f64, t: &TypeEstimate) -> TypeJson {
    TypeJson {
        rho,
        sigma: finite(t.sigma),
        flag: flag_name(t.flag),
        window: t.window,
        points: t.points,
        naive: finite(t.naive),
        residual: t.residual,
    }
}

fn order_type(cfg: &RunConfig, dir: &mut OutputDir) -> Result<(), CliError> {
    let section = &cfg.order_type;
    let seq = match (&section.coefficients, &section.family) {
        (Some(path), _) => {
            let file = std::fs::File::open(path).map_err(|e| CliError::Config(format!("cannot open {}: {e}", path.display())))?;
            CoefficientSequence::from_complex(&formats::read_coefficients_csv(file)?)
        }
        (None, Some(FamilySpec::Comparison { sigma, rho, k_max })) => {
            if !(*sigma > 0.0 && *rho > 0.0) {
                return Err(CliError::Config("order_type.family: sigma and rho must be positive".into()));
            }
            CoefficientSequence::comparison(*sigma, *rho, *k_max)
        }
        (None, Some(FamilySpec::Exponential { a, k_max })) => CoefficientSequence::exponential(*a, *k_max),
        (None, None) => return Err(CliError::Config("order-type needs `coefficients` or `family`".into())),
    };
    if let Some(r) = section.rho {
        if !(r > 0.0 && r.is_finite()) {
            return Err(CliError::Config("order_type.rho must be positive".into()));
        }
    }
    let order = dir.timed("order", || estimate_order(&seq)).stage("order")?;
    dir.summary(format!("order: {} ({}), naive {}", order.order, flag_name(order.flag), order.naive));
    let rho = match (section.rho, order.flag) {
        (Some(r), _) => Some(r),
        (None, GrowthFlag::Finite) => Some(order.order),
        (None, GrowthFlag::Polynomial) => Some(1.0),
        (None, GrowthFlag::Infinite) => None,
    };
    let type_ = match rho {
        Some(rho) => {
            let t = dir.timed("type", || estimate_type(&seq, rho)).stage("type")?;
            dir.summary(format!("type: {} at order {rho} ({}), naive {}", t.sigma, flag_name(t.flag), t.naive));
            Some(type_json(rho, &t))
        }
        None => {
            dir.summary("type: undefined for infinite order".into());
            None
        }
    };
    dir.write_json("order_type.json", &OrderTypeJson { k_max: seq.k_max(), order: order_json(&order), type_ })
}

fn radon(cfg: &RunConfig, dir: &mut OutputDir) -> Result<(), CliError> {
    let section = &cfg.radon;
    let field = section.field.build()?;
    let dirs = section.directions.build()?;
    if dirs.iter().any(|d| d.len() != field.dimension()) {
        return Err(CliError::Config(format!("directions must have dimension {}", field.dimension())));
    }
    if !(section.spacing > 0.0) {
        return Err(CliError::Config("radon.spacing must be positive".into()));
    }
    let grid = ProfileGrid::for_field(&field, section.spacing);
    let profiles = dir
        .timed("radon", || dirs.par_iter().map(|w| radon_profile(&field, w, &grid)).collect::<Result<Vec<_>, _>>())
        .stage("radon")?;
    dir.summary(format!("radon: {} directions × {} offsets", profiles.len(), grid.points().len()));
    dir.write_with("sinogram.csv", |buf| formats::write_sinogram_csv(&profiles, buf))?;

    let supports =
        profiles.iter().map(|p| detect_support(p, section.threshold)).collect::<Result<Vec<_>, _>>().stage("support")?;
    let max_sigma = supports.iter().map(|s| s.sigma()).fold(0.0, f64::max);
    dir.summary(format!("support: threshold {}, max sigma {max_sigma}", section.threshold));
    let n = field.dimension();
    let mut header = vec!["direction".to_string()];
    header.extend((1..=n).map(|j| format!("w{j}")));
    header.extend(["a", "b", "sigma", "empty"].map(String::from));
    let rows = dirs
        .iter()
        .zip(&supports)
        .enumerate()
        .map(|(i, (w, s))| {
            let mut c = vec![i.to_string()];
            c.extend(w.iter().map(|&x| num(x)));
            c.extend([num(s.a), num(s.b), num(s.sigma()), s.empty.to_string()]);
            c
        })
        .collect();
    table(dir, "supports.csv", header, rows)?;

    if !section.slice_frequencies.is_empty() {
        let jobs: Vec<(usize, f64)> =
            (0..dirs.len()).flat_map(|i| section.slice_frequencies.iter().map(move |&s| (i, s))).collect();
        let quad = SliceQuadrature::default();
        let checks = dir
            .timed("slice", || {
                jobs.par_iter().map(|&(i, s)| fourier_slice_check(&field, &dirs[i], s, &quad)).collect::<Result<Vec<_>, _>>()
            })
            .stage("slice")?;
        let worst = checks.iter().map(|c| c.discrepancy).fold(0.0, f64::max);
        dir.summary(format!("slice: {} checks, max discrepancy {worst:e}", checks.len()));
        let rows = jobs
            .iter()
            .zip(&checks)
            .map(|(&(i, s), c)| {
                let mut r = vec![i.to_string(), num(s)];
                r.extend(complex_cells(c.lhs));
                r.extend(complex_cells(c.rhs));
                r.push(num(c.discrepancy));
                r
            })
            .collect();
        table(
            dir,
            "slice.csv",
            ["direction", "s", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "discrepancy"].map(String::from).to_vec(),
            rows,
        )?;
    }
    Ok(())
}

#[derive(Serialize)]
struct LocateJson {
    verdict: &'static str,
    samples: usize,
    contained: usize,
    margin: f64,
    refined_contained: Option<usize>,
    max_sigma: f64,
    /// Refined bodies assume the support data vary semicontinuously and that
    /// the direction set is the closure of its interior.
    refined_conditional: bool,
    sensitivity: Vec<(f64, f64)>,
}

fn locate(cfg: &RunConfig, dir: &mut OutputDir) -> Result<(), CliError> {
    let section = &cfg.locate;
    let field = section.field.build()?;
    let n = field.dimension();
    let dirs = section.directions.build()?;
    if dirs.iter().any(|d| d.len() != n) {
        return Err(CliError::Config(format!("directions must have dimension {n}")));
    }
    if !(section.spacing > 0.0) || !(section.threshold > 0.0 && section.threshold < 1.0) {
        return Err(CliError::Config("locate: spacing must be positive and threshold in (0, 1)".into()));
    }
    let mut opts = PipelineOptions::new(n);
    opts.threshold = section.threshold;
    opts.spacing = section.spacing;
    opts.support_samples = section.support_samples;
    opts.solver = cfg.solver.build()?;
    opts.refine = section.refine;
    opts.grid = match section.grid {
        Some(g) if g >= 3 => sampling::real_sphere(n, g),
        Some(_) => return Err(CliError::Config("locate.grid needs at least 3 directions".into())),
        None => default_grid(n),
    };
    let report = dir
        .timed("pipeline", || helgason_pipeline_with(&field, &dirs, &opts, parallel::support_offsets))
        .map_err(|e| CliError::stage(e.stage.to_string(), e.error))?;
    let max_sigma = report.sigma.iter().copied().fold(0.0, f64::max);
    dir.summary(format!("radon: {} directions", dirs.len()));
    dir.summary(format!("support: threshold {}, max sigma {max_sigma}", section.threshold));
    dir.summary(format!("localize: {} grid directions, {} half-spaces", opts.grid.len(), report.body.halfspaces().len()));
    if let Some(r) = &report.refined {
        dir.summary(format!(
            "refine: {} half-spaces, {}/{} samples contained (conditional)",
            r.halfspaces().len(),
            report.refined_contained.unwrap_or(0),
            report.samples
        ));
    }
    let ok = report.all_contained();
    dir.summary(format!(
        "containment: {}/{} support samples, margin {}: {}",
        report.contained,
        report.samples,
        report.margin,
        verdict(ok)
    ));

    dir.write_json("body.json", &BodyJson::from_body(&report.body))?;
    if let Some(p) = report.body.polygon() {
        dir.write_with("polygon.csv", |buf| formats::write_polygon_csv(p, buf))?;
    }
    if let Some(r) = &report.refined {
        dir.write_json("refined_body.json", &BodyJson::from_body(r))?;
        if let Some(p) = r.polygon() {
            dir.write_with("refined_polygon.csv", |buf| formats::write_polygon_csv(p, buf))?;
        }
    }
    let mut header = vec!["direction".to_string()];
    header.extend((1..=n).map(|j| format!("w{j}")));
    header.extend(["a", "b", "sigma"].map(String::from));
    let rows = dirs
        .iter()
        .zip(&report.intervals)
        .enumerate()
        .map(|(i, (w, s))| {
            let mut c = vec![i.to_string()];
            c.extend(w.iter().map(|&x| num(x)));
            c.extend([num(s.a), num(s.b), num(s.sigma())]);
            c
        })
        .collect();
    table(dir, "intervals.csv", header, rows)?;
    let rows = report.sensitivity.iter().map(|(e, s)| vec![num(*e), num(*s)]).collect();
    table(dir, "sensitivity.csv", vec!["threshold".into(), "max_sigma".into()], rows)?;

    if section.indicator_check {
        let grid = RayGrid { t_max: 200.0, samples: 32 };
        let checks = dir
            .timed("indicator", || {
                dirs.par_iter()
                    .zip(&report.intervals)
                    .map(|(w, iv)| indicator_support_check(&field, w, iv, &grid, 0.02))
                    .collect::<Result<Vec<_>, _>>()
            })
            .stage("indicator")?;
        let passed = checks.iter().filter(|c| c.passed()).count();
        dir.summary(format!("indicator: {passed}/{} directions consistent with the intervals", checks.len()));
        let rows = checks
            .iter()
            .enumerate()
            .map(|(i, c)| {
                vec![
                    i.to_string(),
                    num(c.plus.value),
                    num(c.b),
                    num(c.minus.value),
                    num(-c.a),
                    c.passed().to_string(),
                    c.unreliable.to_string(),
                ]
            })
            .collect();
        table(
            dir,
            "indicator.csv",
            ["direction", "plus", "b", "minus", "minus_a", "passed", "unreliable"].map(String::from).to_vec(),
            rows,
        )?;
    }
    dir.write_json(
        "locate.json",
        &LocateJson {
            verdict: verdict(ok),
            samples: report.samples,
            contained: report.contained,
            margin: report.margin,
            refined_contained: report.refined_contained,
            max_sigma,
            refined_conditional: report.refined.is_some(),
            sensitivity: report.sensitivity.clone(),
        },
    )
}
