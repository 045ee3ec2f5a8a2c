use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use extremal::parallel;
use extremal_core::entire::{estimate_growth, CoefficientSequence, GrowthFlag};
use extremal_core::extension::{bound_check, extend, type_bound_check, ExtensionError, LineSeriesData, RecoveryOptions};
use extremal_core::extremal::{
    baran_psi, capacity_homog, psi_eval, psi_grid, ExtremalEvalResult, ExtremalSolver, PsiError, QuadratureConfig, SolverConfig,
    WeightedDirectionSet,
};
use extremal_core::localize::{helgason_pipeline, localize, PipelineOptions};
use extremal_core::norms::{cross_norm_euclidean, cross_norm_via_bilinear, cross_norm_via_distance, cross_norm_via_real_parts};
use extremal_core::poly::ComplexPoint;
use extremal_core::radon::{
    detect_support, fourier_slice_check, radon_profile, FieldComponent, FieldFamily, ProfileGrid, ScalarFieldDescriptor,
    SliceQuadrature,
};
use extremal_core::sampling;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use sha2::{Digest, Sha256};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian_point(r: &mut ChaCha8Rng, n: usize) -> ComplexPoint {
    ComplexPoint::new((0..n).map(|_| Complex64::new(r.sample(StandardNormal), r.sample(StandardNormal))).collect())
}

fn unit_point(r: &mut ChaCha8Rng, n: usize) -> ComplexPoint {
    let z = gaussian_point(r, n);
    z.scale_real(1.0 / z.norm())
}

fn unit_real(r: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let v: Vec<f64> = (0..n).map(|_| r.sample(StandardNormal)).collect();
    let s = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.into_iter().map(|x| x / s).collect()
}

fn solver_cfg(k: usize) -> SolverConfig {
    SolverConfig { max_degree: k, ..SolverConfig::default() }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

// |a| + |b| from the singular values of the n×2 matrix [Re ζ, Im ζ], via a
// Jacobi rotation of its Gram matrix
fn cross_norm_oracle(z: &ComplexPoint) -> f64 {
    let (re, im) = (z.real_part(), z.imag_part());
    let xx: f64 = re.iter().map(|x| x * x).sum();
    let yy: f64 = im.iter().map(|x| x * x).sum();
    let xy: f64 = re.iter().zip(&im).map(|(a, b)| a * b).sum();
    let phi = 0.5 * (2.0 * xy).atan2(xx - yy);
    let (c, s) = (phi.cos(), phi.sin());
    let n = |w: Vec<f64>| w.iter().map(|t| t * t).sum::<f64>().sqrt();
    n(re.iter().zip(&im).map(|(x, y)| c * x + s * y).collect()) + n(re.iter().zip(&im).map(|(x, y)| -s * x + c * y).collect())
}

fn cross_norms() -> Outcome {
    let mut r = rng(1);
    let mut worst: f64 = 0.0;
    for n in [2, 3] {
        for _ in 0..1000 {
            let z = gaussian_point(&mut r, n);
            let o = cross_norm_oracle(&z);
            for v in [
                cross_norm_via_bilinear(&z),
                cross_norm_via_distance(&z),
                cross_norm_via_real_parts(&z),
                cross_norm_euclidean(&z),
            ] {
                worst = worst.max(rel(v, o));
            }
        }
    }
    ensure(worst <= 1e-10, || format!("forms disagree by {worst:e}"))?;

    let mut eq: f64 = 0.0;
    for n in [2, 3] {
        for _ in 0..200 {
            let x: Vec<f64> = (0..n).map(|_| r.sample(StandardNormal)).collect();
            let t = Complex64::new(r.sample(StandardNormal), r.sample(StandardNormal));
            let cr = ComplexPoint::from_real(&x).scale(t);
            eq = eq.max(rel(cross_norm_euclidean(&cr), cr.norm()));
            // a ⊥ b, |a| = |b|
            let a = unit_real(&mut r, n);
            let b0 = unit_real(&mut r, n);
            let d: f64 = a.iter().zip(&b0).map(|(u, v)| u * v).sum();
            let b = b0.iter().zip(&a).map(|(v, u)| v - d * u).collect::<Vec<_>>();
            let bn = b.iter().map(|x| x * x).sum::<f64>().sqrt();
            let b: Vec<f64> = b.iter().map(|x| x / bn).collect();
            let iso = ComplexPoint::from_parts(&a, &b).scale(t);
            eq = eq.max(rel(cross_norm_euclidean(&iso), SQRT_2 * iso.norm()));
        }
    }
    ensure(eq <= 1e-10, || format!("equality cases off by {eq:e}"))?;
    Ok(format!("max rel diff {worst:.1e}, equality cases {eq:.1e}"))
}

fn circle_psi() -> Outcome {
    let solver = ExtremalSolver::new(&WeightedDirectionSet::real_circle(256), &solver_cfg(8)).map_err(|e| e.to_string())?;
    let mut r = rng(2);
    let mut worst: f64 = 0.0;
    for i in 0..50 {
        let z = gaussian_point(&mut r, 2);
        let res = solver.eval(&z).map_err(|e| e.to_string())?;
        let o = cross_norm_oracle(&z);
        worst = worst.max(rel(res.value, o));
        ensure(res.certified <= o * (1.0 + 1e-12), || format!("point {i}: certified {} above {o}", res.certified))?;
    }
    ensure(worst <= 0.05, || format!("max rel error {worst:.4}"))?;
    Ok(format!("max rel error {worst:.4}"))
}

fn sphere_capacity() -> Outcome {
    let est = capacity_homog(&WeightedDirectionSet::real_circle(256), &solver_cfg(8), 200).map_err(|e| e.to_string())?;
    let err = rel(est.capacity, 1.0 / SQRT_2);
    ensure(!est.zero_flag && err <= 0.05, || format!("capacity {} (rel error {err:.4})", est.capacity))?;
    Ok(format!("capacity {:.5}, rel error {err:.4}", est.capacity))
}

fn complex_ball() -> Outcome {
    let solver =
        ExtremalSolver::new(&WeightedDirectionSet::complex_unit_sphere(2, 400), &solver_cfg(1)).map_err(|e| e.to_string())?;
    let mut r = rng(4);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let z = gaussian_point(&mut r, 2);
        worst = worst.max(rel(solver.eval(&z).map_err(|e| e.to_string())?.value, z.norm()));
    }
    ensure(worst <= 0.02, || format!("max rel error {worst:.4}"))?;
    Ok(format!("max rel error {worst:.4}"))
}

fn poisson_integral() -> Outcome {
    let disc = |x: &[f64]| x[0].hypot(x[1]);
    let quad = QuadratureConfig::default();
    let solver = ExtremalSolver::new(&WeightedDirectionSet::real_circle(256), &solver_cfg(8)).map_err(|e| e.to_string())?;
    let mut r = rng(5);
    let (mut worst, mut count): (f64, usize) = (0.0, 0);
    while count < 20 {
        let z = gaussian_point(&mut r, 2);
        if (z.coords()[1] / z.coords()[0]).im.abs() < 1e-2 {
            continue;
        }
        let b = baran_psi(disc, &z, &quad).map_err(|e| e.to_string())?;
        let s = solver.eval(&z).map_err(|e| e.to_string())?.value;
        worst = worst.max(rel(s, b));
        count += 1;
    }
    ensure(worst <= 0.05, || format!("solver vs Poisson integral {worst:.4}"))?;
    let mut real: f64 = 0.0;
    for _ in 0..20 {
        let xi: f64 = 4.0 * r.sample::<f64, _>(StandardNormal);
        let z = ComplexPoint::from_real(&[1.0, xi]);
        real = real.max((baran_psi(disc, &z, &quad).map_err(|e| e.to_string())? - disc(&[1.0, xi])).abs());
    }
    ensure(real <= 1e-4, || format!("real points off by {real:e}"))?;
    Ok(format!("complex points max rel diff {worst:.4}, real points {real:.1e}"))
}

// log of (eσρ/k)^{k/ρ}, with the k = 0 term equal to one
fn log_comparison(sigma: f64, rho: f64, k: usize) -> f64 {
    if k == 0 {
        0.0
    } else {
        (k as f64 / rho) * (std::f64::consts::E * sigma * rho / k as f64).ln()
    }
}

fn comparison_family() -> Outcome {
    let (mut eo, mut et): (f64, f64) = (0.0, 0.0);
    for rho in [0.5, 1.0, 2.0] {
        for sigma in [0.5, 1.0, 2.0] {
            let c = CoefficientSequence::from_log_abs((0..=400).map(|k| log_comparison(sigma, rho, k)).collect())
                .map_err(|e| e.to_string())?;
            let g = estimate_growth(&c).map_err(|e| e.to_string())?;
            ensure(g.order.flag == GrowthFlag::Finite, || format!("ρ={rho} σ={sigma}: flag {:?}", g.order.flag))?;
            eo = eo.max(rel(g.order.order, rho));
            et = et.max(rel(g.sigma.sigma, sigma));
        }
    }
    ensure(eo <= 0.03 && et <= 0.03, || format!("order error {eo:.4}, type error {et:.4}"))?;
    Ok(format!("max rel error order {eo:.1e}, type {et:.1e}"))
}

fn quarter_arc(count: usize) -> Vec<ComplexPoint> {
    sampling::arc(0.0, FRAC_PI_2, count).into_iter().map(|p| ComplexPoint::from_real(&p)).collect()
}

fn extension_round_trip() -> Outcome {
    let a = ComplexPoint::from_real(&[1.0, 0.5]);
    let data = LineSeriesData::exponential(&a, quarter_arc(64), 20).map_err(|e| e.to_string())?;
    let ext = extend(&data, &RecoveryOptions::default()).map_err(|e| e.to_string())?;
    let mut r = rng(7);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let z = unit_point(&mut r, 2).scale_real(r.random::<f64>());
        let exact = a.bilinear(&z).exp();
        worst = worst.max((ext.eval(&z) - exact).norm() / exact.norm());
    }
    ensure(worst <= 1e-6, || format!("round trip error {worst:e}"))?;
    let probes: Vec<ComplexPoint> = (0..4).map(|_| unit_point(&mut r, 2)).collect();
    let report = bound_check(&ext, &data, &probes, &SolverConfig::default()).map_err(|e| e.to_string())?;
    ensure(report.min_margin >= 0.0, || format!("bound check margin {}", report.min_margin))?;

    let c = |x: f64| Complex64::new(x, 0.0);
    let opposite = vec![ComplexPoint::from_real(&[1.0, 0.0]), ComplexPoint::from_real(&[-1.0, 0.0])];
    let parity = LineSeriesData::new(opposite, vec![vec![c(1.0), c(1.0)]; 2], None).map_err(|e| e.to_string())?;
    match extend(&parity, &RecoveryOptions::default()) {
        Err(ExtensionError::IncompatibleData { .. }) => {}
        other => return Err(format!("parity-obstructed data gave {other:?}")),
    }
    Ok(format!("max rel error {worst:.1e}, bound margin {:.2e}, parity rejected", report.min_margin))
}

fn type_bound() -> Outcome {
    let a = ComplexPoint::from_real(&[1.0, 0.5]);
    let data = LineSeriesData::exponential(&a, quarter_arc(64), 20).map_err(|e| e.to_string())?;
    let ext = extend(&data, &RecoveryOptions::default()).map_err(|e| e.to_string())?;
    let sigma_m = data.growth().ok_or("no growth claim")?.sigma_max();
    let mut r = rng(8);
    let rays: Vec<ComplexPoint> = (0..20).map(|_| unit_point(&mut r, 2)).collect();
    let report = type_bound_check(&ext, sigma_m, &rays, 24).map_err(|e| e.to_string())?;
    ensure(report.passed(0.03), || format!("max type {} vs bound {}", report.max_observed, report.bound))?;
    Ok(format!("max type {:.4}, bound √2σ_m = {:.4}", report.max_observed, report.bound))
}

fn random_field(r: &mut ChaCha8Rng, n: usize) -> ScalarFieldDescriptor {
    let family = [FieldFamily::Gaussian, FieldFamily::SmoothedBall, FieldFamily::BumpSum][r.random_range(0..3)];
    let edge = r.random_range(0.1..0.3);
    let comps = (0..r.random_range(1..3))
        .map(|_| {
            let c = (0..n).map(|_| r.random_range(-0.6..0.6)).collect();
            let mut radius = r.random_range(0.4..1.2);
            if family == FieldFamily::SmoothedBall {
                radius = f64::max(radius, edge + 0.05);
            }
            FieldComponent::new(c, radius, r.random_range(-1.5..1.5))
        })
        .collect();
    ScalarFieldDescriptor::new(family, comps, edge).unwrap()
}

fn fourier_slice() -> Outcome {
    let quad = SliceQuadrature::default();
    let mut r = rng(9);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let n = r.random_range(2..4);
        let f = random_field(&mut r, n);
        let w = unit_real(&mut r, n);
        let s = r.random_range(-10.0..10.0);
        worst = worst.max(fourier_slice_check(&f, &w, s, &quad).map_err(|e| e.to_string())?.discrepancy);
    }
    ensure(worst < 1e-5, || format!("discrepancy {worst:e}"))?;
    let g = ScalarFieldDescriptor::standard_gaussian(2);
    let mut gauss: f64 = 0.0;
    for s in [0.0, 0.5, 1.0, 2.5, 4.0, -3.0] {
        let w = unit_real(&mut r, 2);
        let c = fourier_slice_check(&g, &w, s, &quad).map_err(|e| e.to_string())?;
        let exact = Complex64::new(PI * (-s * s / 4.0).exp(), 0.0);
        gauss = gauss.max((c.lhs - exact).norm()).max((c.rhs - exact).norm());
    }
    ensure(gauss <= 1e-6, || format!("Gaussian slice off by {gauss:e}"))?;
    Ok(format!("max discrepancy {worst:.1e}, Gaussian {gauss:.1e}"))
}

fn support_localization() -> Outcome {
    let disc = ScalarFieldDescriptor::smoothed_ball(vec![0.0, 0.0], 1.0, 0.2).map_err(|e| e.to_string())?;
    let opts = PipelineOptions::new(2);
    let full: Vec<Vec<f64>> = sampling::circle(128, 0.0).iter().map(|p| p.to_vec()).collect();
    let rf = helgason_pipeline(&disc, &full, &opts).map_err(|e| e.to_string())?;
    let h = rf.body.hausdorff_to_disc([0.0, 0.0], 1.0).ok_or("no polygon")?;
    ensure(h <= 0.02, || format!("full circle: Hausdorff distance {h:.4}"))?;

    let quarter: Vec<Vec<f64>> = sampling::arc(0.0, FRAC_PI_2, 64).iter().map(|p| p.to_vec()).collect();
    let rq = helgason_pipeline(&disc, &quarter, &opts).map_err(|e| e.to_string())?;
    ensure(rq.samples == 500 && rq.all_contained(), || format!("quarter arc: {}/{} contained", rq.contained, rq.samples))?;
    for (name, rep) in [("full", &rf), ("quarter", &rq)] {
        let refined = rep.refined.as_ref().ok_or("no refined body")?;
        ensure(refined.vertices_within(&rep.body, 1e-9) == Some(true), || format!("{name}: refined body leaves the body"))?;
    }

    let base = WeightedDirectionSet::from_real_directions(&quarter, rq.sigma.clone()).map_err(|e| e.to_string())?;
    let b1 = localize(&base, &opts.grid, &opts.solver).map_err(|e| e.to_string())?;
    let mut worst: f64 = 0.0;
    for c in [0.5, 2.0, 3.0] {
        let scaled = base.scale_weights(c).map_err(|e| e.to_string())?;
        let bc = localize(&scaled, &opts.grid, &opts.solver).map_err(|e| e.to_string())?;
        for (h1, hc) in b1.halfspaces().iter().zip(bc.halfspaces()) {
            worst = worst.max((hc.offset - c * h1.offset).abs() / h1.offset.abs().max(1.0));
        }
    }
    ensure(worst <= 1e-6, || format!("σ-scaling off by {worst:e}"))?;
    Ok(format!("Hausdorff {h:.4}, quarter arc 500/500 contained, refined ⊆ body, scaling error {worst:.1e}"))
}

fn base_set(r: &mut ChaCha8Rng) -> WeightedDirectionSet {
    let pts = sampling::circle(12, r.random::<f64>()).into_iter().map(|p| ComplexPoint::from_real(&p)).collect();
    WeightedDirectionSet::unweighted(pts).unwrap()
}

fn hash_results(results: &[Result<ExtremalEvalResult, PsiError>]) -> String {
    let mut h = Sha256::new();
    for res in results {
        match res {
            Ok(v) => {
                h.update(v.value.to_bits().to_le_bytes());
                h.update(v.certified.to_bits().to_le_bytes());
                for d in &v.per_degree {
                    h.update(d.value.to_bits().to_le_bytes());
                }
                for c in v.polynomial.iter().flat_map(|p| p.coefficients()) {
                    h.update(c.re.to_bits().to_le_bytes());
                    h.update(c.im.to_bits().to_le_bytes());
                }
            }
            Err(e) => h.update(e.to_string().as_bytes()),
        }
    }
    hex::encode(h.finalize())
}

fn properties() -> Outcome {
    const TRIALS: usize = 200;
    let cfg = solver_cfg(3);
    let mut r = rng(11);
    let eval = |set: &WeightedDirectionSet, z: &ComplexPoint| psi_eval(set, z, &cfg).map_err(|e| e.to_string());

    for i in 0..TRIALS {
        let set = base_set(&mut r);
        let z = gaussian_point(&mut r, 2);
        let t = Complex64::new(r.random_range(-3.0..3.0), r.random_range(-3.0..3.0));
        let (a, b) = (eval(&set, &z)?, eval(&set, &z.scale(t))?);
        for (da, db) in a.per_degree.iter().zip(&b.per_degree) {
            ensure((db.value - t.norm() * da.value).abs() <= 1e-8 * (1.0 + db.value), || {
                format!("homogeneity trial {i}, degree {}", da.degree)
            })?;
        }
    }
    for i in 0..TRIALS {
        let set = base_set(&mut r);
        let extra = (0..r.random_range(1..6)).map(|_| gaussian_point(&mut r, 2)).collect();
        let big = set.union(&WeightedDirectionSet::unweighted(extra).unwrap()).unwrap();
        let z = gaussian_point(&mut r, 2);
        let (a, b) = (eval(&set, &z)?.value, eval(&big, &z)?.value);
        ensure(b <= a * (1.0 + 1e-7) + 1e-12, || format!("E-monotonicity trial {i}: {b} > {a}"))?;
    }
    for i in 0..TRIALS {
        let set = base_set(&mut r);
        let heavy = set.with_weights((0..set.len()).map(|_| 1.0 + r.random::<f64>()).collect()).unwrap();
        let z = gaussian_point(&mut r, 2);
        let (a, b) = (eval(&set, &z)?.value, eval(&heavy, &z)?.value);
        ensure(b >= a * (1.0 - 1e-7), || format!("weight monotonicity trial {i}: {b} < {a}"))?;
    }
    for i in 0..TRIALS {
        let n = r.random_range(2..4);
        let f = random_field(&mut r, n);
        let w = unit_real(&mut r, n);
        let prof = radon_profile(&f, &w, &ProfileGrid::for_field(&f, 0.05)).map_err(|e| e.to_string())?;
        let e1 = 10f64.powf(r.random_range(-9.0..-2.0));
        let e2 = (e1 * r.random_range(1.0..100.0)).min(0.9);
        let wide = detect_support(&prof, e1).map_err(|e| e.to_string())?;
        let narrow = detect_support(&prof, e2).map_err(|e| e.to_string())?;
        ensure(wide.a <= narrow.a && narrow.b <= wide.b && narrow.a <= narrow.b, || format!("nested supports trial {i}"))?;
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(4).build().map_err(|e| e.to_string())?;
    for i in 0..TRIALS {
        let set = base_set(&mut r);
        let grid: Vec<ComplexPoint> = (0..4).map(|_| gaussian_point(&mut r, 2)).collect();
        let serial = hash_results(&psi_grid(&set, &grid, &cfg).map_err(|e| e.to_string())?);
        let threaded = hash_results(&pool.install(|| parallel::psi_grid(&set, &grid, &cfg)).map_err(|e| e.to_string())?);
        let again = hash_results(&psi_grid(&set, &grid, &cfg).map_err(|e| e.to_string())?);
        ensure(serial == threaded && serial == again, || format!("determinism trial {i}: hashes differ"))?;
    }
    Ok(format!("{TRIALS} trials each, 0 violations"))
}

struct Criterion {
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion { name: "cross-norm identities", budget: secs(1), run: cross_norms },
        Criterion { name: "circle extremal function vs cross norm", budget: secs(300), run: circle_psi },
        Criterion { name: "capacity of the circle", budget: secs(300), run: sphere_capacity },
        Criterion { name: "complex ball, degree one", budget: secs(60), run: complex_ball },
        Criterion { name: "Poisson-integral cross-check", budget: secs(120), run: poisson_integral },
        Criterion { name: "order and type on the comparison family", budget: secs(10), run: comparison_family },
        Criterion { name: "extension round trip", budget: secs(120), run: extension_round_trip },
        Criterion { name: "type along complex rays", budget: secs(120), run: type_bound },
        Criterion { name: "Fourier slice", budget: secs(120), run: fourier_slice },
        Criterion { name: "support localization", budget: secs(600), run: support_localization },
        Criterion { name: "property suites", budget: secs(600), run: properties },
    ];
    let mut failed = 0;
    for (i, c) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(d) if elapsed <= c.budget => (true, d),
            Ok(d) => (false, format!("{d}; over the {}s budget", c.budget.as_secs())),
            Err(d) => (false, d),
        };
        failed += usize::from(!ok);
        println!("{} {:>2} {}: {} [{:.2}s]", if ok { "PASS" } else { "FAIL" }, i + 1, c.name, detail, elapsed.as_secs_f64());
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
