use extremal_core::entire::{
    cauchy_bound, comparison_series, estimate_growth, estimate_order, estimate_type, indicator_estimate, CoefficientSequence,
    GrowthFlag, RayGrid,
};
use extremal_core::poly::ComplexPoint;
use num_complex::Complex64;
use proptest::prelude::*;

fn log_factorial(k: usize) -> f64 {
    (2..=k).map(|j| (j as f64).ln()).sum()
}

// log of (eσρ/k)^{k/ρ}, with the k = 0 term equal to one
fn log_comparison(sigma: f64, rho: f64, k: usize) -> f64 {
    if k == 0 {
        0.0
    } else {
        (k as f64 / rho) * (std::f64::consts::E * sigma * rho / k as f64).ln()
    }
}

#[test]
fn comparison_grid_recovers_order_and_type() {
    for rho in [0.5, 1.0, 2.0] {
        for sigma in [0.5, 1.0, 2.0] {
            let logs: Vec<f64> = (0..=400).map(|k| log_comparison(sigma, rho, k)).collect();
            let c = CoefficientSequence::from_log_abs(logs).unwrap();
            let g = estimate_growth(&c).unwrap();
            assert_eq!(g.order.flag, GrowthFlag::Finite);
            assert!((g.order.order / rho - 1.0).abs() < 0.03, "ρ={rho} σ={sigma}: {}", g.order.order);
            assert!((g.sigma.sigma / sigma - 1.0).abs() < 0.03, "ρ={rho} σ={sigma}: {}", g.sigma.sigma);
        }
    }
}

#[test]
fn comparison_constructor_matches_formula() {
    let c = CoefficientSequence::comparison(1.5, 2.0, 50);
    for (k, l) in c.log_abs().iter().enumerate() {
        assert!((l - log_comparison(1.5, 2.0, k)).abs() < 1e-12 * (1.0 + l.abs()));
    }
}

#[test]
fn stirling_families() {
    let inv_fact: Vec<f64> = (0..=200).map(|k| -log_factorial(k)).collect();
    let c = CoefficientSequence::from_log_abs(inv_fact).unwrap();
    assert!((estimate_order(&c).unwrap().order - 1.0).abs() < 0.02);
    let a: f64 = 2.5;
    let logs: Vec<f64> = (0..=200).map(|k| k as f64 * a.ln() - log_factorial(k)).collect();
    let c = CoefficientSequence::from_log_abs(logs).unwrap();
    assert!((estimate_type(&c, 1.0).unwrap().sigma / a - 1.0).abs() < 0.03);
    let rho2: Vec<f64> = (0..=200).map(|k| log_comparison(1.0, 2.0, k)).collect();
    assert!((estimate_order(&CoefficientSequence::from_log_abs(rho2).unwrap()).unwrap().order / 2.0 - 1.0).abs() < 0.02);
}

#[test]
fn polynomial_sequences() {
    let mut c = vec![0.0; 30];
    c[0] = 1.0;
    c[1] = -2.0;
    c[2] = 0.5;
    let s = CoefficientSequence::from_real(&c);
    let o = estimate_order(&s).unwrap();
    assert_eq!((o.flag, o.order), (GrowthFlag::Polynomial, 0.0));
    let t = estimate_type(&s, 1.0).unwrap();
    assert_eq!(t.sigma, 0.0);
}

#[test]
fn cauchy_bound_dominates_exponential_coefficients() {
    for sigma in [0.3, 1.0, 4.0] {
        for k in 0..=100 {
            let c = (k as f64 * f64::ln(sigma) - log_factorial(k)).exp();
            assert!(c <= cauchy_bound(1.0, sigma, 1.0, k) * (1.0 + 1e-12));
        }
    }
    assert_eq!(cauchy_bound(3.0, 1.0, 1.0, 0), 3.0);
    assert!((cauchy_bound(1.0, 1.0, 1.0, 1) - std::f64::consts::E).abs() < 1e-14);
    assert!((cauchy_bound(1.0, 2.0, 2.0, 4) - std::f64::consts::E.powi(2)).abs() < 1e-12);
}

// Laplace's method on the largest term of Σ (eσρ/k)^{k/ρ} r^k.
fn laplace_log_sum(sigma: f64, rho: f64, r: f64) -> f64 {
    let x = sigma * r.powf(rho);
    x + 0.5 * (2.0 * std::f64::consts::PI * rho * rho * x).ln()
}

#[test]
fn comparison_series_growth() {
    assert_eq!(comparison_series(2.0, 1.0, 1.0, 0.0).unwrap().value, 2.0);
    let a = comparison_series(1.0, 1.0, 1.0, 1.0).unwrap().value;
    let b = comparison_series(1.0, 1.0, 1.0, 2.0).unwrap().value;
    assert!(b > a);
    for (sigma, rho, r) in [(0.7, 1.0, 50.0), (1.2, 2.0, 10.0), (0.5, 0.5, 400.0)] {
        let s = comparison_series(1.0, sigma, rho, r).unwrap();
        let o = laplace_log_sum(sigma, rho, r);
        assert!((s.log_value - o).abs() < 0.02 * o / (sigma * r.powf(rho)) + 1e-3 * o, "{} vs {o}", s.log_value);
    }
    // the normalized log approaches σ
    let s = comparison_series(1.0, 0.7, 1.0, 5000.0).unwrap();
    assert!((s.log_value / 5000.0 / 0.7 - 1.0).abs() < 0.01);
    assert!(s.overflow || s.value.is_finite());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn indicator_of_exponential(a in (-2.0f64..2.0, -2.0f64..2.0), z in (-1.0f64..1.0, -1.0f64..1.0)) {
        let a = Complex64::new(a.0, a.1);
        let zeta = ComplexPoint::new(vec![Complex64::new(z.0, z.1)]);
        let f = |w: &ComplexPoint| (a * w.coords()[0]).exp();
        let grid = RayGrid { t_max: 100.0, samples: 16 };
        let est = indicator_estimate(f, &zeta, 1.0, &grid).unwrap();
        let exact = (a * zeta.coords()[0]).re;
        prop_assert!((est.value - exact).abs() < 1e-6 * (1.0 + exact.abs()));
        let doubled = indicator_estimate(f, &zeta.scale_real(2.0), 1.0, &grid).unwrap();
        prop_assert!((doubled.value - 2.0 * est.value).abs() < 1e-6 * (1.0 + est.value.abs()));
    }
}

#[test]
fn indicator_examples() {
    let grid = RayGrid::default();
    let one = ComplexPoint::new(vec![Complex64::new(1.0, 0.0)]);
    let e = indicator_estimate(|w: &ComplexPoint| (1.5 * w.coords()[0]).exp(), &one, 1.0, &grid).unwrap();
    assert!((e.value - 1.5).abs() < 0.015);
    let i = ComplexPoint::new(vec![Complex64::new(0.0, 1.0)]);
    let e = indicator_estimate(|w: &ComplexPoint| (-Complex64::i() * w.coords()[0]).exp(), &i, 1.0, &grid).unwrap();
    assert!((e.value - 1.0).abs() < 0.01);
    let p = indicator_estimate(|w: &ComplexPoint| w.coords()[0].powi(3) + 1.0, &one, 1.0, &grid).unwrap();
    assert!(p.value.abs() < 0.05);
    // ρ = 2: e^{w²} along the real axis grows like t²
    let e2 = indicator_estimate(
        |w: &ComplexPoint| (w.coords()[0] * w.coords()[0]).exp(),
        &one,
        2.0,
        &RayGrid { t_max: 20.0, samples: 16 },
    )
    .unwrap();
    assert!((e2.value - 1.0).abs() < 1e-6);
}
