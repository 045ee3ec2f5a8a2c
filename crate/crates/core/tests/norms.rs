use extremal_core::norms::{
    ab_decompose, cross_norm_euclidean, cross_norm_general, cross_norm_via_bilinear, cross_norm_via_distance,
    cross_norm_via_real_parts, dist_to_complexified_reals, interval_support, IntervalSupportFn,
};
use extremal_core::poly::ComplexPoint;
use num_complex::Complex64;
use proptest::prelude::*;

// |ζ|_c = |a| + |b| with ζ = e^{iθ}(a + ib), a ⊥ b: the larger and smaller
// singular values of the n×2 matrix [ξ η], found from the 2×2 Gram matrix
// by a Jacobi rotation.
fn oracle(re: &[f64], im: &[f64]) -> f64 {
    let xx: f64 = re.iter().map(|x| x * x).sum();
    let yy: f64 = im.iter().map(|x| x * x).sum();
    let xy: f64 = re.iter().zip(im).map(|(a, b)| a * b).sum();
    let phi = 0.5 * (2.0 * xy).atan2(xx - yy);
    let (c, s) = (phi.cos(), phi.sin());
    let u: Vec<f64> = re.iter().zip(im).map(|(x, y)| c * x + s * y).collect();
    let v: Vec<f64> = re.iter().zip(im).map(|(x, y)| -s * x + c * y).collect();
    let n = |w: &[f64]| w.iter().map(|t| t * t).sum::<f64>().sqrt();
    n(&u) + n(&v)
}

fn point() -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
    (1usize..5).prop_flat_map(|n| (prop::collection::vec(-3.0f64..3.0, n), prop::collection::vec(-3.0f64..3.0, n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn three_forms_agree((re, im) in point()) {
        let z = ComplexPoint::from_parts(&re, &im);
        let o = oracle(&re, &im);
        let tol = 1e-10 * (1.0 + o);
        prop_assert!((cross_norm_euclidean(&z) - o).abs() <= tol);
        prop_assert!((cross_norm_via_distance(&z) - o).abs() <= tol);
        prop_assert!((cross_norm_via_real_parts(&z) - o).abs() <= tol);
        // the literal |⟨ζ,ζ⟩| form cancels near C·R^n; compare it away from there
        let d = dist_to_complexified_reals(&z);
        if d > 1e-3 * z.norm() {
            prop_assert!((cross_norm_via_bilinear(&z) - o).abs() <= tol);
        }
    }

    #[test]
    fn bounds_and_homogeneity((re, im) in point(), t in (-3.0f64..3.0, -3.0f64..3.0)) {
        let z = ComplexPoint::from_parts(&re, &im);
        let c = cross_norm_euclidean(&z);
        let n = z.norm();
        prop_assert!(n <= c * (1.0 + 1e-12) + 1e-300);
        prop_assert!(c <= 2f64.sqrt() * n * (1.0 + 1e-12) + 1e-300);
        let t = Complex64::new(t.0, t.1);
        prop_assert!((cross_norm_euclidean(&z.scale(t)) - t.norm() * c).abs() <= 1e-10 * (1.0 + t.norm() * c));
    }

    #[test]
    fn decomposition_invariants((re, im) in point()) {
        let z = ComplexPoint::from_parts(&re, &im);
        let d = ab_decompose(&z);
        let ab: f64 = d.a.iter().zip(&d.b).map(|(x, y)| x * y).sum();
        prop_assert!(ab.abs() <= 1e-10 * (1.0 + z.norm_sqr()));
        prop_assert!(d.b_norm() <= d.a_norm() + 1e-12);
        let back = d.reconstruct();
        for (u, v) in back.coords().iter().zip(z.coords()) {
            prop_assert!((u - v).norm() <= 1e-10 * (1.0 + z.norm()));
        }
        let c = cross_norm_euclidean(&z);
        prop_assert!((d.a_norm() + d.b_norm() - c).abs() <= 1e-10 * (1.0 + c));
        let dist = dist_to_complexified_reals(&z);
        prop_assert!(((z.norm_sqr() - dist * dist).max(0.0).sqrt() + dist - c).abs() <= 1e-10 * (1.0 + c));
    }

    #[test]
    fn general_bound_matches_euclidean((re, im) in point()) {
        let z = ComplexPoint::from_parts(&re, &im);
        let euclid = |x: &[f64]| x.iter().map(|v| v * v).sum::<f64>().sqrt();
        let ub = cross_norm_general(euclid, &z, 64).unwrap();
        let c = cross_norm_euclidean(&z);
        prop_assert!((ub.value - c).abs() <= 1e-6 * (1.0 + c));
    }

    #[test]
    fn interval_support_is_homogeneous_and_convex(a in -5.0f64..0.0, w in 0.0f64..5.0, s in -4.0f64..4.0, t in -4.0f64..4.0, l in 0.0f64..1.0) {
        let h = IntervalSupportFn::new(a, a + w).unwrap();
        let c = 2.5;
        prop_assert!((interval_support(&h, c * s) - c * interval_support(&h, s)).abs() < 1e-12);
        let mid = interval_support(&h, l * s + (1.0 - l) * t);
        prop_assert!(mid <= l * interval_support(&h, s) + (1.0 - l) * interval_support(&h, t) + 1e-12);
    }
}

#[test]
fn equality_cases() {
    let real = ComplexPoint::from_real(&[3.0, 4.0]);
    assert!((cross_norm_euclidean(&real) - 5.0).abs() < 1e-12);
    // complex multiple of a real vector
    let cr = real.scale(Complex64::new(0.6, -0.8));
    assert!((cross_norm_euclidean(&cr) - cr.norm()).abs() < 1e-10);
    let cr3 = ComplexPoint::from_real(&[0.3, -1.7, 2.2]).scale(Complex64::new(-1.1, 0.45));
    assert!((cross_norm_euclidean(&cr3) - cr3.norm()).abs() < 1e-10 * cr3.norm());
    assert!(dist_to_complexified_reals(&cr3) < 1e-14);
    let iso = ComplexPoint::new(vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)]);
    assert!((cross_norm_euclidean(&iso) - 2f64.sqrt() * iso.norm()).abs() < 1e-10);
}

#[test]
fn sup_norm_bracket() {
    let z = ComplexPoint::new(vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)]);
    let sup = |x: &[f64]| x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let ub = cross_norm_general(sup, &z, 128).unwrap();
    assert!(ub.value >= 2f64.sqrt() - 1e-9 && ub.value <= 2.0 + 1e-9, "{}", ub.value);
}
