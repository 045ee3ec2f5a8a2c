use extremal::config::{Coord, RunConfig, SetSpec};
use extremal::formats::{
    read_coefficients_csv, read_line_series, read_line_series_csv, write_coefficients_csv, write_line_series_csv,
    write_polygon_csv, BodyJson, LineSeriesJson, PolyJson,
};
use extremal_core::extension::{GrowthClaim, LineSeriesData};
use extremal_core::localize::ConvexBody;
use extremal_core::localize::HalfSpace;
use extremal_core::poly::{ComplexPoint, HomogeneousPolynomial};
use extremal_core::sampling;
use num_complex::Complex64;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn finite() -> impl Strategy<Value = f64> {
    prop_oneof![-1e6f64..1e6, -1e-12f64..1e-12, Just(0.0), Just(-0.0), Just(f64::MIN_POSITIVE), Just(1e300)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn line_series_csv_is_bit_exact(vals in prop::collection::vec((finite(), finite()), 3 * 4), sigma in prop::collection::vec(0.0f64..5.0, 3)) {
        let dirs: Vec<ComplexPoint> = vals[..3].iter().map(|&(a, b)| ComplexPoint::new(vec![c(a, b), c(b, a)])).collect();
        let table: Vec<Vec<Complex64>> = vals[3..].chunks(3).map(|r| r.iter().map(|&(a, b)| c(a, b)).collect()).collect();
        let growth = GrowthClaim { c: 1.5, rho: 2.0, sigma };
        let data = LineSeriesData::new(dirs, table, Some(growth)).unwrap();
        let mut buf = Vec::new();
        write_line_series_csv(&data, &mut buf).unwrap();
        let back = read_line_series_csv(buf.as_slice(), 1.5, 2.0).unwrap();
        prop_assert_eq!(&back, &data);
        for (x, y) in back.coefficients().iter().flatten().zip(data.coefficients().iter().flatten()) {
            prop_assert_eq!(x.re.to_bits(), y.re.to_bits());
        }
    }

    #[test]
    fn coefficient_csv_round_trip(cs in prop::collection::vec((finite(), finite()), 1..40)) {
        let cs: Vec<Complex64> = cs.into_iter().map(|(a, b)| c(a, b)).collect();
        let mut buf = Vec::new();
        write_coefficients_csv(&cs, &mut buf).unwrap();
        prop_assert_eq!(read_coefficients_csv(buf.as_slice()).unwrap(), cs);
    }
}

#[test]
fn line_series_files_by_extension() {
    let tmp = tempfile::tempdir().unwrap();
    let a = ComplexPoint::from_real(&[1.0, 0.5]);
    let dirs = sampling::arc(0.0, 1.0, 6).into_iter().map(|p| ComplexPoint::from_real(&p)).collect();
    let data = LineSeriesData::exponential(&a, dirs, 5).unwrap();
    let json = tmp.path().join("d.json");
    std::fs::write(&json, serde_json::to_vec(&LineSeriesJson::from_data(&data)).unwrap()).unwrap();
    assert_eq!(read_line_series(&json, 9.0, 9.0).unwrap(), data);
    let csv = tmp.path().join("d.csv");
    let mut buf = Vec::new();
    write_line_series_csv(&data, &mut buf).unwrap();
    std::fs::write(&csv, &buf).unwrap();
    assert_eq!(read_line_series(&csv, 1.0, 1.0).unwrap(), data);
    let header = String::from_utf8(buf).unwrap().lines().next().unwrap().to_owned();
    assert_eq!(header, "d1_re,d1_im,d2_re,d2_im,c0_re,c0_im,c1_re,c1_im,c2_re,c2_im,c3_re,c3_im,c4_re,c4_im,c5_re,c5_im,sigma");
    // without sigma the growth claim is absent
    let bare = "d1_re,d1_im,c0_re,c0_im\n1,0,2,0\n-1,0,2,0\n";
    assert!(read_line_series_csv(bare.as_bytes(), 1.0, 1.0).unwrap().growth().is_none());
    assert!(read_line_series_csv("d1_re,d1_im,c0_re\n1,0,2\n".as_bytes(), 1.0, 1.0).is_err());
    assert!(read_line_series_csv("d1_re,d1_im,c0_re,c0_im\n1,0,x,0\n".as_bytes(), 1.0, 1.0).is_err());
}

#[test]
fn polynomial_json_round_trip() {
    let p = HomogeneousPolynomial::from_coefficients(3, 2, (0..6).map(|i| c(i as f64, -0.5 * i as f64)).collect()).unwrap();
    let j = PolyJson::from_poly(&p);
    let text = serde_json::to_string(&j).unwrap();
    let back: PolyJson = serde_json::from_str(&text).unwrap();
    assert_eq!(back.to_poly().unwrap(), p);
    assert_eq!(j.coefficients[0].alpha, vec![2, 0, 0]);
    let mut broken = back.clone();
    broken.coefficients.swap(0, 1);
    assert!(broken.to_poly().is_err());
    broken.coefficients.pop();
    assert!(broken.to_poly().is_err());
}

#[test]
fn body_json_and_polygon_csv() {
    let hs: Vec<HalfSpace> = sampling::real_sphere(2, 8).into_iter().map(|n| HalfSpace { normal: n, offset: 1.0 }).collect();
    let body = ConvexBody::from_halfspaces(2, hs).unwrap();
    let j = BodyJson::from_body(&body);
    let back: BodyJson = serde_json::from_str(&serde_json::to_string(&j).unwrap()).unwrap();
    assert_eq!(back, j);
    let rebuilt = ConvexBody::from_halfspaces(2, back.halfspaces()).unwrap();
    assert_eq!(rebuilt.polygon(), body.polygon());
    let mut buf = Vec::new();
    write_polygon_csv(body.polygon().unwrap(), &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    assert_eq!(text.lines().count(), 9);
    assert!(text.starts_with("x,y\n"));
}

#[test]
fn config_schema() {
    let cfg = RunConfig::parse("{}").unwrap();
    assert_eq!(cfg, RunConfig::default());
    let cfg =
        RunConfig::parse(r#"{"set": {"kind": "points", "points": [[1, [0, 2]], [[0.5, 0.5], 3]], "weights": [1, 2]}}"#).unwrap();
    match cfg.set.as_ref().unwrap() {
        SetSpec::Points { points, .. } => assert_eq!(points[0][1], Coord::Complex([0.0, 2.0])),
        other => panic!("{other:?}"),
    }
    let set = cfg.set.unwrap().build().unwrap();
    assert_eq!(set.weights(), &[1.0, 2.0]);
    assert!(RunConfig::parse(r#"{"set": {"kind": "torus"}}"#).is_err());
    assert!(RunConfig::parse(r#"{"seed": -1}"#).is_err());
    assert!(RunConfig::parse(r#"{"locate": {"grid": 100, "extra": 1}}"#).is_err());
    let bad_solver = RunConfig::parse(r#"{"solver": {"phases": 4}}"#).unwrap();
    assert_eq!(bad_solver.validate("psi").unwrap_err().exit_code(), 2);
}
