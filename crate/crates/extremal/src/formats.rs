//! On-disk formats. Tables are CSV with a header row; structured values are
//! JSON. Floats are written in Rust's shortest round-trip form, so writing
//! is deterministic and reading recovers the exact bits.

use std::io::{Read, Write};
use std::path::Path;

use extremal_core::extension::{GrowthClaim, LineSeriesData};
use extremal_core::localize::{ConvexBody, HalfSpace};
use extremal_core::poly::{enumerate_multiindices, ComplexPoint, HomogeneousPolynomial};
use extremal_core::radon::RadonProfile;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// Shortest round-trip form; exponent notation for very small or large values.
pub fn num(x: f64) -> String {
    format!("{x:?}")
}

fn bad(what: &str, e: impl std::fmt::Display) -> CliError {
    CliError::Config(format!("{what}: {e}"))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyTerm {
    pub alpha: Vec<u32>,
    pub re: f64,
    pub im: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyJson {
    pub dimension: usize,
    pub degree: usize,
    /// In graded-lexicographic order.
    pub coefficients: Vec<PolyTerm>,
}

impl PolyJson {
    pub fn from_poly(p: &HomogeneousPolynomial) -> Self {
        let coefficients = p.terms().map(|(alpha, c)| PolyTerm { alpha: alpha.entries().to_vec(), re: c.re, im: c.im }).collect();
        PolyJson { dimension: p.dimension(), degree: p.degree(), coefficients }
    }

    pub fn to_poly(&self) -> Result<HomogeneousPolynomial, CliError> {
        let order = enumerate_multiindices(self.dimension, self.degree);
        if order.len() != self.coefficients.len() {
            return Err(CliError::Config(format!(
                "polynomial of degree {} in {} variables needs {} coefficients, found {}",
                self.degree,
                self.dimension,
                order.len(),
                self.coefficients.len()
            )));
        }
        let mut coefs = Vec::with_capacity(order.len());
        for (alpha, t) in order.iter().zip(&self.coefficients) {
            if alpha.entries() != t.alpha.as_slice() {
                return Err(CliError::Config(format!("coefficient order mismatch at {alpha}")));
            }
            coefs.push(Complex64::new(t.re, t.im));
        }
        HomogeneousPolynomial::from_coefficients(self.dimension, self.degree, coefs).map_err(|e| bad("polynomial", e))
    }
}

/// JSON form of line data: `coefficients[j][k] = [re, im]` of `c_k(ω_j)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LineSeriesJson {
    pub directions: Vec<Vec<[f64; 2]>>,
    pub coefficients: Vec<Vec<[f64; 2]>>,
    #[serde(default)]
    pub growth: Option<GrowthJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GrowthJson {
    pub c: f64,
    pub rho: f64,
    pub sigma: Vec<f64>,
}

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

fn unpair(p: &[f64; 2]) -> Complex64 {
    Complex64::new(p[0], p[1])
}

impl LineSeriesJson {
    pub fn from_data(d: &LineSeriesData) -> Self {
        LineSeriesJson {
            directions: d.directions().iter().map(|w| w.coords().iter().map(|&z| pair(z)).collect()).collect(),
            coefficients: d.coefficients().iter().map(|row| row.iter().map(|&z| pair(z)).collect()).collect(),
            growth: d.growth().map(|g| GrowthJson { c: g.c, rho: g.rho, sigma: g.sigma.clone() }),
        }
    }

    pub fn to_data(&self) -> Result<LineSeriesData, CliError> {
        let dirs = self.directions.iter().map(|w| ComplexPoint::new(w.iter().map(unpair).collect())).collect();
        let coefs = self.coefficients.iter().map(|row| row.iter().map(unpair).collect()).collect();
        let growth = self.growth.as_ref().map(|g| GrowthClaim { c: g.c, rho: g.rho, sigma: g.sigma.clone() });
        LineSeriesData::new(dirs, coefs, growth).map_err(|e| bad("line data", e))
    }
}

/// CSV header for line data in dimension `n` up to degree `k_max`.
pub fn line_series_header(n: usize, k_max: usize, sigma: bool) -> Vec<String> {
    let mut h = Vec::with_capacity(2 * (n + k_max + 1) + 1);
    for j in 1..=n {
        h.push(format!("d{j}_re"));
        h.push(format!("d{j}_im"));
    }
    for k in 0..=k_max {
        h.push(format!("c{k}_re"));
        h.push(format!("c{k}_im"));
    }
    if sigma {
        h.push("sigma".into());
    }
    h
}

/// One row per direction: `d1_re,d1_im,…,c0_re,c0_im,…` and an optional
/// trailing `sigma` column.
pub fn write_line_series_csv<W: Write>(d: &LineSeriesData, w: W) -> Result<(), CliError> {
    let mut out = csv::Writer::from_writer(w);
    let growth = d.growth();
    let io = |e: csv::Error| CliError::stage("write", e);
    out.write_record(line_series_header(d.dimension(), d.max_degree(), growth.is_some())).map_err(io)?;
    for (j, (dir, row)) in d.directions().iter().zip(d.coefficients()).enumerate() {
        let mut rec: Vec<String> = Vec::new();
        for z in dir.coords().iter().chain(row) {
            rec.push(num(z.re));
            rec.push(num(z.im));
        }
        if let Some(g) = growth {
            rec.push(num(g.sigma[j]));
        }
        out.write_record(&rec).map_err(io)?;
    }
    out.flush().map_err(|e| CliError::io("csv", e))
}

/// Reads line data; `c` and `ρ` complete the growth claim when a `sigma`
/// column is present.
pub fn read_line_series_csv<R: Read>(r: R, c: f64, rho: f64) -> Result<LineSeriesData, CliError> {
    let mut rdr = csv::Reader::from_reader(r);
    let header: Vec<String> = rdr.headers().map_err(|e| bad("line data", e))?.iter().map(str::to_owned).collect();
    let has_sigma = header.last().is_some_and(|h| h == "sigma");
    let n = header.iter().filter(|h| h.starts_with('d') && h.ends_with("_re")).count();
    let width = header.len() - usize::from(has_sigma);
    if n == 0 || width < 2 * n + 2 || !width.is_multiple_of(2) {
        return Err(CliError::Config("line data: malformed header".into()));
    }
    let k_max = (width - 2 * n) / 2 - 1;
    if header != line_series_header(n, k_max, has_sigma) {
        return Err(CliError::Config("line data: unexpected column names".into()));
    }
    let (mut dirs, mut coefs, mut sigma) = (Vec::new(), Vec::new(), Vec::new());
    for rec in rdr.records() {
        let rec = rec.map_err(|e| bad("line data", e))?;
        let vals: Vec<f64> =
            rec.iter().map(|s| s.trim().parse::<f64>()).collect::<Result<_, _>>().map_err(|e| bad("line data", e))?;
        let zs: Vec<Complex64> = vals[..width].chunks(2).map(|p| Complex64::new(p[0], p[1])).collect();
        dirs.push(ComplexPoint::new(zs[..n].to_vec()));
        coefs.push(zs[n..].to_vec());
        if has_sigma {
            sigma.push(vals[width]);
        }
    }
    let growth = has_sigma.then_some(GrowthClaim { c, rho, sigma });
    LineSeriesData::new(dirs, coefs, growth).map_err(|e| bad("line data", e))
}

/// Line data from `.csv` or `.json` by extension.
pub fn read_line_series(path: &Path, c: f64, rho: f64) -> Result<LineSeriesData, CliError> {
    let file = std::fs::File::open(path).map_err(|e| CliError::Config(format!("cannot open {}: {e}", path.display())))?;
    match path.extension().and_then(|e| e.to_str()) {
        Some("json") => {
            let j: LineSeriesJson = serde_json::from_reader(file).map_err(|e| bad("line data", e))?;
            j.to_data()
        }
        _ => read_line_series_csv(file, c, rho),
    }
}

/// Reads `k,re,im` rows; missing indices are zero.
pub fn read_coefficients_csv<R: Read>(r: R) -> Result<Vec<Complex64>, CliError> {
    #[derive(Deserialize)]
    struct Row {
        k: usize,
        re: f64,
        #[serde(default)]
        im: f64,
    }
    let mut rdr = csv::Reader::from_reader(r);
    let mut out: Vec<Complex64> = Vec::new();
    for row in rdr.deserialize::<Row>() {
        let row = row.map_err(|e| bad("coefficients", e))?;
        if row.k >= out.len() {
            out.resize(row.k + 1, Complex64::new(0.0, 0.0));
        }
        out[row.k] = Complex64::new(row.re, row.im);
    }
    if out.is_empty() {
        return Err(CliError::Config("coefficients: no rows".into()));
    }
    Ok(out)
}

pub fn write_coefficients_csv<W: Write>(c: &[Complex64], w: W) -> Result<(), CliError> {
    let mut out = csv::Writer::from_writer(w);
    let io = |e: csv::Error| CliError::stage("write", e);
    out.write_record(["k", "re", "im"]).map_err(io)?;
    for (k, z) in c.iter().enumerate() {
        out.write_record([k.to_string(), num(z.re), num(z.im)]).map_err(io)?;
    }
    out.flush().map_err(|e| CliError::io("csv", e))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HalfSpaceJson {
    pub normal: Vec<f64>,
    pub offset: f64,
}

/// A localized body: `{x : ⟨x, normal⟩ ≤ offset}` for every half-space, plus
/// the polygon in the plane.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BodyJson {
    pub dimension: usize,
    /// Set for bodies that rely on regularity of the support data.
    pub conditional: bool,
    pub halfspaces: Vec<HalfSpaceJson>,
    pub polygon: Option<Vec<[f64; 2]>>,
}

impl BodyJson {
    pub fn from_body(b: &ConvexBody) -> Self {
        BodyJson {
            dimension: b.dimension(),
            conditional: b.is_conditional(),
            halfspaces: b.halfspaces().iter().map(|h| HalfSpaceJson { normal: h.normal.clone(), offset: h.offset }).collect(),
            polygon: b.polygon().map(<[_]>::to_vec),
        }
    }

    /// Rebuilds the body from its half-spaces. The conditional flag is not
    /// recomputed and is carried over as stored.
    pub fn halfspaces(&self) -> Vec<HalfSpace> {
        self.halfspaces.iter().map(|h| HalfSpace { normal: h.normal.clone(), offset: h.offset }).collect()
    }
}

pub fn write_polygon_csv<W: Write>(poly: &[[f64; 2]], w: W) -> Result<(), CliError> {
    let mut out = csv::Writer::from_writer(w);
    let io = |e: csv::Error| CliError::stage("write", e);
    out.write_record(["x", "y"]).map_err(io)?;
    for v in poly {
        out.write_record([num(v[0]), num(v[1])]).map_err(io)?;
    }
    out.flush().map_err(|e| CliError::io("csv", e))
}

/// Long format: one row per direction and offset.
pub fn write_sinogram_csv<W: Write>(profiles: &[RadonProfile], w: W) -> Result<(), CliError> {
    let mut out = csv::Writer::from_writer(w);
    let io = |e: csv::Error| CliError::stage("write", e);
    let n = profiles.first().map_or(0, |p| p.direction.len());
    let mut header = vec!["direction".to_string()];
    header.extend((1..=n).map(|j| format!("w{j}")));
    header.extend(["p".to_string(), "value".to_string()]);
    out.write_record(&header).map_err(io)?;
    for (i, prof) in profiles.iter().enumerate() {
        for (p, v) in prof.p.iter().zip(&prof.values) {
            let mut rec = vec![i.to_string()];
            rec.extend(prof.direction.iter().map(|&x| num(x)));
            rec.push(num(*p));
            rec.push(num(*v));
            out.write_record(&rec).map_err(io)?;
        }
    }
    out.flush().map_err(|e| CliError::io("csv", e))
}

/// Generic table writer for rows of already formatted cells.
pub fn write_table<W: Write>(header: &[&str], rows: &[Vec<String>], w: W) -> Result<(), CliError> {
    let mut out = csv::Writer::from_writer(w);
    let io = |e: csv::Error| CliError::stage("write", e);
    out.write_record(header).map_err(io)?;
    for r in rows {
        out.write_record(r).map_err(io)?;
    }
    out.flush().map_err(|e| CliError::io("csv", e))
}
