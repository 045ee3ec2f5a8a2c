//! Multi-indices and homogeneous polynomials on `C^n`.
//!
//! Coefficients are stored densely over the full index set of a degree, in
//! graded-lexicographic order as produced by [`enumerate_multiindices`]. Every
//! coefficient vector in the crate uses this order, so a vector produced in one
//! module can be handed to another without remapping.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

/// Exponent vector `(α₁, …, αₙ)` of a monomial `ζ^α`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(entries: Vec<u32>) -> Self {
        MultiIndex(entries)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn dimension(&self) -> usize {
        self.0.len()
    }

    /// `|α| = α₁ + … + αₙ`.
    pub fn order(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Multinomial coefficient `|α|! / α!`.
    pub fn multinomial(&self) -> f64 {
        let mut remaining = self.order();
        let mut acc = 1.0;
        for &a in &self.0 {
            acc *= binomial(remaining, a);
            remaining -= a;
        }
        acc
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str(")")
    }
}

/// `binomial(n, k)` as a float; exact while the result stays below 2^53.
pub fn binomial(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0;
    for i in 0..k {
        acc = acc * f64::from(n - i) / f64::from(i + 1);
    }
    acc.round()
}

/// Number of monomials of degree `k` in `n` variables, `binomial(n+k-1, k)`.
pub fn monomial_count(n: usize, k: usize) -> usize {
    if n == 0 {
        return 0;
    }
    binomial((n + k - 1) as u32, k as u32) as usize
}

/// All multi-indices of order `k` in `n` variables, graded-lexicographic
/// (first exponent descending, then recursively on the tail).
pub fn enumerate_multiindices(n: usize, k: usize) -> Vec<MultiIndex> {
    let mut out = Vec::with_capacity(monomial_count(n, k));
    if n == 0 {
        return out;
    }
    let mut current = vec![0u32; n];
    fill(&mut current, 0, k as u32, &mut out);
    out
}

fn fill(current: &mut [u32], pos: usize, remaining: u32, out: &mut Vec<MultiIndex>) {
    if pos + 1 == current.len() {
        current[pos] = remaining;
        out.push(MultiIndex(current.to_vec()));
        return;
    }
    for a in (0..=remaining).rev() {
        current[pos] = a;
        fill(current, pos + 1, remaining - a, out);
    }
    current[pos] = 0;
}

/// A point `ζ = ξ + iη` of `C^n`.
///
/// `bilinear` is the symmetric form `⟨z, ζ⟩ = Σ zⱼζⱼ` with no conjugation;
/// `norm` is the Hermitian length `⟨ζ, ζ̄⟩^{1/2}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexPoint(Vec<Complex64>);

impl ComplexPoint {
    pub fn new(coords: Vec<Complex64>) -> Self {
        ComplexPoint(coords)
    }

    pub fn from_real(x: &[f64]) -> Self {
        ComplexPoint(x.iter().map(|&v| Complex64::new(v, 0.0)).collect())
    }

    pub fn from_parts(re: &[f64], im: &[f64]) -> Self {
        assert_eq!(re.len(), im.len(), "real and imaginary parts differ in length");
        ComplexPoint(re.iter().zip(im).map(|(&a, &b)| Complex64::new(a, b)).collect())
    }

    pub fn zeros(n: usize) -> Self {
        ComplexPoint(vec![Complex64::new(0.0, 0.0); n])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Complex64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Complex64> {
        self.0
    }

    pub fn bilinear(&self, other: &ComplexPoint) -> Complex64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn real_part(&self) -> Vec<f64> {
        self.0.iter().map(|c| c.re).collect()
    }

    pub fn imag_part(&self) -> Vec<f64> {
        self.0.iter().map(|c| c.im).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.re == 0.0 && c.im == 0.0)
    }

    pub fn is_real(&self) -> bool {
        self.0.iter().all(|c| c.im == 0.0)
    }

    pub fn scale(&self, t: Complex64) -> ComplexPoint {
        ComplexPoint(self.0.iter().map(|c| c * t).collect())
    }

    pub fn scale_real(&self, t: f64) -> ComplexPoint {
        ComplexPoint(self.0.iter().map(|c| c * t).collect())
    }
}

impl From<Vec<Complex64>> for ComplexPoint {
    fn from(v: Vec<Complex64>) -> Self {
        ComplexPoint(v)
    }
}

/// Basis convention for coefficient vectors.
///
/// `SqrtMultinomial` uses the basis `sqrt(k!/α!)·ζ^α`, which is orthonormal
/// with respect to the unitarily invariant inner product and keeps least-squares
/// systems on sphere samples far better conditioned than raw monomials.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Scaling {
    #[default]
    Raw,
    SqrtMultinomial,
}

/// Row of the design matrix: `ζ^α` (optionally times `sqrt(k!/α!)`) for every
/// `α` of order `k`, in enumeration order.
pub fn monomial_vector(zeta: &ComplexPoint, k: usize, scaling: Scaling) -> Vec<Complex64> {
    let indices = enumerate_multiindices(zeta.dim(), k);
    monomial_vector_for(zeta, &indices, scaling)
}

/// Same as [`monomial_vector`] with a precomputed index list.
pub fn monomial_vector_for(zeta: &ComplexPoint, indices: &[MultiIndex], scaling: Scaling) -> Vec<Complex64> {
    let n = zeta.dim();
    let k = indices.first().map_or(0, |a| a.order() as usize);
    let mut powers: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    for z in zeta.coords() {
        let mut row = Vec::with_capacity(k + 1);
        let mut acc = Complex64::new(1.0, 0.0);
        row.push(acc);
        for _ in 0..k {
            acc *= z;
            row.push(acc);
        }
        powers.push(row);
    }
    indices
        .iter()
        .map(|alpha| {
            let mut v = Complex64::new(1.0, 0.0);
            for (j, &a) in alpha.entries().iter().enumerate() {
                v *= powers[j][a as usize];
            }
            match scaling {
                Scaling::Raw => v,
                Scaling::SqrtMultinomial => v * alpha.multinomial().sqrt(),
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyError {
    DimensionMismatch { expected: usize, found: usize },
    OrderMismatch { index: MultiIndex, degree: usize },
    LengthMismatch { expected: usize, found: usize },
    ZeroDimension,
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            PolyError::OrderMismatch { index, degree } => {
                write!(f, "multi-index {index} does not have order {degree}")
            }
            PolyError::LengthMismatch { expected, found } => {
                write!(f, "expected {expected} coefficients, found {found}")
            }
            PolyError::ZeroDimension => f.write_str("polynomials need at least one variable"),
        }
    }
}

impl core::error::Error for PolyError {}

/// Homogeneous polynomial of degree `k` in `n` complex variables.
#[derive(Clone, Debug, PartialEq)]
pub struct HomogeneousPolynomial {
    dimension: usize,
    degree: usize,
    coeffs: Vec<Complex64>,
}

impl HomogeneousPolynomial {
    pub fn zero(dimension: usize, degree: usize) -> Self {
        HomogeneousPolynomial { dimension, degree, coeffs: vec![Complex64::new(0.0, 0.0); monomial_count(dimension, degree)] }
    }

    /// Dense raw-monomial coefficients in enumeration order.
    pub fn from_coefficients(dimension: usize, degree: usize, coeffs: Vec<Complex64>) -> Result<Self, PolyError> {
        if dimension == 0 {
            return Err(PolyError::ZeroDimension);
        }
        let expected = monomial_count(dimension, degree);
        if coeffs.len() != expected {
            return Err(PolyError::LengthMismatch { expected, found: coeffs.len() });
        }
        Ok(HomogeneousPolynomial { dimension, degree, coeffs })
    }

    /// Coefficients given in the basis selected by `scaling`.
    pub fn from_scaled_coefficients(
        dimension: usize,
        degree: usize,
        coeffs: Vec<Complex64>,
        scaling: Scaling,
    ) -> Result<Self, PolyError> {
        let mut p = Self::from_coefficients(dimension, degree, coeffs)?;
        if scaling == Scaling::SqrtMultinomial {
            for (c, alpha) in p.coeffs.iter_mut().zip(enumerate_multiindices(dimension, degree)) {
                *c *= alpha.multinomial().sqrt();
            }
        }
        Ok(p)
    }

    /// Sparse construction; missing monomials are zero, repeated ones add up.
    pub fn from_terms<I>(dimension: usize, degree: usize, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (MultiIndex, Complex64)>,
    {
        if dimension == 0 {
            return Err(PolyError::ZeroDimension);
        }
        let indices = enumerate_multiindices(dimension, degree);
        let lookup: BTreeMap<&MultiIndex, usize> = indices.iter().enumerate().map(|(i, a)| (a, i)).collect();
        let mut coeffs = vec![Complex64::new(0.0, 0.0); indices.len()];
        for (alpha, c) in terms {
            if alpha.dimension() != dimension {
                return Err(PolyError::DimensionMismatch { expected: dimension, found: alpha.dimension() });
            }
            match lookup.get(&alpha) {
                Some(&i) => coeffs[i] += c,
                None => return Err(PolyError::OrderMismatch { index: alpha, degree }),
            }
        }
        Ok(HomogeneousPolynomial { dimension, degree, coeffs })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn scaled_coefficients(&self, scaling: Scaling) -> Vec<Complex64> {
        match scaling {
            Scaling::Raw => self.coeffs.clone(),
            Scaling::SqrtMultinomial => self
                .coeffs
                .iter()
                .zip(enumerate_multiindices(self.dimension, self.degree))
                .map(|(c, alpha)| c / alpha.multinomial().sqrt())
                .collect(),
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (MultiIndex, Complex64)> + '_ {
        enumerate_multiindices(self.dimension, self.degree).into_iter().zip(self.coeffs.iter().copied())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.norm_sqr() == 0.0)
    }

    pub fn scale(&self, t: Complex64) -> Self {
        HomogeneousPolynomial {
            dimension: self.dimension,
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|c| c * t).collect(),
        }
    }

    /// `Σ_α c_α ζ^α`.
    pub fn eval(&self, zeta: &ComplexPoint) -> Result<Complex64, PolyError> {
        if zeta.dim() != self.dimension {
            return Err(PolyError::DimensionMismatch { expected: self.dimension, found: zeta.dim() });
        }
        let row = monomial_vector(zeta, self.degree, Scaling::Raw);
        Ok(row.iter().zip(&self.coeffs).map(|(m, c)| m * c).sum())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn enumeration_small_cases() {
        let e = enumerate_multiindices(2, 2);
        let got: Vec<Vec<u32>> = e.iter().map(|a| a.entries().to_vec()).collect();
        assert_eq!(got, vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(enumerate_multiindices(3, 2).len(), 6);
        let one = enumerate_multiindices(1, 5);
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].entries(), &[5]);
    }

    #[test]
    fn enumeration_counts_and_orders() {
        for n in 1..=6 {
            for k in 0..=12 {
                let e = enumerate_multiindices(n, k);
                assert_eq!(e.len(), monomial_count(n, k));
                assert!(e.iter().all(|a| a.order() as usize == k));
                let mut sorted = e.clone();
                sorted.sort();
                sorted.dedup();
                assert_eq!(sorted.len(), e.len());
            }
        }
    }

    #[test]
    fn eval_examples() {
        let p = HomogeneousPolynomial::from_terms(2, 2, [(MultiIndex::new(vec![1, 1]), c(1.0, 0.0))]).unwrap();
        assert_eq!(p.eval(&ComplexPoint::from_real(&[2.0, 3.0])).unwrap(), c(6.0, 0.0));

        let q = HomogeneousPolynomial::from_terms(
            2,
            2,
            [(MultiIndex::new(vec![2, 0]), c(1.0, 0.0)), (MultiIndex::new(vec![0, 2]), c(1.0, 0.0))],
        )
        .unwrap();
        let v = q.eval(&ComplexPoint::new(vec![c(1.0, 0.0), c(0.0, 1.0)])).unwrap();
        assert!(v.norm() < 1e-15);
    }

    #[test]
    fn eval_dimension_mismatch() {
        let p = HomogeneousPolynomial::zero(2, 1);
        assert_eq!(
            p.eval(&ComplexPoint::from_real(&[1.0, 2.0, 3.0])),
            Err(PolyError::DimensionMismatch { expected: 2, found: 3 })
        );
    }

    #[test]
    fn from_terms_rejects_wrong_order() {
        let err = HomogeneousPolynomial::from_terms(2, 2, [(MultiIndex::new(vec![1, 0]), c(1.0, 0.0))]);
        assert!(matches!(err, Err(PolyError::OrderMismatch { .. })));
    }

    #[test]
    fn monomial_vector_examples() {
        let ones = ComplexPoint::from_real(&[1.0, 1.0]);
        assert_eq!(monomial_vector(&ones, 2, Scaling::Raw), vec![c(1.0, 0.0); 3]);
        let e1 = ComplexPoint::from_real(&[1.0, 0.0]);
        assert_eq!(monomial_vector(&e1, 3, Scaling::Raw), vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        let scaled = monomial_vector(&ones, 2, Scaling::SqrtMultinomial);
        assert!((scaled[0].re - 1.0).abs() < 1e-15);
        assert!((scaled[1].re - 2f64.sqrt()).abs() < 1e-15);
        assert!((scaled[2].re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn scaled_coefficients_round_trip() {
        let p =
            HomogeneousPolynomial::from_coefficients(2, 3, vec![c(1.0, 2.0), c(-1.0, 0.5), c(0.0, 3.0), c(2.0, -1.0)]).unwrap();
        let d = p.scaled_coefficients(Scaling::SqrtMultinomial);
        let back = HomogeneousPolynomial::from_scaled_coefficients(2, 3, d.clone(), Scaling::SqrtMultinomial).unwrap();
        for (a, b) in back.coefficients().iter().zip(p.coefficients()) {
            assert!((a - b).norm() < 1e-14);
        }
        let z = ComplexPoint::new(vec![c(0.3, -0.2), c(1.1, 0.7)]);
        let row = monomial_vector(&z, 3, Scaling::SqrtMultinomial);
        let via_row: Complex64 = row.iter().zip(&d).map(|(m, x)| m * x).sum();
        let direct = p.eval(&z).unwrap();
        assert!((via_row - direct).norm() <= 1e-13 * direct.norm());
    }

    #[test]
    fn multinomial_values() {
        assert_eq!(MultiIndex::new(vec![1, 1]).multinomial(), 2.0);
        assert_eq!(MultiIndex::new(vec![2, 1, 1]).multinomial(), 12.0);
        assert_eq!(binomial(4, 2), 6.0);
    }
}
