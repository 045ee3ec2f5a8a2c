//! Deterministic point sets: circle arcs, Fibonacci spheres, Halton-driven
//! samples of complex spheres and real balls.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::poly::ComplexPoint;

const PRIMES: [u64; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];

/// Radical inverse of `index` in `base`, in `[0, 1)`.
pub fn halton(mut index: u64, base: u64) -> f64 {
    let mut f = 1.0;
    let mut r = 0.0;
    let b = base as f64;
    while index > 0 {
        f /= b;
        r += f * (index % base) as f64;
        index /= base;
    }
    r
}

/// `count` equispaced points on the unit circle, the first at angle `offset`.
pub fn circle(count: usize, offset: f64) -> Vec<[f64; 2]> {
    (0..count)
        .map(|j| {
            let t = offset + 2.0 * PI * j as f64 / count as f64;
            [t.cos(), t.sin()]
        })
        .collect()
}

/// `count` points on the arc `[start, end]` (radians), endpoints included.
pub fn arc(start: f64, end: f64, count: usize) -> Vec<[f64; 2]> {
    if count == 1 {
        let t = 0.5 * (start + end);
        return alloc::vec![[t.cos(), t.sin()]];
    }
    (0..count)
        .map(|j| {
            let t = start + (end - start) * j as f64 / (count - 1) as f64;
            [t.cos(), t.sin()]
        })
        .collect()
}

/// Fibonacci lattice on `S²`.
pub fn fibonacci_sphere(count: usize) -> Vec<[f64; 3]> {
    let golden = PI * (3.0 - 5f64.sqrt());
    (0..count)
        .map(|j| {
            let z = 1.0 - (2.0 * j as f64 + 1.0) / count as f64;
            let r = (1.0 - z * z).max(0.0).sqrt();
            let phi = golden * j as f64;
            [r * phi.cos(), r * phi.sin(), z]
        })
        .collect()
}

/// Fibonacci points on the spherical cap of half-angle `half_angle` around
/// the unit vector `axis`.
pub fn spherical_cap(axis: [f64; 3], half_angle: f64, count: usize) -> Vec<[f64; 3]> {
    let golden = PI * (3.0 - 5f64.sqrt());
    let zmin = half_angle.cos();
    let (e1, e2) = orthonormal_complement(axis);
    (0..count)
        .map(|j| {
            let z = 1.0 - (1.0 - zmin) * (j as f64 + 0.5) / count as f64;
            let r = (1.0 - z * z).max(0.0).sqrt();
            let phi = golden * j as f64;
            let (c, s) = (r * phi.cos(), r * phi.sin());
            [z * axis[0] + c * e1[0] + s * e2[0], z * axis[1] + c * e1[1] + s * e2[1], z * axis[2] + c * e1[2] + s * e2[2]]
        })
        .collect()
}

fn orthonormal_complement(a: [f64; 3]) -> ([f64; 3], [f64; 3]) {
    let helper = if a[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
    let d = helper[0] * a[0] + helper[1] * a[1] + helper[2] * a[2];
    let mut e1 = [helper[0] - d * a[0], helper[1] - d * a[1], helper[2] - d * a[2]];
    let n = (e1[0] * e1[0] + e1[1] * e1[1] + e1[2] * e1[2]).sqrt();
    e1.iter_mut().for_each(|v| *v /= n);
    let e2 = [a[1] * e1[2] - a[2] * e1[1], a[2] * e1[0] - a[0] * e1[2], a[0] * e1[1] - a[1] * e1[0]];
    (e1, e2)
}

/// Quasi-uniform unit directions of `R^n` for `n = 2, 3`.
pub fn real_sphere(n: usize, count: usize) -> Vec<Vec<f64>> {
    match n {
        2 => circle(count, 0.0).into_iter().map(|p| p.to_vec()).collect(),
        3 => fibonacci_sphere(count).into_iter().map(|p| p.to_vec()).collect(),
        _ => panic!("real_sphere supports n = 2 or 3, got {n}"),
    }
}

/// Quasi-uniform points on the unit sphere of `C^n`: Halton points pushed
/// through Box–Muller to complex Gaussians, then normalized. `start` shifts
/// the Halton index so that distinct seeds give distinct sets.
pub fn complex_sphere(n: usize, count: usize, start: u64) -> Vec<ComplexPoint> {
    assert!(2 * n <= PRIMES.len(), "complex_sphere supports n ≤ {}", PRIMES.len() / 2);
    (0..count as u64)
        .map(|j| {
            let idx = start + j + 1;
            let coords: Vec<Complex64> = (0..n)
                .map(|d| {
                    let u1 = halton(idx, PRIMES[2 * d]).max(1e-300);
                    let u2 = halton(idx, PRIMES[2 * d + 1]);
                    let r = (-2.0 * u1.ln()).sqrt();
                    Complex64::from_polar(r, 2.0 * PI * u2)
                })
                .collect();
            let p = ComplexPoint::new(coords);
            let nrm = p.norm();
            p.scale_real(1.0 / nrm)
        })
        .collect()
}

/// Area-uniform Halton points in the closed disc or ball of `radius` around
/// `center` (`n = 2, 3`).
pub fn ball(center: &[f64], radius: f64, count: usize, start: u64) -> Vec<Vec<f64>> {
    let n = center.len();
    (0..count as u64)
        .map(|j| {
            let idx = start + j + 1;
            match n {
                2 => {
                    let r = radius * halton(idx, 2).sqrt();
                    let t = 2.0 * PI * halton(idx, 3);
                    alloc::vec![center[0] + r * t.cos(), center[1] + r * t.sin()]
                }
                3 => {
                    let r = radius * halton(idx, 2).cbrt();
                    let z = 1.0 - 2.0 * halton(idx, 3);
                    let t = 2.0 * PI * halton(idx, 5);
                    let s = (1.0 - z * z).max(0.0).sqrt();
                    alloc::vec![center[0] + r * s * t.cos(), center[1] + r * s * t.sin(), center[2] + r * z]
                }
                _ => panic!("ball sampling supports n = 2 or 3, got {n}"),
            }
        })
        .collect()
}
