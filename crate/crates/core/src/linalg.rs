//! Dense complex least squares by Householder QR with column pivoting.
//!
//! Rank-deficient systems get the minimum-norm solution through a complete
//! orthogonal decomposition: `A P = Q [R₁₁ R₁₂; 0 0]`, then a second QR of
//! `[R₁₁ R₁₂]^H` isolates the row space.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Clone, Debug, PartialEq)]
pub struct LstsqSolution {
    pub x: Vec<Complex64>,
    pub rank: usize,
    /// Magnitudes of the pivoted `R` diagonal, largest first.
    pub diagonal: Vec<f64>,
}

impl LstsqSolution {
    pub fn rank_deficient(&self, cols: usize) -> bool {
        self.rank < cols
    }
}

/// Householder reflector `I − 2vv^H` mapping `x` to `alpha·e₁`.
struct Reflector {
    v: Vec<Complex64>,
    alpha: Complex64,
}

fn reflector(x: &[Complex64]) -> Option<Reflector> {
    let sigma = x.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    if sigma == 0.0 {
        return None;
    }
    let phase = if x[0].norm() == 0.0 { Complex64::new(1.0, 0.0) } else { x[0] / x[0].norm() };
    let alpha = -phase * sigma;
    let mut v = x.to_vec();
    v[0] -= alpha;
    let vn = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    if vn == 0.0 {
        return None;
    }
    for c in v.iter_mut() {
        *c /= vn;
    }
    Some(Reflector { v, alpha })
}

impl Reflector {
    /// Applies the reflector to `col[offset..]`.
    fn apply(&self, col: &mut [Complex64], offset: usize) {
        let tail = &mut col[offset..offset + self.v.len()];
        let s: Complex64 = self.v.iter().zip(tail.iter()).map(|(v, c)| v.conj() * c).sum();
        let s2 = s * 2.0;
        for (c, v) in tail.iter_mut().zip(&self.v) {
            *c -= v * s2;
        }
    }
}

/// Minimum-norm least-squares solution of `A x ≈ b`.
///
/// `a` is row-major with `rows × cols` entries. Columns whose pivoted
/// diagonal falls below `rcond · |R₀₀|` are treated as dependent.
pub fn lstsq_min_norm(a: &[Complex64], rows: usize, cols: usize, b: &[Complex64], rcond: f64) -> LstsqSolution {
    assert_eq!(a.len(), rows * cols, "matrix size mismatch");
    assert_eq!(b.len(), rows, "right-hand side size mismatch");
    if cols == 0 {
        return LstsqSolution { x: Vec::new(), rank: 0, diagonal: Vec::new() };
    }

    // column-major working copy
    let mut colsv: Vec<Vec<Complex64>> = (0..cols).map(|j| (0..rows).map(|i| a[i * cols + j]).collect()).collect();
    let mut rhs = b.to_vec();
    let mut perm: Vec<usize> = (0..cols).collect();
    let steps = rows.min(cols);
    let mut diagonal = Vec::with_capacity(steps);

    for j in 0..steps {
        // pivot on the largest remaining column norm
        let mut best = j;
        let mut best_norm = -1.0;
        for c in j..cols {
            let nrm: f64 = colsv[c][j..].iter().map(|z| z.norm_sqr()).sum();
            if nrm > best_norm {
                best_norm = nrm;
                best = c;
            }
        }
        colsv.swap(j, best);
        perm.swap(j, best);
        match reflector(&colsv[j][j..]) {
            Some(h) => {
                colsv[j][j] = h.alpha;
                for z in colsv[j][j + 1..].iter_mut() {
                    *z = ZERO;
                }
                for c in j + 1..cols {
                    h.apply(&mut colsv[c], j);
                }
                h.apply(&mut rhs, j);
                diagonal.push(h.alpha.norm());
            }
            None => diagonal.push(0.0),
        }
    }

    let lead = diagonal.first().copied().unwrap_or(0.0);
    let rank = if lead == 0.0 { 0 } else { diagonal.iter().take_while(|&&d| d > rcond * lead).count() };

    let mut y = vec![ZERO; cols];
    if rank == cols {
        for i in (0..cols).rev() {
            let mut s = rhs[i];
            for c in i + 1..cols {
                s -= colsv[c][i] * y[c];
            }
            y[i] = s / colsv[i][i];
        }
    } else if rank > 0 {
        // T = R[0..rank, 0..cols]; factor T^H = W S with S rank×rank upper.
        let mut th: Vec<Vec<Complex64>> = (0..rank).map(|i| (0..cols).map(|c| colsv[c][i].conj()).collect()).collect();
        let mut reflectors = Vec::with_capacity(rank);
        for j in 0..rank {
            let h = reflector(&th[j][j..]);
            if let Some(h) = &h {
                th[j][j] = h.alpha;
                for z in th[j][j + 1..].iter_mut() {
                    *z = ZERO;
                }
                for c in j + 1..rank {
                    h.apply(&mut th[c], j);
                }
            }
            reflectors.push(h);
        }
        // T = S^H W^H, solve S^H u = d by forward substitution
        let mut u = vec![ZERO; cols];
        for i in 0..rank {
            let mut s = rhs[i];
            for c in 0..i {
                s -= th[i][c].conj() * u[c];
            }
            u[i] = s / th[i][i].conj();
        }
        for (j, h) in reflectors.iter().enumerate().rev() {
            if let Some(h) = h {
                h.apply(&mut u, j);
            }
        }
        y = u;
    }

    let mut x = vec![ZERO; cols];
    for (i, &p) in perm.iter().enumerate() {
        x[p] = y[i];
    }
    LstsqSolution { x, rank, diagonal }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn square_system() {
        let a = [c(2.0, 0.0), c(1.0, 1.0), c(0.0, -1.0), c(3.0, 0.0)];
        let x_true = [c(1.0, 2.0), c(-0.5, 0.25)];
        let b: Vec<Complex64> = (0..2).map(|i| a[i * 2] * x_true[0] + a[i * 2 + 1] * x_true[1]).collect();
        let s = lstsq_min_norm(&a, 2, 2, &b, 1e-12);
        assert_eq!(s.rank, 2);
        for (u, v) in s.x.iter().zip(&x_true) {
            assert!((u - v).norm() < 1e-13);
        }
    }

    #[test]
    fn overdetermined_least_squares_matches_normal_equations() {
        // fit y = c0 + c1 t on 4 points
        let ts = [0.0, 1.0, 2.0, 3.0];
        let ys = [1.0, 2.9, 5.2, 6.8];
        let a: Vec<Complex64> = ts.iter().flat_map(|&t| [c(1.0, 0.0), c(t, 0.0)]).collect();
        let b: Vec<Complex64> = ys.iter().map(|&y| c(y, 0.0)).collect();
        let s = lstsq_min_norm(&a, 4, 2, &b, 1e-12);
        // normal equations by hand
        let (n, st, stt) = (4.0, 6.0, 14.0);
        let sy: f64 = ys.iter().sum();
        let sty: f64 = ts.iter().zip(&ys).map(|(t, y)| t * y).sum();
        let det = n * stt - st * st;
        let c0 = (stt * sy - st * sty) / det;
        let c1 = (n * sty - st * sy) / det;
        assert!((s.x[0].re - c0).abs() < 1e-12);
        assert!((s.x[1].re - c1).abs() < 1e-12);
    }

    #[test]
    fn rank_deficient_minimum_norm() {
        // x1 + x2 = 2 (twice): min-norm solution is (1, 1)
        let a = [c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)];
        let b = [c(2.0, 0.0), c(2.0, 0.0)];
        let s = lstsq_min_norm(&a, 2, 2, &b, 1e-12);
        assert_eq!(s.rank, 1);
        assert!(s.rank_deficient(2));
        assert!((s.x[0] - c(1.0, 0.0)).norm() < 1e-13);
        assert!((s.x[1] - c(1.0, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn underdetermined_minimum_norm_complex() {
        // single equation (1, i)·x = 2  → x = conj(a) * 2 / |a|²
        let a = [c(1.0, 0.0), c(0.0, 1.0)];
        let b = [c(2.0, 0.0)];
        let s = lstsq_min_norm(&a, 1, 2, &b, 1e-12);
        assert_eq!(s.rank, 1);
        assert!((s.x[0] - c(1.0, 0.0)).norm() < 1e-13);
        assert!((s.x[1] - c(0.0, -1.0)).norm() < 1e-13);
    }

    #[test]
    fn zero_matrix() {
        let a = [ZERO; 4];
        let b = [c(1.0, 0.0), c(1.0, 0.0)];
        let s = lstsq_min_norm(&a, 2, 2, &b, 1e-12);
        assert_eq!(s.rank, 0);
        assert!(s.x.iter().all(|z| z.norm() == 0.0));
    }
}
