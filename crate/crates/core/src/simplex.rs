//! Dense revised simplex for `maximize cᵀx subject to Ax ≤ b` with free `x`.
//!
//! The problems produced by the extremal solver have few variables (real and
//! imaginary parts of polynomial coefficients) and thousands of inequality
//! rows, so the solver works on the dual standard form
//!
//! ```text
//! minimize bᵀy  subject to  Aᵀy = c,  y ≥ 0
//! ```
//!
//! whose basis has one entry per primal variable. The primal solution is read
//! off the simplex multipliers of the final basis. Phase one drives the
//! artificial columns out. Entering columns are priced by the most negative
//! reduced cost; after a long run of degenerate pivots the solver switches to
//! Bland's lowest-index rule until the objective moves again, so it cannot
//! cycle.
//!
//! The dual right-hand side `c` is perturbed by a tiny positive amount per
//! entry before solving. When `c` is itself a constraint row (the extremal
//! problem at a sample point) the unperturbed basis is almost entirely zero
//! and pricing stalls. The perturbation only steers the pivot path: `x` is
//! read from the multipliers, which do not depend on `c`, so it stays exactly
//! feasible and is optimal for an objective within `1e-9` relative of the
//! true one. Outcomes other than an optimum are confirmed without it.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

#[allow(unused_imports)]
use num_traits::Float;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SimplexOptions {
    /// Smallest pivot element accepted in the ratio test.
    pub pivot_tol: f64,
    /// Reduced-cost and feasibility tolerance.
    pub feas_tol: f64,
    pub max_iterations: usize,
    /// Rebuild the basis inverse from scratch after this many updates.
    pub refactor_every: usize,
}

impl Default for SimplexOptions {
    fn default() -> Self {
        SimplexOptions { pivot_tol: 1e-9, feas_tol: 1e-9, max_iterations: 200_000, refactor_every: 64 }
    }
}

/// `maximize cᵀx subject to Ax ≤ b`, `x` free.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearProgram {
    vars: usize,
    objective: Vec<f64>,
    rows: Vec<f64>,
    rhs: Vec<f64>,
}

impl LinearProgram {
    pub fn new(objective: Vec<f64>) -> Self {
        LinearProgram { vars: objective.len(), objective, rows: Vec::new(), rhs: Vec::new() }
    }

    /// Replaces the objective, keeping the constraints.
    pub fn set_objective(&mut self, objective: Vec<f64>) {
        assert_eq!(objective.len(), self.vars, "objective width mismatch");
        self.objective = objective;
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn constraint_count(&self) -> usize {
        self.rhs.len()
    }

    /// Adds `row · x ≤ bound`.
    pub fn add_le(&mut self, row: &[f64], bound: f64) {
        assert_eq!(row.len(), self.vars, "constraint width mismatch");
        self.rows.extend_from_slice(row);
        self.rhs.push(bound);
    }

    /// Adds `row · x = value` as a pair of inequalities.
    pub fn add_eq(&mut self, row: &[f64], value: f64) {
        self.add_le(row, value);
        let neg: Vec<f64> = row.iter().map(|v| -v).collect();
        self.add_le(&neg, -value);
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.rows[i * self.vars..(i + 1) * self.vars]
    }

    pub fn rhs(&self) -> &[f64] {
        &self.rhs
    }

    pub fn objective(&self) -> &[f64] {
        &self.objective
    }

    /// Largest violation `max(row·x − bound, 0)` over all constraints.
    pub fn max_violation(&self, x: &[f64]) -> f64 {
        (0..self.constraint_count()).map(|i| dot(self.row(i), x) - self.rhs[i]).fold(0.0, f64::max)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution {
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal(LpSolution),
    /// The objective grows without bound on the feasible set.
    Unbounded,
    /// No `x` satisfies all constraints.
    Infeasible,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpError {
    IterationLimit(usize),
    SingularBasis,
}

impl fmt::Display for LpError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LpError::IterationLimit(n) => write!(f, "simplex stopped after {n} iterations"),
            LpError::SingularBasis => f.write_str("basis matrix became numerically singular"),
        }
    }
}

impl core::error::Error for LpError {}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Working state on the dual standard form. Column `j < ncols` is
/// `sign ⊙ row_j(A)`; columns `ncols..ncols + m` are artificial.
struct Tableau<'a> {
    lp: &'a LinearProgram,
    m: usize,
    ncols: usize,
    sign: Vec<f64>,
    rhs: Vec<f64>,
    basis: Vec<usize>,
    in_basis: Vec<bool>,
    binv: Vec<f64>,
    xb: Vec<f64>,
    opts: SimplexOptions,
    iterations: usize,
    since_refactor: usize,
    degenerate_run: usize,
}

/// Consecutive degenerate pivots after which pricing falls back to Bland.
const DEGENERATE_RUN_LIMIT: usize = 50;

/// Relative size of the right-hand-side perturbation.
const PERTURBATION: f64 = 1e-9;

enum PhaseEnd {
    Optimal,
    Unbounded,
}

impl<'a> Tableau<'a> {
    fn new(lp: &'a LinearProgram, opts: SimplexOptions, perturb: bool) -> Self {
        let m = lp.vars;
        let ncols = lp.constraint_count();
        let sign: Vec<f64> = lp.objective.iter().map(|&c| if c < 0.0 { -1.0 } else { 1.0 }).collect();
        let mut rhs: Vec<f64> = lp.objective.iter().zip(&sign).map(|(c, s)| c * s).collect();
        if perturb {
            let scale = rhs.iter().fold(0.0f64, |a, v| a.max(*v));
            for (i, r) in rhs.iter_mut().enumerate() {
                // distinct weights in [0.5, 1) from the golden-ratio sequence
                let h = 0.5 + 0.5 * ((i + 1) as f64 * 0.618_033_988_749_894_9).fract();
                *r += PERTURBATION * scale * h;
            }
        }
        let mut binv = vec![0.0; m * m];
        for i in 0..m {
            binv[i * m + i] = 1.0;
        }
        let mut in_basis = vec![false; ncols + m];
        for i in 0..m {
            in_basis[ncols + i] = true;
        }
        Tableau {
            lp,
            m,
            ncols,
            sign,
            xb: rhs.clone(),
            rhs,
            basis: (ncols..ncols + m).collect(),
            in_basis,
            binv,
            opts,
            iterations: 0,
            since_refactor: 0,
            degenerate_run: 0,
        }
    }

    fn column(&self, j: usize, out: &mut [f64]) {
        if j < self.ncols {
            for (i, (o, a)) in out.iter_mut().zip(self.lp.row(j)).enumerate() {
                *o = self.sign[i] * a;
            }
        } else {
            out.iter_mut().for_each(|o| *o = 0.0);
            out[j - self.ncols] = 1.0;
        }
    }

    fn cost(&self, j: usize, phase_one: bool) -> f64 {
        match (phase_one, j < self.ncols) {
            (true, true) => 0.0,
            (true, false) => 1.0,
            (false, true) => self.lp.rhs[j],
            (false, false) => 0.0,
        }
    }

    /// Simplex multipliers `π = c_Bᵀ B⁻¹`.
    fn multipliers(&self, phase_one: bool) -> Vec<f64> {
        let m = self.m;
        let mut pi = vec![0.0; m];
        for (r, &j) in self.basis.iter().enumerate() {
            let c = self.cost(j, phase_one);
            if c != 0.0 {
                let row = &self.binv[r * m..(r + 1) * m];
                for (p, b) in pi.iter_mut().zip(row) {
                    *p += c * b;
                }
            }
        }
        pi
    }

    fn reduced_cost(&self, j: usize, pi: &[f64], phase_one: bool) -> f64 {
        let c = self.cost(j, phase_one);
        if j < self.ncols {
            let row = self.lp.row(j);
            let mut s = 0.0;
            for i in 0..self.m {
                s += pi[i] * self.sign[i] * row[i];
            }
            c - s
        } else {
            c - pi[j - self.ncols]
        }
    }

    /// `B⁻¹ a_j`.
    fn direction(&self, j: usize) -> Vec<f64> {
        let m = self.m;
        let mut col = vec![0.0; m];
        self.column(j, &mut col);
        let mut u = vec![0.0; m];
        for r in 0..m {
            u[r] = dot(&self.binv[r * m..(r + 1) * m], &col);
        }
        u
    }

    fn pivot(&mut self, r: usize, q: usize, u: &[f64]) {
        let m = self.m;
        let piv = u[r];
        for c in 0..m {
            self.binv[r * m + c] /= piv;
        }
        self.xb[r] /= piv;
        let (xr, row_r): (f64, Vec<f64>) = (self.xb[r], self.binv[r * m..(r + 1) * m].to_vec());
        for i in 0..m {
            if i != r && u[i] != 0.0 {
                let f = u[i];
                for c in 0..m {
                    self.binv[i * m + c] -= f * row_r[c];
                }
                self.xb[i] -= f * xr;
            }
        }
        let leaving = self.basis[r];
        self.in_basis[leaving] = false;
        self.in_basis[q] = true;
        self.basis[r] = q;
        self.iterations += 1;
        self.since_refactor += 1;
    }

    /// Gauss–Jordan rebuild of `B⁻¹` and `x_B` from the basis columns.
    fn refactor(&mut self) -> Result<(), LpError> {
        let m = self.m;
        let mut aug = vec![0.0; m * 2 * m];
        let mut col = vec![0.0; m];
        for (c, &j) in self.basis.iter().enumerate() {
            self.column(j, &mut col);
            for r in 0..m {
                aug[r * 2 * m + c] = col[r];
            }
        }
        for r in 0..m {
            aug[r * 2 * m + m + r] = 1.0;
        }
        let big = (0..m).flat_map(|r| aug[r * 2 * m..r * 2 * m + m].iter()).fold(0.0f64, |a, v| a.max(v.abs()));
        for c in 0..m {
            let mut p = c;
            let mut best = aug[c * 2 * m + c].abs();
            for r in c + 1..m {
                let v = aug[r * 2 * m + c].abs();
                if v > best {
                    best = v;
                    p = r;
                }
            }
            if best <= 1e-15 * big {
                return Err(LpError::SingularBasis);
            }
            if p != c {
                for k in 0..2 * m {
                    aug.swap(c * 2 * m + k, p * 2 * m + k);
                }
            }
            let d = aug[c * 2 * m + c];
            for k in 0..2 * m {
                aug[c * 2 * m + k] /= d;
            }
            for r in 0..m {
                if r != c {
                    let f = aug[r * 2 * m + c];
                    if f != 0.0 {
                        for k in 0..2 * m {
                            aug[r * 2 * m + k] -= f * aug[c * 2 * m + k];
                        }
                    }
                }
            }
        }
        for r in 0..m {
            self.binv[r * m..(r + 1) * m].copy_from_slice(&aug[r * 2 * m + m..(r + 1) * 2 * m]);
        }
        for r in 0..m {
            let v = dot(&self.binv[r * m..(r + 1) * m], &self.rhs);
            self.xb[r] = if v < 0.0 && v > -self.opts.feas_tol { 0.0 } else { v };
        }
        self.since_refactor = 0;
        Ok(())
    }

    fn run_phase(&mut self, phase_one: bool) -> Result<PhaseEnd, LpError> {
        let total = self.ncols + self.m;
        loop {
            if self.iterations >= self.opts.max_iterations {
                return Err(LpError::IterationLimit(self.iterations));
            }
            if self.since_refactor >= self.opts.refactor_every {
                self.refactor()?;
            }
            let pi = self.multipliers(phase_one);
            let scale = 1.0 + pi.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            // Dantzig pricing; Bland's rule after a run of degenerate pivots
            let bland = self.degenerate_run >= DEGENERATE_RUN_LIMIT;
            let mut entering = None;
            let mut best = -self.opts.feas_tol * scale;
            for j in 0..total {
                if self.in_basis[j] || (!phase_one && j >= self.ncols) {
                    continue;
                }
                let d = self.reduced_cost(j, &pi, phase_one);
                if d < best {
                    entering = Some(j);
                    if bland {
                        break;
                    }
                    best = d;
                }
            }
            let Some(q) = entering else {
                return Ok(PhaseEnd::Optimal);
            };
            let u = self.direction(q);
            let mut leave: Option<(usize, f64)> = None;
            for r in 0..self.m {
                if u[r] > self.opts.pivot_tol {
                    let ratio = self.xb[r].max(0.0) / u[r];
                    leave = match leave {
                        None => Some((r, ratio)),
                        Some((br, bv)) => {
                            let tie = (ratio - bv).abs() <= 1e-12 * (1.0 + bv.abs());
                            if ratio < bv && !tie || tie && self.basis[r] < self.basis[br] {
                                Some((r, ratio))
                            } else {
                                Some((br, bv))
                            }
                        }
                    };
                }
            }
            let Some((r, step)) = leave else {
                return Ok(PhaseEnd::Unbounded);
            };
            if step <= 1e-12 {
                self.degenerate_run += 1;
            } else {
                self.degenerate_run = 0;
            }
            self.pivot(r, q, &u);
        }
    }

    /// Pivots zero-level artificials out of the basis where a structural
    /// column can replace them; rows with no replacement are redundant.
    fn expel_artificials(&mut self) {
        for r in 0..self.m {
            if self.basis[r] < self.ncols {
                continue;
            }
            let m = self.m;
            let row: Vec<f64> = self.binv[r * m..(r + 1) * m].to_vec();
            let mut col = vec![0.0; m];
            let mut best: Option<(usize, f64)> = None;
            for j in 0..self.ncols {
                if self.in_basis[j] {
                    continue;
                }
                self.column(j, &mut col);
                let v = dot(&row, &col).abs();
                if v > 1e-7 && best.is_none_or(|(_, b)| v > b) {
                    best = Some((j, v));
                }
            }
            if let Some((j, _)) = best {
                let u = self.direction(j);
                self.pivot(r, j, &u);
            }
        }
    }
}

/// Solves the program; see the module docs for the method.
pub fn solve(lp: &LinearProgram, opts: &SimplexOptions) -> Result<LpOutcome, LpError> {
    if lp.objective.iter().all(|&c| c == 0.0) {
        return solve_with(lp, opts, false);
    }
    match solve_with(lp, opts, true)? {
        LpOutcome::Optimal(s) => Ok(LpOutcome::Optimal(s)),
        _ => solve_with(lp, opts, false),
    }
}

fn solve_with(lp: &LinearProgram, opts: &SimplexOptions, perturb: bool) -> Result<LpOutcome, LpError> {
    let m = lp.vars;
    if m == 0 {
        return Ok(if lp.rhs.iter().all(|&b| b >= -opts.feas_tol) {
            LpOutcome::Optimal(LpSolution { x: Vec::new(), value: 0.0, iterations: 0 })
        } else {
            LpOutcome::Infeasible
        });
    }
    let mut t = Tableau::new(lp, *opts, perturb);

    t.run_phase(true)?;
    t.refactor()?;
    let infeas: f64 = t.basis.iter().zip(&t.xb).filter(|(&j, _)| j >= t.ncols).map(|(_, &v)| v.max(0.0)).sum();
    let rhs_scale = 1.0 + t.rhs.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    if infeas > 1e-7 * rhs_scale {
        // dual infeasible: the primal objective is unbounded or the primal
        // is infeasible as well; distinguish with a zero-objective pass
        if lp.objective.iter().any(|&c| c != 0.0) {
            let mut feas = LinearProgram::new(vec![0.0; m]);
            feas.rows.clone_from(&lp.rows);
            feas.rhs.clone_from(&lp.rhs);
            return match solve(&feas, opts)? {
                LpOutcome::Infeasible => Ok(LpOutcome::Infeasible),
                _ => Ok(LpOutcome::Unbounded),
            };
        }
        return Ok(LpOutcome::Unbounded);
    }
    t.expel_artificials();
    t.refactor()?;

    match t.run_phase(false)? {
        PhaseEnd::Unbounded => Ok(LpOutcome::Infeasible),
        PhaseEnd::Optimal => {
            t.refactor()?;
            let pi = t.multipliers(false);
            let x: Vec<f64> = pi.iter().zip(&t.sign).map(|(p, s)| p * s).collect();
            let value = dot(&lp.objective, &x);
            Ok(LpOutcome::Optimal(LpSolution { x, value, iterations: t.iterations }))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn optimal(o: LpOutcome) -> LpSolution {
        match o {
            LpOutcome::Optimal(s) => s,
            other => panic!("expected optimum, got {other:?}"),
        }
    }

    #[test]
    fn textbook_problem() {
        // max 3x + 5y, x ≤ 4, 2y ≤ 12, 3x + 2y ≤ 18, x,y ≥ 0 → 36 at (2, 6)
        let mut lp = LinearProgram::new(vec![3.0, 5.0]);
        lp.add_le(&[1.0, 0.0], 4.0);
        lp.add_le(&[0.0, 2.0], 12.0);
        lp.add_le(&[3.0, 2.0], 18.0);
        lp.add_le(&[-1.0, 0.0], 0.0);
        lp.add_le(&[0.0, -1.0], 0.0);
        let s = optimal(solve(&lp, &SimplexOptions::default()).unwrap());
        assert!((s.value - 36.0).abs() < 1e-9);
        assert!((s.x[0] - 2.0).abs() < 1e-9 && (s.x[1] - 6.0).abs() < 1e-9);
    }

    #[test]
    fn unbounded_direction() {
        let mut lp = LinearProgram::new(vec![1.0, 1.0]);
        lp.add_le(&[1.0, 0.0], 1.0);
        assert_eq!(solve(&lp, &SimplexOptions::default()).unwrap(), LpOutcome::Unbounded);
    }

    #[test]
    fn infeasible_system() {
        let mut lp = LinearProgram::new(vec![1.0]);
        lp.add_le(&[1.0], -1.0);
        lp.add_le(&[-1.0], -1.0);
        assert_eq!(solve(&lp, &SimplexOptions::default()).unwrap(), LpOutcome::Infeasible);
        let mut feas = LinearProgram::new(vec![0.0]);
        feas.add_le(&[1.0], -1.0);
        feas.add_le(&[-1.0], -1.0);
        assert_eq!(solve(&feas, &SimplexOptions::default()).unwrap(), LpOutcome::Infeasible);
    }

    #[test]
    fn equality_and_degenerate_rows() {
        // max x + y with x = y, x + y ≤ 2 listed three times
        let mut lp = LinearProgram::new(vec![1.0, 1.0]);
        lp.add_eq(&[1.0, -1.0], 0.0);
        for _ in 0..3 {
            lp.add_le(&[1.0, 1.0], 2.0);
        }
        let s = optimal(solve(&lp, &SimplexOptions::default()).unwrap());
        assert!((s.value - 2.0).abs() < 1e-9);
        assert!((s.x[0] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn polygon_disc_relaxation() {
        // max x subject to the 16-gon circumscribing the unit disc → 1
        let m = 16;
        let mut lp = LinearProgram::new(vec![1.0, 0.0]);
        for l in 0..m {
            let t = 2.0 * core::f64::consts::PI * l as f64 / m as f64 + 0.1;
            lp.add_le(&[t.cos(), t.sin()], 1.0);
        }
        let s = optimal(solve(&lp, &SimplexOptions::default()).unwrap());
        assert!(s.value >= 1.0 - 1e-12);
        assert!(s.value <= 1.0 / (core::f64::consts::PI / 16.0).cos() + 1e-12);
        assert!(lp.max_violation(&s.x) < 1e-9);
    }

    #[test]
    fn zero_objective_feasibility() {
        let mut lp = LinearProgram::new(vec![0.0, 0.0]);
        lp.add_le(&[1.0, 0.0], 1.0);
        lp.add_le(&[-1.0, 0.0], 1.0);
        let s = optimal(solve(&lp, &SimplexOptions::default()).unwrap());
        assert_eq!(s.value, 0.0);
        assert!(lp.max_violation(&s.x) <= 1e-12);
    }
}
