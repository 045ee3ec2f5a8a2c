//! Thread-parallel versions of the core drivers. Each evaluates points
//! independently and reduces in input order, so results match the serial
//! versions exactly for any thread count.

use extremal_core::extremal::{
    CapacityEstimate, ExtremalEvalResult, ExtremalSolver, PsiError, SolverConfig, WeightedDirectionSet,
};
use extremal_core::localize::{support_offset, LocalizeError};
use extremal_core::poly::ComplexPoint;
use extremal_core::sampling;
use rayon::prelude::*;

pub fn psi_grid(
    set: &WeightedDirectionSet,
    grid: &[ComplexPoint],
    cfg: &SolverConfig,
) -> Result<Vec<Result<ExtremalEvalResult, PsiError>>, PsiError> {
    let solver = ExtremalSolver::new(set, cfg)?;
    Ok(grid.par_iter().map(|z| solver.eval(z)).collect())
}

/// Same reduction as the serial capacity estimate: the first failure in
/// sample order decides, and the maximizer is the first strict maximum.
pub fn capacity_homog(
    set: &WeightedDirectionSet,
    cfg: &SolverConfig,
    sphere_samples: usize,
) -> Result<CapacityEstimate, PsiError> {
    if set.weights().iter().any(|&w| w != 1.0) {
        return Err(PsiError::InvalidSet("capacity is defined for unit weights"));
    }
    let solver = ExtremalSolver::new(set, cfg)?;
    let points = sampling::complex_sphere(set.dimension(), sphere_samples, 0);
    let values: Vec<Result<f64, PsiError>> = points.par_iter().map(|z| solver.eval(z).map(|r| r.value)).collect();
    let mut sup = 0.0;
    let mut maximizer = None;
    for (z, v) in points.into_iter().zip(values) {
        match v {
            Ok(v) => {
                if v > sup {
                    sup = v;
                    maximizer = Some(z);
                }
            }
            Err(e @ PsiError::UnboundedDegree(_)) => {
                return Ok(CapacityEstimate {
                    capacity: 0.0,
                    zero_flag: true,
                    sup_psi: f64::INFINITY,
                    maximizer: Some(z),
                    samples: sphere_samples,
                    diagnostic: Some(e),
                })
            }
            Err(e) => return Err(e),
        }
    }
    Ok(CapacityEstimate {
        capacity: if sup > 0.0 { 1.0 / sup } else { 0.0 },
        zero_flag: sup <= 0.0,
        sup_psi: sup,
        maximizer,
        samples: sphere_samples,
        diagnostic: None,
    })
}

/// Support offsets over the localization grid; the first failing direction
/// in grid order is reported.
pub fn support_offsets(solver: &ExtremalSolver, grid: &[Vec<f64>]) -> Result<Vec<f64>, LocalizeError> {
    let out: Vec<Result<f64, LocalizeError>> = grid.par_iter().enumerate().map(|(i, t)| support_offset(solver, i, t)).collect();
    out.into_iter().collect()
}
