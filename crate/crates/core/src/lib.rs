//! Numerical toolkit for weighted homogeneous extremal functions.
//!
//! The crate evaluates the weighted homogeneous extremal function by
//! degree-truncated linear programming, estimates growth of entire functions
//! from power-series data, rebuilds entire functions from their restrictions to
//! unions of complex lines, and localizes supports of functions from partial
//! Radon-transform data.
//!
//! Everything here is `no_std` with `alloc`; file formats, the CLI and thread
//! pools live in the companion `extremal` crate.

#![no_std]
#![allow(clippy::needless_range_loop)]
#![allow(clippy::too_many_arguments)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod entire;
pub mod extension;
pub mod extremal;
pub mod linalg;
pub mod localize;
pub mod norms;
pub mod poly;
pub mod quadrature;
pub mod radon;
pub mod sampling;
pub mod simplex;

pub use num_complex::Complex64;

pub use extremal::{ExtremalEvalResult, PsiError, SolverConfig, WeightedDirectionSet};
pub use poly::{ComplexPoint, HomogeneousPolynomial, MultiIndex, Scaling};
