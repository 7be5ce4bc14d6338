//! Grids, quadrature, finite differences and the bound-state eigensolver.

mod diff;
mod eigen;
mod grid;
mod quad;

pub use diff::{central_diff, DiffOrder};
pub use eigen::{
    fd_eigensolve, fd_eigensolve_detailed, sturm_count, tridiagonal_lowest, EigenSolution,
    MAX_LEVELS,
};
pub use grid::{GridSpec, SampledFunction, MIN_NODES};
pub use quad::{adaptive_quad, integrate, QuadOptions, QuadResult, RULE_POINTS};
