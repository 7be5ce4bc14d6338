//! Bound states of `-d^2/dx^2 + V(x)` with Dirichlet walls.
//!
//! The operator is discretized with the three-point stencil on a uniform grid,
//! giving a symmetric tridiagonal matrix whose lowest eigenvalues are found by
//! Sturm-sequence bisection. Solving on the grid and on its refinement lets a
//! Richardson step cancel the leading `O(h^2)` error.

use rayon::prelude::*;

use super::grid::GridSpec;
use crate::error::{Error, Result};

/// Largest number of levels the solver will return.
pub const MAX_LEVELS: usize = 15;

#[derive(Debug, Clone, PartialEq)]
pub struct EigenSolution {
    /// Richardson-extrapolated eigenvalues, ascending.
    pub eigenvalues: Vec<f64>,
    /// Raw eigenvalues on the input grid.
    pub coarse: Vec<f64>,
    /// Raw eigenvalues on the refined grid.
    pub fine: Vec<f64>,
}

impl EigenSolution {
    /// Size of the Richardson correction applied to each level.
    pub fn corrections(&self) -> Vec<f64> {
        self.fine.iter().zip(&self.coarse).map(|(f, c)| (f - c).abs() / 3.0).collect()
    }
}

/// Lowest `k` eigenvalues; fails if any Richardson correction exceeds `tol`.
pub fn fd_eigensolve<F>(v: F, grid: &GridSpec, k: usize, tol: f64) -> Result<Vec<f64>>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    let sol = fd_eigensolve_detailed(v, grid, k)?;
    if let Some((level, &correction)) =
        sol.corrections().iter().enumerate().find(|(_, c)| **c > tol)
    {
        return Err(Error::NonConvergence { level, correction, tol });
    }
    Ok(sol.eigenvalues)
}

pub fn fd_eigensolve_detailed<F>(v: F, grid: &GridSpec, k: usize) -> Result<EigenSolution>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    if k == 0 || k > MAX_LEVELS {
        return Err(Error::Grid(format!("requested {k} levels, supported 1..={MAX_LEVELS}")));
    }
    let fine_grid = grid.refined();
    // interior nodes of the refined grid; the even ones are the coarse interior
    let potential = (1..fine_grid.len() - 1)
        .into_par_iter()
        .map(|i| {
            let x = fine_grid.node(i);
            let value = v(x)?;
            if value.is_finite() {
                Ok(value)
            } else {
                Err(Error::Singularity { what: "potential", x, value })
            }
        })
        .collect::<Result<Vec<f64>>>()?;
    let coarse_potential: Vec<f64> = potential.iter().skip(1).step_by(2).copied().collect();

    let coarse = lowest_levels(&coarse_potential, grid.spacing(), k)?;
    let fine = lowest_levels(&potential, fine_grid.spacing(), k)?;
    let eigenvalues = fine.iter().zip(&coarse).map(|(f, c)| f + (f - c) / 3.0).collect();
    Ok(EigenSolution { eigenvalues, coarse, fine })
}

fn lowest_levels(potential: &[f64], h: f64, k: usize) -> Result<Vec<f64>> {
    if potential.len() < k {
        return Err(Error::Grid(format!("{} interior nodes cannot hold {k} levels", potential.len())));
    }
    let inv_h2 = 1.0 / (h * h);
    let diag: Vec<f64> = potential.iter().map(|v| 2.0 * inv_h2 + v).collect();
    let off = vec![-inv_h2; diag.len() - 1];
    Ok(tridiagonal_lowest(&diag, &off, k))
}

/// Number of eigenvalues of the symmetric tridiagonal matrix below `x`.
pub fn sturm_count(diag: &[f64], off: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut q = 1.0;
    for (i, &d) in diag.iter().enumerate() {
        let coupling = if i == 0 { 0.0 } else { off[i - 1] * off[i - 1] };
        q = if i == 0 { d - x } else { d - x - coupling / q };
        if q == 0.0 {
            q = -f64::EPSILON * (d.abs() + x.abs()).max(f64::MIN_POSITIVE);
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// Lowest `k` eigenvalues of a symmetric tridiagonal matrix, ascending.
pub fn tridiagonal_lowest(diag: &[f64], off: &[f64], k: usize) -> Vec<f64> {
    let n = diag.len();
    let k = k.min(n);
    let mut lo = f64::INFINITY;
    for i in 0..n {
        let left = if i > 0 { off[i - 1].abs() } else { 0.0 };
        let right = if i + 1 < n { off[i].abs() } else { 0.0 };
        lo = lo.min(diag[i] - left - right);
    }
    let mut out = Vec::with_capacity(k);
    let mut floor = lo;
    for level in 0..k {
        // smallest x with count(x) > level
        let mut a = floor;
        let mut step = 1.0f64.max(floor.abs());
        let mut b = a + step;
        while sturm_count(diag, off, b) <= level {
            a = b;
            step *= 2.0;
            b += step;
        }
        for _ in 0..200 {
            let mid = 0.5 * (a + b);
            if mid <= a || mid >= b {
                break;
            }
            if sturm_count(diag, off, mid) > level {
                b = mid;
            } else {
                a = mid;
            }
            if b - a <= 2.0 * f64::EPSILON * a.abs().max(b.abs()).max(1e-300) {
                break;
            }
        }
        let value = 0.5 * (a + b);
        out.push(value);
        floor = a;
    }
    out
}
