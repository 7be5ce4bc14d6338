use serde::Serialize;

use crate::error::{Error, Result};

/// Smallest node count accepted for a grid.
pub const MIN_NODES: usize = 200;

/// Uniform grid on `[x_min, x_max]`, endpoints included.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSpec {
    x_min: f64,
    x_max: f64,
    n: usize,
}

impl GridSpec {
    pub fn new(x_min: f64, x_max: f64, n: usize) -> Result<Self> {
        if !(x_min.is_finite() && x_max.is_finite()) || x_min >= x_max {
            return Err(Error::Grid(format!("need finite x_min < x_max, got [{x_min}, {x_max}]")));
        }
        if n < MIN_NODES {
            return Err(Error::Grid(format!("need at least {MIN_NODES} nodes, got {n}")));
        }
        Ok(Self { x_min, x_max, n })
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spacing(&self) -> f64 {
        (self.x_max - self.x_min) / (self.n - 1) as f64
    }

    pub fn node(&self, i: usize) -> f64 {
        if i + 1 == self.n {
            self.x_max
        } else {
            self.x_min + i as f64 * self.spacing()
        }
    }

    pub fn nodes(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        (0..self.n).map(move |i| self.node(i))
    }

    /// Same interval with the spacing halved (`2n - 1` nodes).
    pub fn refined(&self) -> Self {
        Self { n: 2 * self.n - 1, ..*self }
    }

    /// Same spacing rule restricted to a sub-interval.
    pub fn with_bounds(&self, x_min: f64, x_max: f64) -> Result<Self> {
        Self::new(x_min, x_max, self.n)
    }
}

/// Function values at the nodes of a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction {
    grid: GridSpec,
    values: Vec<f64>,
}

impl SampledFunction {
    pub fn new(grid: GridSpec, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::Grid(format!(
                "{} values for a grid of {} nodes",
                values.len(),
                grid.len()
            )));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::Grid(format!("non-finite value at node {i} (x = {})", grid.node(i))));
        }
        Ok(Self { grid, values })
    }

    pub fn tabulate(grid: GridSpec, f: impl Fn(f64) -> Result<f64>) -> Result<Self> {
        let values = grid.nodes().map(f).collect::<Result<Vec<_>>>()?;
        Self::new(grid, values)
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Composite trapezoid rule over the grid.
    pub fn trapezoid(&self) -> f64 {
        let h = self.grid.spacing();
        let inner: f64 = self.values[1..self.values.len() - 1].iter().sum();
        h * (inner + 0.5 * (self.values[0] + self.values[self.values.len() - 1]))
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Number of sign changes, ignoring values below `floor * max|f|`.
    pub fn sign_changes(&self, floor: f64) -> usize {
        let cut = floor * self.max_abs();
        let mut last = 0.0f64;
        let mut count = 0;
        for &v in &self.values {
            if v.abs() <= cut {
                continue;
            }
            if last != 0.0 && v.signum() != last.signum() {
                count += 1;
            }
            last = v;
        }
        count
    }
}
