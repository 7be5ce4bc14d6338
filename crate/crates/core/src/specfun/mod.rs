//! Classical and exceptional orthogonal polynomials and the error function.
//!
//! Degrees are signed: any negative degree denotes the zero polynomial, so
//! expressions such as `L_{n-1}` at `n = 0` need no special casing by callers.

mod erf;
mod exceptional;
mod poly;

pub use erf::{erf, erfc};
pub use exceptional::{x_jacobi, x_jacobi_deriv, x_jacobi_scaled, x_laguerre, x_laguerre_deriv};
pub use poly::{
    jacobi, jacobi_deriv, jacobi_deriv_scaled, jacobi_explicit, jacobi_scaled, laguerre, laguerre_deriv,
};

/// Parameters of a (possibly exceptional) Laguerre or Jacobi polynomial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolyParams {
    pub alpha: f64,
    pub beta: f64,
    /// Degree; `-1` is the zero-polynomial sentinel.
    pub degree: i32,
    /// Exceptional extension order `m`.
    pub order: u32,
}

impl PolyParams {
    pub fn laguerre(&self, z: f64) -> f64 {
        laguerre(self.degree, self.alpha, z)
    }

    pub fn jacobi(&self, z: f64) -> f64 {
        jacobi(self.degree, self.alpha, self.beta, z)
    }
}
