use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("x = {x} lies outside the open domain ({lower}, {upper})")]
    Domain { x: f64, lower: f64, upper: f64 },

    #[error("singular {what} at x = {x} (value {value:e})")]
    Singularity { what: &'static str, x: f64, value: f64 },

    #[error("state index {n} outside the bound-state range (available: {available})")]
    Index { n: usize, available: usize },

    #[error("invalid deformation: {0}")]
    InvalidDeformation(String),

    #[error("degenerate denominator in {0}")]
    DegenerateDenominator(&'static str),

    #[error("quadrature failed on [{a}, {b}]: error estimate {err_est:e} above tolerance {tol:e}")]
    Quadrature { a: f64, b: f64, err_est: f64, tol: f64 },

    #[error("eigensolver did not converge: level {level} Richardson correction {correction:e} exceeds {tol:e}")]
    NonConvergence { level: usize, correction: f64, tol: f64 },

    #[error("spurious eigenvalue {value} below {threshold} (domain-truncation artifact near a singular boundary)")]
    SpuriousEigenvalue { value: f64, threshold: f64 },

    #[error("invalid grid: {0}")]
    Grid(String),
}

impl Error {
    /// True for failures of the numerical machinery as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::Singularity { .. }
                | Error::Quadrature { .. }
                | Error::NonConvergence { .. }
                | Error::SpuriousEigenvalue { .. }
                | Error::DegenerateDenominator(_)
        )
    }
}
