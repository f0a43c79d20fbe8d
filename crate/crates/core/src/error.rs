use thiserror::Error;

use crate::bath::Kernel;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix has non-finite entries")]
    NonFinite,

    #[error("matrix is defective (eigenvalues {gap:e} apart with coalescing eigenvectors)")]
    DegenerateNonDiagonalizable { gap: f64 },

    #[error("not a physical state: {0}")]
    NonPhysicalState(String),

    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("{kernel} quadrature at t = {t} did not converge: error {abs_error:e} > tol {tol:e} after {evaluations} evaluations")]
    QuadratureDivergence {
        kernel: Kernel,
        t: f64,
        abs_error: f64,
        tol: f64,
        evaluations: usize,
    },

    #[error("symmetry is broken: {0}")]
    BrokenPhase(String),

    #[error("exceptional point: eigenvalue splitting is zero and the transformation is singular")]
    ExceptionalPoint,

    #[error("invalid time grid: {0}")]
    InvalidGrid(String),

    #[error("finite-difference stencil unavailable at grid index {index}")]
    GridTooCoarse { index: usize },

    #[error("Bures angle {angle} at t = {t} is too close to 0 or pi/2")]
    AngleSingularity { t: f64, angle: f64 },

    #[error("trajectory is stationary on [0, {horizon}]")]
    DegenerateTrajectory { horizon: f64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
