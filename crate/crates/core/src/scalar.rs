//! Scalar abstraction shared by the state-level math.
//!
//! The 2×2 linear algebra and the entropy functions are written against
//! [`Real`] so they run in `f32` as well as `f64`. Bath quadrature and the
//! trajectory pipeline are `f64` only: their default tolerance (1e-9
//! absolute) is below single-precision resolution.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating-point scalar with the per-precision tolerances used for
/// physical-state checks.
pub trait Real:
    Float + FloatConst + FromPrimitive + Sum + Debug + Display + Default + Send + Sync + 'static
{
    /// Slack on density-matrix eigenvalues below 0 (and above 1).
    fn positivity_tol() -> Self;
    /// Allowed deviation of a normalized trace from 1.
    fn trace_tol() -> Self;
    /// Eigenvalues above this count toward the rank.
    fn rank_tol() -> Self;
    /// Relative eigenvalue gap below which a matrix may be defective.
    fn defect_gap_tol() -> Self;
    /// Eigenvector overlap above `1 - defect_overlap_tol` marks coalescence.
    fn defect_overlap_tol() -> Self;

    /// Converts an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }
}

impl Real for f64 {
    fn positivity_tol() -> Self {
        1e-10
    }
    fn trace_tol() -> Self {
        1e-12
    }
    fn rank_tol() -> Self {
        1e-12
    }
    fn defect_gap_tol() -> Self {
        1e-9
    }
    fn defect_overlap_tol() -> Self {
        1e-6
    }
}

impl Real for f32 {
    fn positivity_tol() -> Self {
        1e-5
    }
    fn trace_tol() -> Self {
        1e-5
    }
    fn rank_tol() -> Self {
        1e-6
    }
    fn defect_gap_tol() -> Self {
        1e-4
    }
    fn defect_overlap_tol() -> Self {
        1e-3
    }
}
