//! Open-system dynamics of PT- and Anti-PT-symmetric qubits under bosonic
//! dephasing.
//!
//! The pipeline is
//!
//! 1. [`dynamics`] builds the non-Hermitian Hamiltonian, checks the
//!    unbroken-phase condition and evolves the reduced density matrix using
//!    the closed-form dephasing factors from [`bath`];
//! 2. [`qsl`] turns a [`Trajectory`] into Bures angles and speed-limit
//!    quantities;
//! 3. [`entropy`] evaluates the Rényi family along it.
//!
//! [`linalg2`] and [`entropy`] are generic over [`Real`]; everything that
//! touches the bath integrals is `f64`.

pub mod bath;
pub mod dynamics;
pub mod entropy;
mod error;
pub mod linalg2;
pub mod qsl;
mod scalar;

pub use num_complex::Complex;

pub use bath::{BathKernels, BathParams, Kernel, QuadratureResult};
pub use dynamics::{QubitParams, SpectralSplit, Symmetry, Trajectory};
pub use error::{Error, Result};
pub use linalg2::{fidelity, infidelity, CMat2, DensityMatrix, Eigen2};
pub use scalar::Real;

/// Double-precision complex number.
pub type C64 = Complex<f64>;
/// Double-precision 2×2 complex matrix.
pub type Mat2 = CMat2<f64>;
/// Single-precision 2×2 complex matrix.
pub type Mat2F32 = CMat2<f32>;
/// Double-precision qubit state.
pub type State = DensityMatrix<f64>;
/// Single-precision qubit state.
pub type StateF32 = DensityMatrix<f32>;

/// Library version, as recorded in run manifests.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
