//! Capacity upper bounds for quantum channels from the causality measure of
//! their pseudo-density matrices.
//!
//! The crate is organised bottom-up:
//!
//! * [`matkernel`] dense complex linear algebra (Jacobi eigensolver, norms,
//!   partial trace/transpose),
//! * [`channel`] Kraus/Choi representations and named channel families,
//! * [`pdm`] two-time pseudo-density matrices and the causality measure,
//! * [`bounds`] causality, closed-form, Holevo–Werner and max-Rains surrogate
//!   bounds plus grid sweeps,
//! * [`verify`] fidelity utilities and randomized property suites.
//!
//! All numerical code is generic over [`Real`] (`f32` or `f64`). The aliases
//! below fix the scalar to `f64`, which is what the CLI uses.

pub mod bounds;
pub mod channel;
pub mod error;
pub mod matkernel;
pub mod pdm;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::Real;

/// Complex scalar over `T`.
pub type C<T> = num_complex::Complex<T>;

pub type Matrix = matkernel::ComplexMatrix<f64>;
pub type Matrix32 = matkernel::ComplexMatrix<f32>;
pub type Channel = channel::QuantumChannel<f64>;
pub type Channel32 = channel::QuantumChannel<f32>;
pub type Pdm = pdm::PseudoDensityMatrix<f64>;
pub type Pdm32 = pdm::PseudoDensityMatrix<f32>;
pub type Report = bounds::BoundReport<f64>;
pub type Eigen = matkernel::EigenDecomposition<f64>;
