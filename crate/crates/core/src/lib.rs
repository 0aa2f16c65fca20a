//! Resonant normal forms and beating solutions of the quintic NLS on the circle.
//!
//! The crate is organized around the constructive pipeline:
//!
//! - [`modes`]: exact integer combinatorics of resonant sextuples and
//!   classification of tangential mode sets.
//! - [`upoly`] / [`birkhoff`]: polynomials in the Fourier amplitudes and one
//!   step of Birkhoff normal form for the truncated Hamiltonian.
//! - [`pendulum`]: the integrable reduced system `A(K,p) + B(K,p) cos q` on
//!   the tangential modes: fixed points, separatrix, action-angle data,
//!   frequency map, twist matrix.
//! - [`floquet`]: reduction of the time-periodic 2x2 blocks for modes ±3, ±4
//!   to constant coefficients and the normal frequencies Θ±3, Θ±4.
//! - [`poly`] / [`norm`]: sparse graded Hamiltonians in angle/action/normal
//!   variables, Poisson brackets, projections, majorant norms.
//! - [`melnikov`]: non-resonance verification (exact at the anchor point,
//!   floating sweeps elsewhere) and Monte Carlo measure estimation.
//! - [`kam`]: the homological equation and a desk-scale quadratic iteration.
//! - [`galerkin`]: direct time integration of the truncated NLS exhibiting
//!   the beating solutions.

pub mod birkhoff;
pub mod floquet;
pub mod galerkin;
pub mod jet;
pub mod kam;
pub mod melnikov;
pub mod modes;
pub mod norm;
pub mod ode;
pub mod pendulum;
pub mod poly;
pub mod upoly;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("enumeration box {0} exceeds the safety bound {1}")]
    BoxTooLarge(i64, i64),
    #[error("tangential set is not complete: {0}")]
    NotComplete(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("root solver failed: {0}")]
    Solver(String),
    #[error("parameter outside admissible domain: {0}")]
    Domain(String),
    #[error("ODE integration failed: {0}")]
    Integration(String),
    #[error("small divisor below threshold: |{divisor:.3e}| < {threshold:.3e} at {index}")]
    SmallDivisor {
        divisor: f64,
        threshold: f64,
        index: String,
    },
    #[error("coefficient mismatch against closed form: {0}")]
    CoefficientMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
