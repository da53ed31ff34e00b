//! Newmark-beta time integration for linear and hysteretic systems.
//!
//! One step advances a [`State`] of displacement, velocity and acceleration
//! under the discrete equilibrium equation; the linear path factors the
//! effective stiffness once per analysis, the nonlinear path runs a Newton
//! iteration with a consistent tangent and commits material state on
//! convergence.  An extra-force hook on the right-hand side lets callers
//! inject filter forces or pseudo-forces evaluated at the new time.
//!
//! The companion stability analyzer assembles the single-mode amplification
//! operator, evaluates its nontrivial eigenvalues in closed form, and scans
//! spectral radii over a (beta, dt/T) grid.

pub mod history;
pub mod integrate;
pub mod stability;

pub use history::{State, TimeHistory};
pub use integrate::{
    initial_acceleration, integrate_linear, integrate_nonlinear, newmark_step_linear,
    newmark_step_nonlinear, LinearStepper, NewtonSettings,
};
pub use stability::{
    amplification_eigenvalues, amplification_matrix, newmark_block_operator, spectral_radius,
    stability_map,
};

use thiserror::Error;

/// Integration parameters: the two Newmark weights and the sampling step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NewmarkParams {
    pub gamma: f64,
    pub beta: f64,
    pub dt: f64,
}

impl NewmarkParams {
    /// Validates `beta > 0` and `dt > 0`; `gamma` is unrestricted.
    pub fn new(gamma: f64, beta: f64, dt: f64) -> Result<Self, NewmarkError> {
        if !(beta > 0.0) || !beta.is_finite() {
            return Err(NewmarkError::InvalidParams(format!(
                "beta must be positive and finite, got {beta}"
            )));
        }
        if !(dt > 0.0) || !dt.is_finite() {
            return Err(NewmarkError::InvalidParams(format!(
                "dt must be positive and finite, got {dt}"
            )));
        }
        if !gamma.is_finite() {
            return Err(NewmarkError::InvalidParams(format!(
                "gamma must be finite, got {gamma}"
            )));
        }
        Ok(Self { gamma, beta, dt })
    }

    /// The unconditionally stable default, gamma = 1/2 and beta = 1/4.
    pub fn average_acceleration(dt: f64) -> Result<Self, NewmarkError> {
        Self::new(0.5, 0.25, dt)
    }
}

/// Errors produced by the integrators.
#[derive(Debug, Error)]
pub enum NewmarkError {
    #[error("invalid integration parameters: {0}")]
    InvalidParams(String),
    #[error("effective stiffness matrix is singular")]
    SingularEffectiveStiffness,
    #[error("mass matrix is singular")]
    SingularMass,
    #[error(
        "Newton iteration diverged at step {step}: relative unbalance {residual:e} after {iterations} iterations"
    )]
    NewtonDivergence {
        step: usize,
        iterations: usize,
        residual: f64,
    },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}
