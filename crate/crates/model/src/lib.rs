//! Lumped-parameter structural models on compliant foundations.
//!
//! This crate assembles the mass, damping and stiffness matrices of shear
//! buildings supported by spring-dashpot foundation cells, evaluates the
//! hysteretic story springs that make the superstructure nonlinear, and
//! extracts complex modes from the assembled first-order system.
//!
//! The displacement basis is relative: story displacements are measured
//! against the foundation node, the foundation sway against the ground, so a
//! single influence vector turns a ground acceleration record into nodal
//! loads.  Builders cover the fixed-base case, a sway-only support (for use
//! with an external rocking impedance), a constant sway-rocking support, and
//! the full physical support whose internal dashpot cell reproduces a
//! frequency-dependent rocking impedance exactly.

pub mod cone;
pub mod fixtures;
pub mod material;
pub mod modal;
pub mod system;

pub use cone::{cone_foundation_params, ConeEmbedmentForm, ConeFoundationParams};
pub use material::NonlinearMaterial;
pub use modal::{
    complex_modes, complex_modes_matrices, period_lengthening, Mode, PeriodShift,
    SupportCompliance,
};
pub use system::{
    build_soil_structure_model, DampingSpec, DofKind, DofLayout, FoundationModel,
    FoundationProps, Story, StorySpring, SystemModel,
};

use thiserror::Error;

/// Errors produced while defining or analyzing a model.
#[derive(Debug, Error)]
pub enum ModelError {
    #[error("invalid material parameter: {0}")]
    InvalidMaterial(String),
    #[error("invalid cone-model parameter: {0}")]
    InvalidCone(String),
    #[error("invalid model definition: {0}")]
    InvalidModel(String),
    #[error("mass matrix is singular")]
    SingularMass,
    #[error("period-lengthening iteration did not converge within {0} iterations")]
    PeriodNonConvergence(usize),
}
