//! Foundation impedance functions.
//!
//! An impedance `S(omega) = k(omega) + i omega c(omega)` relates a harmonic
//! boundary displacement to the reaction force of the unbounded soil.  The
//! crate provides closed-form families (semi-infinite rods, the cone-model
//! rocking cell, the three-coefficient rocking approximation), tabulated
//! impedances with cubic-spline interpolation, the split of an impedance
//! into its singular (instantaneous) and regular parts, and the extraction
//! of an impedance value from harmonic response histories.

pub mod families;
pub mod harmonic;
pub mod singular;
pub mod special;
pub mod table;

pub use families::{
    rocking_if_from_cone, rod_elastic_foundation, rod_exponential_area, ImpedanceFunction,
    VeletsosVerbicRocking,
};
pub use harmonic::extract_impedance_harmonic;
pub use singular::{singular_decompose, SingularPart};
pub use special::{bessel_j1, rod_exponential_irf_kernel};
pub use table::ImpedanceTable;

use thiserror::Error;

/// Errors produced while constructing or evaluating impedance functions.
#[derive(Debug, Error)]
pub enum ImpedanceError {
    #[error("impedance table needs at least 4 points, got {0}")]
    TableTooShort(usize),
    #[error("table frequencies must increase strictly (violated at row {0})")]
    NonMonotonicFrequencies(usize),
    #[error("frequency {omega} rad/s outside the table range [{min}, {max}]")]
    OutOfRange { omega: f64, min: f64, max: f64 },
    #[error("grid too coarse for the singular split: {0}")]
    GridTooCoarse(String),
    #[error("invalid frequency grid: {0}")]
    InvalidGrid(String),
    #[error("degenerate harmonic fit: displacement has no content at the drive frequency")]
    DegenerateFit,
    #[error("invalid input: {0}")]
    InvalidInput(String),
}
