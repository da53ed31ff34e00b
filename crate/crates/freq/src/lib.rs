//! Exact frequency-domain response of linear soil-structure systems.
//!
//! The dynamic stiffness `-omega^2 M + i omega C + K + S(omega)` is solved
//! bin by bin on the padded FFT grid of the excitation and transformed back,
//! which is exact for linear systems and admits arbitrary frequency-dependent
//! foundation impedances `S(omega)`.  The half-spectrum transforms, the cubic
//! decay extension and the taper/zero-pad helpers live here as well because
//! the hybrid time/frequency solvers are built from the same pieces.

pub mod pad;
pub mod solve;
pub mod spectrum;

pub use pad::{decay_extension, pad_length_hint, taper_and_pad};
pub use solve::{solve_frequency_domain, FrequencyAttachment, GroundMotion, PadConfig};
pub use spectrum::{forward_half_fft, inverse_half_fft, SpectrumHalf};

use thiserror::Error;

/// Errors from the spectral helpers and the frequency-domain solver.
#[derive(Debug, Error)]
pub enum FreqError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("singular dynamic stiffness at bin {bin} (omega = {omega} rad/s)")]
    SingularBin { bin: usize, omega: f64 },
    #[error(transparent)]
    Impedance(#[from] ssi_impedance::ImpedanceError),
}
