//! Half-spectrum transforms of real signals.
//!
//! The forward transform carries the `1/N` scaling, so the DC bin equals the
//! signal mean and a unit-amplitude tone lands with magnitude one half.  The
//! inverse rebuilds the conjugate-symmetric full spectrum, transforms without
//! further scaling and keeps the real part, which for an even length treats
//! the Nyquist bin as real-valued.

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::FreqError;

/// One-sided spectrum of a real signal over `[0, Nyquist]`.
#[derive(Debug, Clone)]
pub struct SpectrumHalf {
    /// Bin spacing in Hz.
    pub df: f64,
    /// `floor(n_time / 2) + 1` bins; `values[0]` is real for real signals.
    pub values: Vec<Complex64>,
    /// Length of the originating (padded) time series.
    pub n_time: usize,
}

impl SpectrumHalf {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Angular frequency of bin `j` in rad/s.
    pub fn omega(&self, j: usize) -> f64 {
        2.0 * std::f64::consts::PI * self.df * j as f64
    }
}

/// Transform `x`, zero-padded to `n_total` samples, into its half spectrum.
pub fn forward_half_fft(x: &[f64], n_total: usize, dt: f64) -> Result<SpectrumHalf, FreqError> {
    if n_total == 0 {
        return Err(FreqError::InvalidInput(
            "transform length must be at least 1".into(),
        ));
    }
    if x.len() > n_total {
        return Err(FreqError::InvalidInput(format!(
            "signal of {} samples does not fit a {n_total}-sample transform",
            x.len()
        )));
    }
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(FreqError::InvalidInput(format!(
            "sample spacing must be positive, got {dt}"
        )));
    }
    let mut buf: Vec<Complex64> = x.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    buf.resize(n_total, Complex64::new(0.0, 0.0));
    FftPlanner::new().plan_fft_forward(n_total).process(&mut buf);
    let scale = 1.0 / n_total as f64;
    let values = buf[..n_total / 2 + 1].iter().map(|z| z * scale).collect();
    Ok(SpectrumHalf {
        df: 1.0 / (n_total as f64 * dt),
        values,
        n_time: n_total,
    })
}

/// Reconstruct the real `n_time`-sample signal from its half spectrum.
pub fn inverse_half_fft(spectrum: &SpectrumHalf) -> Result<Vec<f64>, FreqError> {
    let n = spectrum.n_time;
    if n == 0 || spectrum.values.len() != n / 2 + 1 {
        return Err(FreqError::InvalidInput(format!(
            "half spectrum of a {n}-sample signal needs {} bins, got {}",
            n / 2 + 1,
            spectrum.values.len()
        )));
    }
    let mut buf = vec![Complex64::new(0.0, 0.0); n];
    buf[0] = spectrum.values[0];
    for (j, &v) in spectrum.values.iter().enumerate().skip(1) {
        buf[j] = v;
        // for even n the Nyquist bin j == n - j maps to itself
        if n - j != j {
            buf[n - j] = v.conj();
        }
    }
    FftPlanner::new().plan_fft_inverse(n).process(&mut buf);
    Ok(buf.iter().map(|z| z.re).collect())
}
