//! Signal-end conditioning for periodic frequency-domain solves.
//!
//! A record that stops mid-swing wraps around the FFT buffer as a step and
//! pollutes every bin, so the hybrid solvers land signals with a short cubic
//! and pad with enough zeros for the impulse responses to die out.

/// Cubic landing segment matching `(y_end, slope_end)` where the signal ends
/// and reaching `(0, 0)` after `n_decay` samples.  `slope_end` is per sample;
/// the returned samples are the `n_decay` values after the signal end.
///
/// Panics if `n_decay < 2`.
pub fn decay_extension(y_end: f64, slope_end: f64, n_decay: usize) -> Vec<f64> {
    assert!(n_decay >= 2, "decay extension needs at least 2 samples");
    let n = n_decay as f64;
    let a2 = -(3.0 * y_end + 2.0 * slope_end * n) / (n * n);
    let a3 = (2.0 * y_end + slope_end * n) / (n * n * n);
    (1..=n_decay)
        .map(|k| {
            let t = k as f64;
            y_end + slope_end * t + a2 * t * t + a3 * t * t * t
        })
        .collect()
}

/// Zero-pad length after which the impulse response of a mode `(omega1, xi1)`
/// has decayed below 1% of its initial value, `ceil(ln 100 / (dt xi1 omega1))`
/// samples.
///
/// Panics unless `dt`, `omega1` and `xi1` are all positive.
pub fn pad_length_hint(dt: f64, omega1: f64, xi1: f64) -> usize {
    assert!(
        dt > 0.0 && omega1 > 0.0 && xi1 > 0.0,
        "pad length hint needs positive dt, omega1 and xi1"
    );
    (100.0f64.ln() / (dt * xi1 * omega1)).ceil() as usize
}

/// Taper length in samples for a body of `len` samples: 5%, at least 16.
fn taper_len(len: usize) -> usize {
    16.max(len / 20)
}

/// Append a cubic taper landing the signal at zero with zero slope, then
/// `n_zeros` zero samples.  The body of `x` is returned unchanged; the taper
/// matches the end value and the last one-sample difference, so value and
/// slope are continuous across the junction.
pub fn taper_and_pad(x: &[f64], n_zeros: usize) -> Vec<f64> {
    if x.is_empty() {
        return vec![0.0; n_zeros];
    }
    let y_end = x[x.len() - 1];
    let slope = if x.len() >= 2 {
        y_end - x[x.len() - 2]
    } else {
        0.0
    };
    let mut out = Vec::with_capacity(x.len() + taper_len(x.len()) + n_zeros);
    out.extend_from_slice(x);
    out.extend(decay_extension(y_end, slope, taper_len(x.len())));
    out.extend(std::iter::repeat(0.0).take(n_zeros));
    out
}
