//! Impedance extraction from harmonic response histories.

use num_complex::Complex64;

use crate::ImpedanceError;

/// Extract the impedance at drive frequency `omega` from a steady-state
/// force and displacement history sampled at `dt`.
///
/// The leading `settle_fraction` of both series is discarded; the remainder
/// is least-squares fitted on a `sin(omega t)` / `cos(omega t)` basis and
/// the impedance is the complex phasor ratio force over displacement, i.e.
/// `(A/D) e^{-i phi}` for `F = A sin(omega t)` and `u = D sin(omega t + phi)`.
pub fn extract_impedance_harmonic(
    force: &[f64],
    disp: &[f64],
    dt: f64,
    omega: f64,
    settle_fraction: f64,
) -> Result<Complex64, ImpedanceError> {
    if force.len() != disp.len() {
        return Err(ImpedanceError::InvalidInput(format!(
            "series lengths differ: {} vs {}",
            force.len(),
            disp.len()
        )));
    }
    if !(dt > 0.0) || !(omega > 0.0) {
        return Err(ImpedanceError::InvalidInput(
            "time step and frequency must be positive".into(),
        ));
    }
    if !(0.0..1.0).contains(&settle_fraction) {
        return Err(ImpedanceError::InvalidInput(format!(
            "settle fraction must lie in [0, 1), got {settle_fraction}"
        )));
    }
    let n = force.len();
    let start = ((n as f64) * settle_fraction).ceil() as usize;
    let tail = n - start;
    let cycles = (tail as f64 - 1.0) * dt * omega / (2.0 * std::f64::consts::PI);
    if cycles < 3.0 {
        return Err(ImpedanceError::InvalidInput(format!(
            "steady-state tail covers only {cycles:.2} cycles, need at least 3"
        )));
    }

    // 2x2 normal equations of the [sin, cos] basis, shared by both series
    let mut sss = 0.0;
    let mut scc = 0.0;
    let mut ssc = 0.0;
    let mut fs = 0.0;
    let mut fc = 0.0;
    let mut ds = 0.0;
    let mut dc = 0.0;
    for i in start..n {
        let t = i as f64 * dt;
        let (s, c) = (omega * t).sin_cos();
        sss += s * s;
        scc += c * c;
        ssc += s * c;
        fs += force[i] * s;
        fc += force[i] * c;
        ds += disp[i] * s;
        dc += disp[i] * c;
    }
    let det = sss * scc - ssc * ssc;
    if det.abs() <= 1e-12 * (sss * scc).max(1.0) {
        return Err(ImpedanceError::DegenerateFit);
    }
    let solve = |bs: f64, bc: f64| {
        (
            (scc * bs - ssc * bc) / det,
            (sss * bc - ssc * bs) / det,
        )
    };
    let (f_sin, f_cos) = solve(fs, fc);
    let (d_sin, d_cos) = solve(ds, dc);

    // phasor convention x(t) = Im{X e^{i omega t}}, X = x_sin + i x_cos
    let d_phasor = Complex64::new(d_sin, d_cos);
    let rms: f64 =
        (disp[start..].iter().map(|v| v * v).sum::<f64>() / tail as f64).sqrt();
    if rms == 0.0 || d_phasor.norm() < 1e-8 * rms {
        return Err(ImpedanceError::DegenerateFit);
    }
    Ok(Complex64::new(f_sin, f_cos) / d_phasor)
}
