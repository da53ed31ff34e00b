//! Per-bin exact solution of linear frequency-dependent systems.
//!
//! Under base excitation the steady relative response obeys
//! `(-omega^2 M + i omega C + K + S(omega)) u(omega) = -L a_g(omega)` at
//! every frequency, with `L` the mass-weighted influence vector and
//! `S(omega)` the attached foundation impedances.  Solving on the padded FFT
//! grid of the record and transforming back gives the exact linear response.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use ssi_impedance::ImpedanceFunction;
use ssi_model::SystemModel;
use ssi_newmark::{State, TimeHistory};

use crate::spectrum::{forward_half_fft, inverse_half_fft, SpectrumHalf};
use crate::FreqError;

/// Ground acceleration record sampled at fixed spacing `dt`.
#[derive(Debug, Clone)]
pub struct GroundMotion {
    pub dt: f64,
    pub accel: Vec<f64>,
}

impl GroundMotion {
    pub fn new(dt: f64, accel: Vec<f64>) -> Result<Self, FreqError> {
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(FreqError::InvalidInput(format!(
                "ground motion needs a positive sample spacing, got {dt}"
            )));
        }
        if accel.is_empty() {
            return Err(FreqError::InvalidInput("ground motion record is empty".into()));
        }
        if let Some(i) = accel.iter().position(|a| !a.is_finite()) {
            return Err(FreqError::InvalidInput(format!(
                "non-finite ground acceleration at sample {i}"
            )));
        }
        Ok(Self { dt, accel })
    }

    pub fn len(&self) -> usize {
        self.accel.len()
    }

    pub fn is_empty(&self) -> bool {
        self.accel.is_empty()
    }

    pub fn duration(&self) -> f64 {
        self.dt * self.accel.len() as f64
    }
}

/// Frequency-dependent impedance added to one diagonal entry of the dynamic
/// stiffness.
#[derive(Debug, Clone)]
pub struct FrequencyAttachment {
    pub dof: usize,
    pub function: ImpedanceFunction,
    /// Clamp tabulated impedances to their frequency range instead of
    /// failing on out-of-range bins.
    pub nearest_bin: bool,
}

impl FrequencyAttachment {
    pub fn new(dof: usize, function: ImpedanceFunction) -> Self {
        Self {
            dof,
            function,
            nearest_bin: false,
        }
    }

    pub fn clamped(dof: usize, function: ImpedanceFunction) -> Self {
        Self {
            dof,
            function,
            nearest_bin: true,
        }
    }

    fn eval(&self, omega: f64) -> Result<Complex64, FreqError> {
        if self.nearest_bin {
            Ok(self.function.eval_nearest(omega))
        } else {
            Ok(self.function.eval(omega)?)
        }
    }
}

/// Zero padding appended to the excitation before the periodic solve.
#[derive(Debug, Clone, Copy, Default)]
pub struct PadConfig {
    /// Number of appended zero samples; `None` pads by the record length.
    pub n_pad: Option<usize>,
}

impl PadConfig {
    pub fn with_samples(n_pad: usize) -> Self {
        Self { n_pad: Some(n_pad) }
    }

    pub fn samples(&self, record_len: usize) -> usize {
        self.n_pad.unwrap_or(record_len)
    }
}

/// Exact linear response of `model` (plus impedance attachments) to `gm`.
///
/// The record is zero-padded per `pad`, solved bin by bin on the resulting
/// frequency grid and transformed back; the returned history is truncated to
/// the record length.  Velocities and accelerations come from the spectra
/// `i omega u` and `-omega^2 u`.  A singular dynamic stiffness is an error
/// except at the static bin, where free DOFs (an internal rocking cell, a
/// springless reference direction) are legitimate and the minimum-norm
/// solution is taken.
pub fn solve_frequency_domain(
    model: &SystemModel,
    attachments: &[FrequencyAttachment],
    gm: &GroundMotion,
    pad: &PadConfig,
) -> Result<TimeHistory, FreqError> {
    if !model.is_linear() {
        return Err(FreqError::InvalidInput(
            "frequency-domain solve needs an elastic model, but a story spring can yield".into(),
        ));
    }
    let nd = model.ndof();
    for att in attachments {
        if att.dof >= nd {
            return Err(FreqError::InvalidInput(format!(
                "attachment DOF {} out of range for a {nd}-DOF model",
                att.dof
            )));
        }
    }
    let n = gm.accel.len();
    if n == 0 {
        return Err(FreqError::InvalidInput("ground motion record is empty".into()));
    }
    let n_total = n + pad.samples(n);
    let ag = forward_half_fft(&gm.accel, n_total, gm.dt)?;

    let k_init = model.initial_stiffness();
    let load = model.load_coefficients();
    let nh = ag.len();

    let mut u_bins: Vec<DVector<Complex64>> = Vec::with_capacity(nh);
    for j in 0..nh {
        let om = ag.omega(j);
        let mut d = DMatrix::<Complex64>::zeros(nd, nd);
        for r in 0..nd {
            for c in 0..nd {
                d[(r, c)] = Complex64::new(
                    k_init[(r, c)] - om * om * model.mass[(r, c)],
                    om * model.damping[(r, c)],
                );
            }
        }
        for att in attachments {
            d[(att.dof, att.dof)] += att.eval(om)?;
        }
        let amp = -ag.values[j];
        let rhs = DVector::from_fn(nd, |i, _| amp * load[i]);
        u_bins.push(solve_bin(&d, &rhs, j, om)?);
    }

    let half = |values: Vec<Complex64>| SpectrumHalf {
        df: ag.df,
        values,
        n_time: n_total,
    };
    let mut u_t = Vec::with_capacity(nd);
    let mut v_t = Vec::with_capacity(nd);
    let mut a_t = Vec::with_capacity(nd);
    for dof in 0..nd {
        let u: Vec<Complex64> = u_bins.iter().map(|b| b[dof]).collect();
        let v: Vec<Complex64> = u
            .iter()
            .enumerate()
            .map(|(j, z)| Complex64::new(0.0, ag.omega(j)) * z)
            .collect();
        let a: Vec<Complex64> = u
            .iter()
            .enumerate()
            .map(|(j, z)| {
                let om = ag.omega(j);
                z * (-om * om)
            })
            .collect();
        u_t.push(inverse_half_fft(&half(u))?);
        v_t.push(inverse_half_fft(&half(v))?);
        a_t.push(inverse_half_fft(&half(a))?);
    }

    let mut history = TimeHistory::with_capacity(gm.dt, n);
    for k in 0..n {
        history.push(&State::new(
            DVector::from_fn(nd, |d, _| u_t[d][k]),
            DVector::from_fn(nd, |d, _| v_t[d][k]),
            DVector::from_fn(nd, |d, _| a_t[d][k]),
        ));
    }
    Ok(history)
}

fn solve_bin(
    d: &DMatrix<Complex64>,
    rhs: &DVector<Complex64>,
    bin: usize,
    omega: f64,
) -> Result<DVector<Complex64>, FreqError> {
    if let Some(u) = d.clone().lu().solve(rhs) {
        if u.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Ok(u);
        }
    }
    if bin == 0 {
        return min_norm_solve(d, rhs).ok_or(FreqError::SingularBin { bin, omega });
    }
    Err(FreqError::SingularBin { bin, omega })
}

/// Minimum-norm least-squares solve of a complex system through its real
/// 2n x 2n embedding.
fn min_norm_solve(d: &DMatrix<Complex64>, rhs: &DVector<Complex64>) -> Option<DVector<Complex64>> {
    let n = d.nrows();
    let mut a = DMatrix::<f64>::zeros(2 * n, 2 * n);
    let mut b = DVector::<f64>::zeros(2 * n);
    for r in 0..n {
        for c in 0..n {
            let z = d[(r, c)];
            a[(r, c)] = z.re;
            a[(r, c + n)] = -z.im;
            a[(r + n, c)] = z.im;
            a[(r + n, c + n)] = z.re;
        }
        b[r] = rhs[r].re;
        b[r + n] = rhs[r].im;
    }
    let svd = a.svd(true, true);
    let cutoff = 1e-12 * svd.singular_values.max();
    let x = svd.solve(&b, cutoff).ok()?;
    let u = DVector::from_fn(n, |i, _| Complex64::new(x[i], x[i + n]));
    u.iter()
        .all(|z| z.re.is_finite() && z.im.is_finite())
        .then_some(u)
}
