//! Frequency-domain solver checked against time stepping and against the
//! condensation of the internal rocking cell.

use nalgebra::DVector;
use ssi_freq::{solve_frequency_domain, FrequencyAttachment, GroundMotion, PadConfig};
use ssi_impedance::{rocking_if_from_cone, ImpedanceFunction};
use ssi_model::complex_modes;
use ssi_model::fixtures::sdof_case;
use ssi_newmark::{integrate_linear, NewmarkParams, TimeHistory};

/// Deterministic broad-band excitation with smooth ramp-in and ramp-out.
fn multitone(n: usize, dt: f64) -> Vec<f64> {
    let dur = n as f64 * dt;
    (0..n)
        .map(|k| {
            let t = k as f64 * dt;
            let env = if t < 3.0 {
                0.5 * (1.0 - (std::f64::consts::PI * t / 3.0).cos())
            } else if t > dur - 3.0 {
                0.5 * (1.0 - (std::f64::consts::PI * (dur - t) / 3.0).cos())
            } else {
                1.0
            };
            let sum: f64 = (0..12)
                .map(|j| {
                    let f = 0.3 + 5.7 * j as f64 / 11.0;
                    (2.0 * std::f64::consts::PI * f * t + 0.9 * j as f64).cos()
                })
                .sum();
            env * sum
        })
        .collect()
}

fn rel_rms(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    let num: f64 = a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum();
    let den: f64 = b.iter().map(|y| y * y).sum();
    (num / den).sqrt()
}

#[test]
fn frequency_solve_matches_substepped_time_integration() {
    let case = sdof_case();
    let model = case.fixed_base_model();
    // the two sides model the excitation differently between samples
    // (band-limited vs piecewise linear), a gap of order (f1 dt)^2, so the
    // 2.5 Hz oscillator needs 5 ms sampling to sit inside the 1e-3 gate
    let (n, dt) = (4000usize, 0.005);
    let ag = multitone(n, dt);
    let gm = GroundMotion::new(dt, ag.clone()).unwrap();

    // padding to two decay hints leaves a wrap-around residual of 0.01%
    let pad = 2 * ssi_freq::pad_length_hint(dt, case.omega_n, case.xi);
    let freq = solve_frequency_domain(&model, &[], &gm, &PadConfig::with_samples(pad)).unwrap();

    // reference: average-acceleration stepping at a tenth of the record
    // spacing with linear load interpolation
    let sub = 10usize;
    let dt_sub = dt / sub as f64;
    let lvec = model.load_coefficients();
    let loads: Vec<DVector<f64>> = (0..(n - 1) * sub + 1)
        .map(|k| {
            let i = (k / sub).min(n - 2);
            let frac = k as f64 / sub as f64 - i as f64;
            &lvec * -(ag[i] + frac * (ag[i + 1] - ag[i]))
        })
        .collect();
    let params = NewmarkParams::average_acceleration(dt_sub).unwrap();
    let zero = DVector::zeros(model.ndof());
    let time = integrate_linear(&model, &params, &zero, &zero, &loads, None).unwrap();

    let u_freq = freq.dof_displacement(0);
    let u_time: Vec<f64> = (0..n).map(|k| time.u[k * sub][0]).collect();
    let err = rel_rms(&u_freq, &u_time);
    assert!(err < 1e-3, "relative RMS vs time stepping {err:.3e}");
}

#[test]
fn physical_and_condensed_rocking_models_coincide() {
    let case = sdof_case();
    let (n, dt) = (1200usize, 0.01);
    let gm = GroundMotion::new(dt, multitone(n, dt)).unwrap();
    let pad = PadConfig::default();

    let physical = solve_frequency_domain(&case.physical_model(), &[], &gm, &pad).unwrap();
    // eliminating the internal rocking cell per bin leaves the base model
    // with the rocking impedance attached at the rocking DOF
    let condensed = solve_frequency_domain(
        &case.base_model(),
        &[FrequencyAttachment::new(
            2,
            ImpedanceFunction::ConeRocking(case.cone),
        )],
        &gm,
        &pad,
    )
    .unwrap();

    for dof in 0..3 {
        let err = rel_rms(
            &condensed.dof_displacement(dof),
            &physical.dof_displacement(dof),
        );
        assert!(err < 1e-8, "DOF {dof} differs by {err:.3e}");
    }
}

#[test]
fn rocking_impedance_frozen_at_the_flexible_base_frequency_stays_close() {
    let case = sdof_case();
    let physical = case.physical_model();
    let w1 = complex_modes(&physical).unwrap()[0].omega;

    let (n, dt) = (2000usize, 0.01);
    // band excitation straddling the flexible-base frequency
    let ag: Vec<f64> = (0..n)
        .map(|k| {
            let t = k as f64 * dt;
            let env = (std::f64::consts::PI * (t / 4.0).min(1.0) / 2.0).sin().powi(2);
            let sum: f64 = (0..16)
                .map(|j| {
                    let f = 0.5 + 1.5 * j as f64 / 15.0;
                    (2.0 * std::f64::consts::PI * f * t + 1.7 * j as f64).cos()
                })
                .sum();
            env * sum
        })
        .collect();
    let gm = GroundMotion::new(dt, ag).unwrap();
    let pad = PadConfig::default();
    let reference = solve_frequency_domain(&physical, &[], &gm, &pad).unwrap();

    let frozen_at = |w: f64| -> TimeHistory {
        let s = rocking_if_from_cone(&case.cone, w);
        let model = case.approximate_model(s.re, s.im / w);
        solve_frequency_domain(&model, &[], &gm, &pad).unwrap()
    };
    let tuned = frozen_at(w1);
    let detuned = frozen_at(2.0 * w1);

    for dof in 0..3 {
        let reference = reference.dof_displacement(dof);
        let near = rel_rms(&tuned.dof_displacement(dof), &reference);
        let far = rel_rms(&detuned.dof_displacement(dof), &reference);
        assert!(near < 0.08, "DOF {dof}: tuned freeze differs by {near:.3e}");
        assert!(
            far > 4.0 * near,
            "DOF {dof}: freezing off resonance should hurt ({far:.3e} vs {near:.3e})"
        );
    }
}
