//! Cross-checks between direct stepping, the amplification operators, and
//! independently assembled Newton iterations.

use approx::assert_relative_eq;
use nalgebra::{DMatrix, DVector, Vector3};
use ssi_model::fixtures::sdof_case;
use ssi_model::{DampingSpec, FoundationModel, FoundationProps, Story, SystemModel};
use ssi_newmark::{
    amplification_matrix, integrate_linear, integrate_nonlinear, newmark_block_operator,
    newmark_step_nonlinear, NewmarkParams, NewtonSettings, State, TimeHistory,
};

fn sdof_fixed(k: f64, c: f64, m: f64, yield_disp: Option<f64>) -> SystemModel {
    let stories = vec![Story {
        mass: m,
        height: 1.0,
        stiffness: k,
        rotary_inertia: 0.0,
        yield_disp,
        hardening: 0.0,
    }];
    ssi_model::build_soil_structure_model(
        &stories,
        &FoundationProps {
            mass: 0.0,
            rotary_inertia: 0.0,
            eccentricity: 0.0,
        },
        &FoundationModel::Fixed,
        &DampingSpec::PerStory(vec![c]),
    )
    .unwrap()
}

#[test]
fn linear_stepping_equals_operator_propagation() {
    for &(wn, xi, dt) in &[
        (15.707963267948966, 0.02, 0.01),
        (3.1, 0.0, 0.05),
        (40.0, 0.25, 0.002),
        (8.5, 0.1, 0.2),
    ] {
        let params = NewmarkParams::average_acceleration(dt).unwrap();
        let model = sdof_fixed(wn * wn, 2.0 * xi * wn, 1.0, None);
        let a_op = amplification_matrix(&params, wn, xi);

        let u0 = DVector::from_element(1, 0.7);
        let v0 = DVector::from_element(1, -1.3);
        let steps = 200;
        let loads = vec![DVector::zeros(1); steps];
        let h = integrate_linear(&model, &params, &u0, &v0, &loads, None).unwrap();

        let mut x = Vector3::new(0.7, -1.3, h.a[0][0]);
        for n in 1..steps {
            x = a_op * x;
            let scale = x.amax().max(1e-30);
            assert!(
                (h.u[n][0] - x[0]).abs() <= 1e-12 * scale,
                "u mismatch at step {n}: {} vs {}",
                h.u[n][0],
                x[0]
            );
            assert!((h.v[n][0] - x[1]).abs() <= 1e-12 * scale);
            // Acceleration roundoff carries the 1/(beta dt) cancellation factor.
            let a_tol = (1e-12 * scale).max(1e-14 * scale / (0.25 * dt));
            assert!((h.a[n][0] - x[2]).abs() <= a_tol);
        }
    }
}

#[test]
fn four_dof_stepping_equals_block_operator_propagation() {
    let case = sdof_case();
    let model = case.physical_model();
    let params = NewmarkParams::average_acceleration(0.01).unwrap();
    let a_op = newmark_block_operator(
        &model.mass,
        &model.damping,
        &model.initial_stiffness(),
        &params,
    )
    .unwrap();

    let n = model.ndof();
    let u0 = DVector::from_vec(vec![0.01, -0.002, 0.0005, 0.0001]);
    let v0 = DVector::zeros(n);
    let steps = 400;
    let loads = vec![DVector::zeros(n); steps];
    let h = integrate_linear(&model, &params, &u0, &v0, &loads, None).unwrap();

    let mut x = DVector::zeros(3 * n);
    x.rows_mut(0, n).copy_from(&u0);
    x.rows_mut(2 * n, n).copy_from(&h.a[0]);
    for step in 1..steps {
        x = &a_op * x;
        let scale = x.amax().max(1e-30);
        for i in 0..n {
            assert!(
                (h.u[step][i] - x[i]).abs() <= 1e-10 * scale,
                "dof {i} step {step}"
            );
            // Acceleration roundoff is amplified by 1/(beta dt^2) against the
            // displacement scale; compare with matching slack.
            assert!((h.a[step][i] - x[2 * n + i]).abs() <= 1e-8 * scale);
        }
    }
}

#[test]
fn undamped_amplitude_does_not_grow_over_ten_thousand_steps() {
    let wn = 7.3;
    let model = sdof_fixed(wn * wn, 0.0, 1.0, None);
    // Deliberately coarse step, about a fifth of the period.
    let params = NewmarkParams::average_acceleration(0.17).unwrap();
    let steps = 10_000;
    let loads = vec![DVector::zeros(1); steps];
    let u0 = DVector::from_element(1, 1.0);
    let h = integrate_linear(&model, &params, &u0, &DVector::zeros(1), &loads, None).unwrap();
    let u = h.dof_displacement(0);
    let early = u[..200].iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let late = u[steps - 200..].iter().fold(0.0f64, |m, x| m.max(x.abs()));
    assert!(
        late <= early * (1.0 + 1e-9),
        "amplitude grew: early {early} late {late}"
    );
}

#[test]
fn finite_difference_tangent_newton_reaches_the_same_state() {
    let k = 180.0;
    let uy = 0.015;
    let params = NewmarkParams::average_acceleration(0.01).unwrap();
    let newton = NewtonSettings::default();
    let mut model = sdof_fixed(k, 1.2, 1.0, Some(uy));
    let mut fd_model = model.clone();

    // March both solvers through a loading that yields and partially unloads.
    let loads: Vec<DVector<f64>> = (0..120)
        .map(|n| DVector::from_element(1, 4.5 * (0.12 * n as f64).sin()))
        .collect();
    let mut state = initial_state(&model, &loads[0]);
    let mut fd_state = state.clone();
    for (n, load) in loads.iter().enumerate().skip(1) {
        state =
            newmark_step_nonlinear(&mut model, &state, load, None, &params, &newton, n).unwrap();
        fd_state = fd_newton_step(&mut fd_model, &fd_state, load, &params, &newton);
        let scale = state.u.amax().max(1e-12);
        assert!(
            (state.u[0] - fd_state.u[0]).abs() <= 10.0 * newton.tol * scale,
            "step {n}: {} vs {}",
            state.u[0],
            fd_state.u[0]
        );
    }
    assert!(state.u.amax() > uy, "loading never yielded");
}

fn initial_state(model: &SystemModel, load0: &DVector<f64>) -> State {
    let z = DVector::zeros(model.ndof());
    let a0 = ssi_newmark::initial_acceleration(model, &z, &z, load0).unwrap();
    State::new(z.clone(), z, a0)
}

/// Newton iteration identical to the solver's step equations but with the
/// Jacobian built by central differences on the full residual.
fn fd_newton_step(
    model: &mut SystemModel,
    prev: &State,
    load: &DVector<f64>,
    params: &NewmarkParams,
    newton: &NewtonSettings,
) -> State {
    let NewmarkParams { gamma, beta, dt } = *params;
    let n = prev.u.len();
    let ca = 1.0 / (beta * dt * dt);
    let residual = |model: &SystemModel, un: &DVector<f64>| -> DVector<f64> {
        let an = ca * (un - &prev.u) - &prev.v / (beta * dt) - (0.5 / beta - 1.0) * &prev.a;
        let vn = &prev.v + dt * ((1.0 - gamma) * &prev.a + gamma * &an);
        let (f_int, _) = model.internal_force_and_tangent(un);
        load - &model.mass * an - &model.damping * vn - f_int
    };

    let mut un = prev.u.clone();
    let mut r = residual(model, &un);
    let r0 = r.norm().max(1e-300);
    for _ in 0..newton.max_iter {
        if r.norm() / r0 < newton.tol {
            break;
        }
        let mut jac = DMatrix::zeros(n, n);
        for j in 0..n {
            let h = 1e-7 * un[j].abs().max(1.0);
            let mut up = un.clone();
            let mut dn = un.clone();
            up[j] += h;
            dn[j] -= h;
            let rp = residual(model, &up);
            let rn = residual(model, &dn);
            for i in 0..n {
                // Residual decreases along the solution direction, so the
                // Newton matrix is minus the residual derivative.
                jac[(i, j)] = -(rp[i] - rn[i]) / (2.0 * h);
            }
        }
        let du = jac.lu().solve(&r).expect("finite-difference Jacobian solve");
        un += &du;
        r = residual(model, &un);
    }
    let an = ca * (&un - &prev.u) - &prev.v / (beta * dt) - (0.5 / beta - 1.0) * &prev.a;
    let vn = &prev.v + dt * ((1.0 - gamma) * &prev.a + gamma * &an);
    model.commit(&un);
    State::new(un, vn, an)
}

#[test]
fn pulse_past_yield_leaves_permanent_displacement() {
    let k = 246.74011002723395;
    let uy = 0.012;
    let mut model = sdof_fixed(k, 0.9, 1.0, Some(uy));
    let params = NewmarkParams::average_acceleration(0.005).unwrap();
    // Strong half-sine pulse, then free vibration long enough to damp out.
    let steps = 4000;
    let loads: Vec<DVector<f64>> = (0..steps)
        .map(|n| {
            let t = n as f64 * params.dt;
            let p = if t < 0.5 {
                12.0 * (std::f64::consts::PI * t / 0.5).sin()
            } else {
                0.0
            };
            DVector::from_element(1, p)
        })
        .collect();
    let h = integrate_nonlinear(
        &mut model,
        &params,
        &NewtonSettings::default(),
        &DVector::zeros(1),
        &DVector::zeros(1),
        &loads,
        None,
    )
    .unwrap();
    let u_end = h.u[steps - 1][0];
    let v_end = h.v[steps - 1][0];
    assert!(v_end.abs() < 1e-3, "motion not settled: v {v_end}");
    assert!(u_end.abs() > 0.2 * uy, "no permanent drift: u {u_end}");
}

#[test]
fn history_layout_matches_load_series() {
    let model = sdof_fixed(50.0, 0.4, 1.0, None);
    let params = NewmarkParams::average_acceleration(0.02).unwrap();
    let loads = vec![DVector::from_element(1, 1.0); 7];
    let h: TimeHistory = integrate_linear(
        &model,
        &params,
        &DVector::zeros(1),
        &DVector::zeros(1),
        &loads,
        None,
    )
    .unwrap();
    assert_eq!(h.len(), 7);
    assert_eq!(h.dt, 0.02);
    // Constant load from rest: initial acceleration is p/m.
    assert_relative_eq!(h.a[0][0], 1.0, max_relative = 1e-14);
}
