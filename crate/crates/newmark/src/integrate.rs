//! Linear and Newton-iterated nonlinear stepping.

use nalgebra::{DMatrix, DVector};
use ssi_model::SystemModel;

use crate::history::{State, TimeHistory};
use crate::{NewmarkError, NewmarkParams};

/// Newton controls for the nonlinear step: relative unbalance-force norm
/// tolerance and iteration cap.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NewtonSettings {
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for NewtonSettings {
    fn default() -> Self {
        Self {
            tol: 1e-8,
            max_iter: 50,
        }
    }
}

/// Integration coefficients shared by every step of one analysis.
struct Coeffs {
    /// 1 / (beta dt^2), multiplies M in the effective stiffness.
    ca: f64,
    /// gamma / (beta dt), multiplies C in the effective stiffness.
    cv: f64,
    /// 1 / (beta dt).
    inv_bdt: f64,
    /// 1 / (2 beta) - 1.
    am: f64,
    /// gamma / beta - 1.
    cm: f64,
    /// dt (gamma / (2 beta) - 1).
    ck: f64,
}

impl Coeffs {
    fn new(p: &NewmarkParams) -> Self {
        let NewmarkParams { gamma, beta, dt } = *p;
        Self {
            ca: 1.0 / (beta * dt * dt),
            cv: gamma / (beta * dt),
            inv_bdt: 1.0 / (beta * dt),
            am: 0.5 / beta - 1.0,
            cm: gamma / beta - 1.0,
            ck: dt * (gamma / (2.0 * beta) - 1.0),
        }
    }

    /// New acceleration from the new displacement and the previous state.
    fn accel(&self, un: &DVector<f64>, prev: &State) -> DVector<f64> {
        self.ca * (un - &prev.u) - self.inv_bdt * &prev.v - self.am * &prev.a
    }

    /// New velocity from the new acceleration and the previous state.
    fn vel(&self, an: &DVector<f64>, prev: &State, p: &NewmarkParams) -> DVector<f64> {
        &prev.v + p.dt * ((1.0 - p.gamma) * &prev.a + p.gamma * an)
    }
}

fn total_load(load_now: &DVector<f64>, extra_force_now: Option<&DVector<f64>>) -> DVector<f64> {
    match extra_force_now {
        Some(f) => load_now + f,
        None => load_now.clone(),
    }
}

/// Solves `M a0 = load0 - C v0 - F(u0)` for the acceleration consistent with
/// the initial conditions and the load at time zero.
pub fn initial_acceleration(
    model: &SystemModel,
    u0: &DVector<f64>,
    v0: &DVector<f64>,
    load0: &DVector<f64>,
) -> Result<DVector<f64>, NewmarkError> {
    let (f_int, _) = model.internal_force_and_tangent(u0);
    let rhs = load0 - &model.damping * v0 - f_int;
    model
        .mass
        .clone()
        .lu()
        .solve(&rhs)
        .ok_or(NewmarkError::SingularMass)
}

/// One linear analysis with the effective stiffness factored once.
pub struct LinearStepper {
    params: NewmarkParams,
    coeffs: Coeffs,
    lu: nalgebra::LU<f64, nalgebra::Dyn, nalgebra::Dyn>,
    mass: DMatrix<f64>,
    damping: DMatrix<f64>,
}

impl LinearStepper {
    /// Factors `K_eff = ca M + cv C + K` using the model's initial stiffness.
    pub fn new(model: &SystemModel, params: &NewmarkParams) -> Result<Self, NewmarkError> {
        let c = Coeffs::new(params);
        let k_eff =
            c.ca * &model.mass + c.cv * &model.damping + model.initial_stiffness();
        let lu = k_eff.lu();
        if lu.determinant() == 0.0 {
            return Err(NewmarkError::SingularEffectiveStiffness);
        }
        Ok(Self {
            params: *params,
            coeffs: c,
            lu,
            mass: model.mass.clone(),
            damping: model.damping.clone(),
        })
    }

    /// Advances one step under the load at the new time.
    pub fn step(
        &self,
        state: &State,
        load_now: &DVector<f64>,
        extra_force_now: Option<&DVector<f64>>,
    ) -> Result<State, NewmarkError> {
        let c = &self.coeffs;
        let p_total = total_load(load_now, extra_force_now);
        let rhs = p_total
            + &self.mass * (c.ca * &state.u + c.inv_bdt * &state.v + c.am * &state.a)
            + &self.damping * (c.cv * &state.u + c.cm * &state.v + c.ck * &state.a);
        let un = self
            .lu
            .solve(&rhs)
            .ok_or(NewmarkError::SingularEffectiveStiffness)?;
        let an = c.accel(&un, state);
        let vn = c.vel(&an, state, &self.params);
        Ok(State::new(un, vn, an))
    }
}

/// Advances one step of a linear system.
///
/// The effective stiffness is assembled and factored on every call; batch
/// analyses should use [`LinearStepper`] or [`integrate_linear`], which factor
/// it once.  `extra_force_now` is an optional additional right-hand-side force
/// at the new time.
pub fn newmark_step_linear(
    model: &SystemModel,
    state: &State,
    load_now: &DVector<f64>,
    extra_force_now: Option<&DVector<f64>>,
    params: &NewmarkParams,
) -> Result<State, NewmarkError> {
    LinearStepper::new(model, params)?.step(state, load_now, extra_force_now)
}

/// Advances one step of a hysteretic system by Newton iteration on the
/// dynamic residual; commits material state on convergence.
///
/// The residual is `R = p - M a(u) - C v(u) - F(u)` with the kinematic
/// relations eliminating velocity and acceleration in favor of the unknown
/// displacement; convergence is `|R| / |R_initial| < tol`.  `step` only labels
/// the error on divergence.
pub fn newmark_step_nonlinear(
    model: &mut SystemModel,
    state: &State,
    load_now: &DVector<f64>,
    extra_force_now: Option<&DVector<f64>>,
    params: &NewmarkParams,
    newton: &NewtonSettings,
    step: usize,
) -> Result<State, NewmarkError> {
    let c = Coeffs::new(params);
    let p_total = total_load(load_now, extra_force_now);

    let mut un = state.u.clone();
    let mut an = c.accel(&un, state);
    let mut vn = c.vel(&an, state, params);
    let (mut f_int, mut kt) = model.internal_force_and_tangent(&un);
    let mut r = &p_total - &model.mass * &an - &model.damping * &vn - &f_int;
    let r0 = r.norm();
    let mut rel = if r0 == 0.0 { 0.0 } else { 1.0 };

    let mut converged = r0 == 0.0;
    let mut iterations = 0usize;
    while !converged && iterations < newton.max_iter {
        let k_eff = c.ca * &model.mass + c.cv * &model.damping + &kt;
        let du = k_eff
            .lu()
            .solve(&r)
            .ok_or(NewmarkError::SingularEffectiveStiffness)?;
        let stalled = du.norm() <= 1e-14 * un.norm().max(1e-30);
        un += &du;
        an = c.accel(&un, state);
        vn = c.vel(&an, state, params);
        let ft = model.internal_force_and_tangent(&un);
        f_int = ft.0;
        kt = ft.1;
        r = &p_total - &model.mass * &an - &model.damping * &vn - &f_int;
        iterations += 1;

        if !r.iter().all(|x| x.is_finite()) {
            return Err(NewmarkError::NewtonDivergence {
                step,
                iterations,
                residual: f64::NAN,
            });
        }
        rel = r.norm() / r0;
        converged = rel < newton.tol || stalled;
    }
    if !converged {
        return Err(NewmarkError::NewtonDivergence {
            step,
            iterations,
            residual: rel,
        });
    }

    model.commit(&un);
    Ok(State::new(un, vn, an))
}

/// Runs a linear analysis over `loads`, one entry per sample including time
/// zero, starting from displacement `u0` and velocity `v0`.
///
/// The initial acceleration is solved from equilibrium at time zero, the
/// effective stiffness is factored once, and the returned history has
/// `loads.len()` steps.  `extra_forces`, when given, must match `loads` in
/// length and is added to the right-hand side sample by sample.
pub fn integrate_linear(
    model: &SystemModel,
    params: &NewmarkParams,
    u0: &DVector<f64>,
    v0: &DVector<f64>,
    loads: &[DVector<f64>],
    extra_forces: Option<&[DVector<f64>]>,
) -> Result<TimeHistory, NewmarkError> {
    check_series(model, loads, extra_forces)?;
    let stepper = LinearStepper::new(model, params)?;
    let mut history = TimeHistory::with_capacity(params.dt, loads.len());
    if loads.is_empty() {
        return Ok(history);
    }
    let total0 = total_load(&loads[0], extra_forces.map(|e| &e[0]));
    let a0 = initial_acceleration(model, u0, v0, &total0)?;
    let mut state = State::new(u0.clone(), v0.clone(), a0);
    history.push(&state);
    for n in 1..loads.len() {
        state = stepper.step(&state, &loads[n], extra_forces.map(|e| &e[n]))?;
        history.push(&state);
    }
    Ok(history)
}

/// Runs a nonlinear analysis over `loads` with Newton iteration per step.
///
/// Same sampling conventions as [`integrate_linear`]; material state is
/// committed after every converged step, so the model carries the final
/// hysteretic state when the call returns.
pub fn integrate_nonlinear(
    model: &mut SystemModel,
    params: &NewmarkParams,
    newton: &NewtonSettings,
    u0: &DVector<f64>,
    v0: &DVector<f64>,
    loads: &[DVector<f64>],
    extra_forces: Option<&[DVector<f64>]>,
) -> Result<TimeHistory, NewmarkError> {
    check_series(model, loads, extra_forces)?;
    let mut history = TimeHistory::with_capacity(params.dt, loads.len());
    if loads.is_empty() {
        return Ok(history);
    }
    let total0 = total_load(&loads[0], extra_forces.map(|e| &e[0]));
    let a0 = initial_acceleration(model, u0, v0, &total0)?;
    let mut state = State::new(u0.clone(), v0.clone(), a0);
    history.push(&state);
    for n in 1..loads.len() {
        state = newmark_step_nonlinear(
            model,
            &state,
            &loads[n],
            extra_forces.map(|e| &e[n]),
            params,
            newton,
            n,
        )?;
        history.push(&state);
    }
    Ok(history)
}

fn check_series(
    model: &SystemModel,
    loads: &[DVector<f64>],
    extra_forces: Option<&[DVector<f64>]>,
) -> Result<(), NewmarkError> {
    let n = model.ndof();
    if let Some(bad) = loads.iter().position(|p| p.len() != n) {
        return Err(NewmarkError::DimensionMismatch(format!(
            "load sample {bad} has {} entries, model has {n} DOFs",
            loads[bad].len()
        )));
    }
    if let Some(extra) = extra_forces {
        if extra.len() != loads.len() {
            return Err(NewmarkError::DimensionMismatch(format!(
                "{} extra-force samples for {} load samples",
                extra.len(),
                loads.len()
            )));
        }
        if let Some(bad) = extra.iter().position(|p| p.len() != n) {
            return Err(NewmarkError::DimensionMismatch(format!(
                "extra-force sample {bad} has {} entries, model has {n} DOFs",
                extra[bad].len()
            )));
        }
    }
    Ok(())
}
