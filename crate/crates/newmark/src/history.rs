//! Integration state and recorded response histories.

use nalgebra::DVector;

/// Displacement, velocity and acceleration of every DOF at one instant.
#[derive(Debug, Clone, PartialEq)]
pub struct State {
    pub u: DVector<f64>,
    pub v: DVector<f64>,
    pub a: DVector<f64>,
}

impl State {
    pub fn new(u: DVector<f64>, v: DVector<f64>, a: DVector<f64>) -> Self {
        assert!(
            u.len() == v.len() && v.len() == a.len(),
            "state arrays must share one length"
        );
        Self { u, v, a }
    }

    /// All-zero state for `n` DOFs.
    pub fn rest(n: usize) -> Self {
        Self {
            u: DVector::zeros(n),
            v: DVector::zeros(n),
            a: DVector::zeros(n),
        }
    }

    pub fn ndof(&self) -> usize {
        self.u.len()
    }

    pub fn is_finite(&self) -> bool {
        self.u.iter().all(|x| x.is_finite())
            && self.v.iter().all(|x| x.is_finite())
            && self.a.iter().all(|x| x.is_finite())
    }
}

/// Sampled response of an analysis: one state per step at spacing `dt`.
///
/// Step 0 holds the initial conditions, so an analysis over `n` load samples
/// records `n` states covering times `0..=(n-1)*dt`.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeHistory {
    pub dt: f64,
    pub u: Vec<DVector<f64>>,
    pub v: Vec<DVector<f64>>,
    pub a: Vec<DVector<f64>>,
}

impl TimeHistory {
    pub fn new(dt: f64) -> Self {
        Self {
            dt,
            u: Vec::new(),
            v: Vec::new(),
            a: Vec::new(),
        }
    }

    pub fn with_capacity(dt: f64, steps: usize) -> Self {
        Self {
            dt,
            u: Vec::with_capacity(steps),
            v: Vec::with_capacity(steps),
            a: Vec::with_capacity(steps),
        }
    }

    pub fn push(&mut self, state: &State) {
        self.u.push(state.u.clone());
        self.v.push(state.v.clone());
        self.a.push(state.a.clone());
    }

    /// Number of recorded steps.
    pub fn len(&self) -> usize {
        self.u.len()
    }

    pub fn is_empty(&self) -> bool {
        self.u.is_empty()
    }

    pub fn time(&self, step: usize) -> f64 {
        step as f64 * self.dt
    }

    pub fn state(&self, step: usize) -> State {
        State {
            u: self.u[step].clone(),
            v: self.v[step].clone(),
            a: self.a[step].clone(),
        }
    }

    /// Displacement of one DOF across all steps.
    pub fn dof_displacement(&self, dof: usize) -> Vec<f64> {
        self.u.iter().map(|x| x[dof]).collect()
    }

    /// Velocity of one DOF across all steps.
    pub fn dof_velocity(&self, dof: usize) -> Vec<f64> {
        self.v.iter().map(|x| x[dof]).collect()
    }

    /// Acceleration of one DOF across all steps.
    pub fn dof_acceleration(&self, dof: usize) -> Vec<f64> {
        self.a.iter().map(|x| x[dof]).collect()
    }
}
