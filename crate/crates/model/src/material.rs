//! Hysteretic one-dimensional springs acting on story drifts.

use crate::ModelError;

/// Rate-independent drift spring with an optional yield surface.
///
/// The spring keeps its committed plastic state between time steps.  Trial
/// evaluations through [`force_and_tangent`](Self::force_and_tangent) never
/// touch that state, so equilibrium iterations can probe arbitrary drifts
/// before [`commit`](Self::commit) seals the converged one.
///
/// Three behaviours are covered by one return map:
/// * elastic (no yield surface),
/// * elastic-perfectly-plastic (`hardening == 0`),
/// * linear kinematic hardening with post-yield tangent `hardening * k`.
#[derive(Debug, Clone)]
pub struct NonlinearMaterial {
    k: f64,
    yield_disp: f64,
    hardening: f64,
    plastic_disp: f64,
    back_force: f64,
}

impl NonlinearMaterial {
    /// Linear spring of stiffness `k`.
    pub fn elastic(k: f64) -> Result<Self, ModelError> {
        Self::new(k, f64::INFINITY, 0.0)
    }

    /// Elastic-perfectly-plastic spring yielding at drift `yield_disp`.
    pub fn elastic_perfectly_plastic(k: f64, yield_disp: f64) -> Result<Self, ModelError> {
        Self::new(k, yield_disp, 0.0)
    }

    /// Kinematic-hardening spring; `hardening` is the post-yield tangent as a
    /// fraction of `k` and must lie in `[0, 1)`.
    pub fn kinematic_hardening(
        k: f64,
        yield_disp: f64,
        hardening: f64,
    ) -> Result<Self, ModelError> {
        Self::new(k, yield_disp, hardening)
    }

    fn new(k: f64, yield_disp: f64, hardening: f64) -> Result<Self, ModelError> {
        if !(k > 0.0) || !k.is_finite() {
            return Err(ModelError::InvalidMaterial(format!(
                "elastic stiffness must be positive and finite, got {k}"
            )));
        }
        if !(yield_disp > 0.0) {
            return Err(ModelError::InvalidMaterial(format!(
                "yield displacement must be positive, got {yield_disp}"
            )));
        }
        if !(0.0..1.0).contains(&hardening) {
            return Err(ModelError::InvalidMaterial(format!(
                "hardening ratio must lie in [0, 1), got {hardening}"
            )));
        }
        Ok(Self {
            k,
            yield_disp,
            hardening,
            plastic_disp: 0.0,
            back_force: 0.0,
        })
    }

    pub fn k_elastic(&self) -> f64 {
        self.k
    }

    /// True when the spring carries no yield surface.
    pub fn is_elastic(&self) -> bool {
        self.yield_disp.is_infinite()
    }

    // Return map shared by trial evaluation and commit.  Results are
    // (force, tangent, signed plastic increment).
    fn return_map(&self, u: f64) -> (f64, f64, f64) {
        let f_trial = self.k * (u - self.plastic_disp);
        if self.yield_disp.is_infinite() {
            return (f_trial, self.k, 0.0);
        }
        let f_yield = self.k * self.yield_disp;
        let xi = f_trial - self.back_force;
        if xi.abs() <= f_yield {
            return (f_trial, self.k, 0.0);
        }
        // plastic modulus h reproduces tangent hardening * k after yield
        let h = self.hardening * self.k / (1.0 - self.hardening);
        let dgamma = (xi.abs() - f_yield) / (self.k + h);
        let signed = dgamma * xi.signum();
        let force = f_trial - self.k * signed;
        (force, self.hardening * self.k, signed)
    }

    /// Trial force and consistent tangent at drift `u`, measured from the
    /// committed state.
    pub fn force_and_tangent(&self, u: f64) -> (f64, f64) {
        let (f, kt, _) = self.return_map(u);
        (f, kt)
    }

    /// Commit the converged drift `u`, updating the plastic state.
    pub fn commit(&mut self, u: f64) {
        let (_, _, signed) = self.return_map(u);
        if signed != 0.0 {
            let h = self.hardening * self.k / (1.0 - self.hardening);
            self.plastic_disp += signed;
            self.back_force += h * signed;
        }
    }

    /// Discard all plastic history, returning the spring to its virgin state.
    pub fn reset(&mut self) {
        self.plastic_disp = 0.0;
        self.back_force = 0.0;
    }
}
