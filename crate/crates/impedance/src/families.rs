//! Closed-form impedance families.

use num_complex::Complex64;
use ssi_model::ConeFoundationParams;

use crate::table::ImpedanceTable;
use crate::ImpedanceError;

/// Dimensionless dynamic stiffness of a semi-infinite rod whose
/// cross-section grows exponentially, as a function of the dimensionless
/// frequency `a0`.
///
/// Below the cutoff `a0 = 1/2` the rod carries no radiation damping and the
/// stiffness is real; above it the root turns imaginary.
pub fn rod_exponential_area(a0: f64) -> Complex64 {
    debug_assert!(a0 >= 0.0);
    if a0 <= 0.5 {
        Complex64::new(0.5 * (1.0 + (1.0 - 4.0 * a0 * a0).sqrt()), 0.0)
    } else {
        Complex64::new(0.5, (a0 * a0 - 0.25).sqrt())
    }
}

/// Dynamic stiffness of a semi-infinite rod resting on an elastic
/// foundation: `(total, regular)` where the regular part removes the
/// high-frequency radiation dashpot `i a0`.
pub fn rod_elastic_foundation(a0: f64) -> (Complex64, Complex64) {
    debug_assert!(a0 >= 0.0);
    let total = if a0 <= 1.0 {
        Complex64::new((1.0 - a0 * a0).sqrt(), 0.0)
    } else {
        Complex64::new(0.0, (a0 * a0 - 1.0).sqrt())
    };
    (total, total - Complex64::new(0.0, a0))
}

/// Rocking impedance generated by the cone-model internal dashpot cell:
/// spring `k0r`, dashpot `c0r`, and the cell `c1r` in series with the rotary
/// inertia `i1r`.  The foundation-mass term is excluded here because the
/// block inertia is modeled explicitly.
pub fn rocking_if_from_cone(cone: &ConeFoundationParams, omega: f64) -> Complex64 {
    let w2 = omega * omega;
    let den = cone.c1r * cone.c1r + cone.i1r * cone.i1r * w2;
    if den == 0.0 {
        // decoupled internal cell (c1r = 0) at zero frequency
        return Complex64::new(cone.k0r, 0.0);
    }
    let k = cone.k0r - cone.i1r * cone.c1r * cone.c1r * w2 / den;
    let c = cone.c0r + cone.i1r * cone.i1r * cone.c1r * w2 / den;
    Complex64::new(k, omega * c)
}

/// Three-coefficient rocking impedance
/// `S(a0) = K_st [1 - b1 (b2 a0)^2 / (1 + i b2 a0) - b3 a0^2]`
/// with `a0 = omega r / vs`.
#[derive(Debug, Clone, Copy)]
pub struct VeletsosVerbicRocking {
    pub k_st: f64,
    pub b1: f64,
    pub b2: f64,
    pub b3: f64,
    pub r: f64,
    pub vs: f64,
}

impl VeletsosVerbicRocking {
    pub fn new(
        k_st: f64,
        b1: f64,
        b2: f64,
        b3: f64,
        r: f64,
        vs: f64,
    ) -> Result<Self, ImpedanceError> {
        if !(b2 > 0.0) {
            return Err(ImpedanceError::InvalidInput(format!(
                "coefficient b2 must be positive, got {b2}"
            )));
        }
        if !(r > 0.0) || !(vs > 0.0) {
            return Err(ImpedanceError::InvalidInput(
                "radius and shear wave velocity must be positive".into(),
            ));
        }
        Ok(Self {
            k_st,
            b1,
            b2,
            b3,
            r,
            vs,
        })
    }

    pub fn eval(&self, omega: f64) -> Complex64 {
        let a0 = omega * self.r / self.vs;
        let ba = self.b2 * a0;
        let one = Complex64::new(1.0, 0.0);
        let frac = self.b1 * ba * ba / (one + Complex64::new(0.0, ba));
        self.k_st * (one - frac - self.b3 * a0 * a0)
    }
}

/// An impedance function usable wherever the solvers need `S(omega)`.
#[derive(Debug, Clone)]
pub enum ImpedanceFunction {
    /// Constant spring and dashpot, `S = k + i omega c`.
    SpringDashpot { k: f64, c: f64 },
    /// Rocking impedance of the cone foundation cell.
    ConeRocking(ConeFoundationParams),
    /// Rod with exponentially growing area; `a0 = omega * time_scale`,
    /// result scaled by `k_static`.
    RodExponentialArea { k_static: f64, time_scale: f64 },
    /// Rod on an elastic foundation; `regular_only` drops the radiation
    /// dashpot `i a0`.
    RodElasticFoundation {
        k_static: f64,
        time_scale: f64,
        regular_only: bool,
    },
    VeletsosVerbic(VeletsosVerbicRocking),
    Table(ImpedanceTable),
}

impl ImpedanceFunction {
    /// Evaluate at `omega` (rad/s).  Only tabulated impedances can fail.
    pub fn eval(&self, omega: f64) -> Result<Complex64, ImpedanceError> {
        Ok(match self {
            ImpedanceFunction::SpringDashpot { k, c } => Complex64::new(*k, omega * c),
            ImpedanceFunction::ConeRocking(p) => rocking_if_from_cone(p, omega),
            ImpedanceFunction::RodExponentialArea {
                k_static,
                time_scale,
            } => k_static * rod_exponential_area(omega * time_scale),
            ImpedanceFunction::RodElasticFoundation {
                k_static,
                time_scale,
                regular_only,
            } => {
                let (total, regular) = rod_elastic_foundation(omega * time_scale);
                k_static * if *regular_only { regular } else { total }
            }
            ImpedanceFunction::VeletsosVerbic(v) => v.eval(omega),
            ImpedanceFunction::Table(t) => t.eval(omega)?,
        })
    }

    /// Evaluate with out-of-range table frequencies mapped to the nearest
    /// table knot.  Identical to [`eval`](Self::eval) for every other kind.
    pub fn eval_nearest(&self, omega: f64) -> Complex64 {
        match self {
            ImpedanceFunction::Table(t) => t.eval_nearest(omega),
            other => other.eval(omega).expect("analytic families cannot fail"),
        }
    }
}
