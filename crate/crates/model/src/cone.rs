//! Cone-model spring-dashpot constants for an embedded cylindrical
//! foundation.
//!
//! The sway direction is represented by a spring and dashpot; the rocking
//! direction additionally carries an internal dashpot cell (dashpot `c1r` in
//! series with the rotary inertia `i1r`) which makes the rocking impedance
//! frequency dependent.  All constants follow from the foundation geometry
//! and the halfspace properties.

use crate::ModelError;

/// How the embedment trench acts on the rocking direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ConeEmbedmentForm {
    /// Embedded rocking stiffness reduced by the trench correction; the
    /// spring and dashpot height offsets are zero.  Default calibration.
    #[default]
    ReducedRocking,
    /// Plain embedded rocking stiffness with the trench action expressed as
    /// height offsets of the sway spring (`f_k`) and dashpot (`f_c`).
    OffsetSprings,
}

/// Lumped constants of the embedded-foundation cone model.
#[derive(Debug, Clone, Copy)]
pub struct ConeFoundationParams {
    pub radius: f64,
    pub embedment: f64,
    pub shear_modulus: f64,
    pub shear_wave_velocity: f64,
    pub poisson: f64,
    /// Sway spring.
    pub k0h: f64,
    /// Sway dashpot.
    pub c0h: f64,
    /// Rocking spring.
    pub k0r: f64,
    /// Rocking dashpot attached directly to the foundation node.
    pub c0r: f64,
    /// Rocking dashpot of the internal cell.
    pub c1r: f64,
    /// Rotary inertia of the internal cell.
    pub i1r: f64,
    /// Height offset of the sway spring (zero in the default form).
    pub fk: f64,
    /// Height offset of the sway dashpot (zero in the default form).
    pub fc: f64,
}

/// Evaluate the cone-model constants for a cylinder of radius `r` embedded
/// to depth `e` in a halfspace of density `rho`, Poisson ratio `nu` and
/// shear wave velocity `vs`.
pub fn cone_foundation_params(
    r: f64,
    e: f64,
    rho: f64,
    nu: f64,
    vs: f64,
    form: ConeEmbedmentForm,
) -> Result<ConeFoundationParams, ModelError> {
    if !(r > 0.0) {
        return Err(ModelError::InvalidCone(format!(
            "radius must be positive, got {r}"
        )));
    }
    if !(e >= 0.0) {
        return Err(ModelError::InvalidCone(format!(
            "embedment must be non-negative, got {e}"
        )));
    }
    if !(rho > 0.0) || !(vs > 0.0) {
        return Err(ModelError::InvalidCone(format!(
            "density and shear wave velocity must be positive, got rho={rho}, vs={vs}"
        )));
    }
    if !(0.0..0.5).contains(&nu) {
        return Err(ModelError::InvalidCone(format!(
            "Poisson ratio must lie in [0, 0.5), got {nu}"
        )));
    }

    let g = rho * vs * vs;
    let er = e / r;

    let kh_surface = 8.0 * g * r / (2.0 - nu);
    let k0h = kh_surface * (1.0 + er);

    let kr_surface = 8.0 * g * r.powi(3) / (3.0 * (1.0 - nu));
    let kr_embedded = kr_surface * (1.0 + 2.3 * er + 0.58 * er.powi(3));

    let gamma0h = 0.68 + 0.57 * er.sqrt();
    let gamma0r = 0.15631 * er - 0.08906 * er * er - 0.00874 * er.powi(3);
    let gamma1r = 0.4 + 0.03 * er * er;
    let mu1r = 0.33 + 0.1 * er * er;

    let tau = r / vs;
    let c0h = tau * gamma0h * k0h;
    let c0r = tau * gamma0r * kr_embedded;
    let c1r = tau * gamma1r * kr_embedded;
    let i1r = tau * tau * mu1r * kr_embedded;

    let (k0r, fk, fc) = match form {
        ConeEmbedmentForm::ReducedRocking => {
            let correction = g * r.powi(3) / (2.0 * (2.0 - nu)) * (1.0 + er) * er * er;
            (kr_embedded - correction, 0.0, 0.0)
        }
        ConeEmbedmentForm::OffsetSprings => {
            (kr_embedded, 0.25 * e, 0.32 * e + 0.03 * e * er * er)
        }
    };

    Ok(ConeFoundationParams {
        radius: r,
        embedment: e,
        shear_modulus: g,
        shear_wave_velocity: vs,
        poisson: nu,
        k0h,
        c0h,
        k0r,
        c0r,
        c1r,
        i1r,
        fk,
        fc,
    })
}
