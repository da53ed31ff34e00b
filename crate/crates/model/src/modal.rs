//! Complex modes of the assembled first-order system and the closed-form
//! period-lengthening estimate for a structure on compliant supports.

use nalgebra::DMatrix;

use crate::system::SystemModel;
use crate::ModelError;

/// One underdamped mode pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mode {
    /// Undamped circular frequency `|lambda|` in rad/s.
    pub omega: f64,
    /// Modal damping ratio `-Re(lambda) / |lambda|`.
    pub damping_ratio: f64,
}

/// Underdamped modes of `M a + C v + K u = 0`, sorted by frequency.
///
/// The eigenvalues come from the companion form `[[0, I], [-M^-1 K, -M^-1 C]]`.
/// Conjugate pairs are reported once; purely real (overdamped or rigid)
/// eigenvalues are dropped.
pub fn complex_modes_matrices(
    m: &DMatrix<f64>,
    c: &DMatrix<f64>,
    k: &DMatrix<f64>,
) -> Result<Vec<Mode>, ModelError> {
    let n = m.nrows();
    assert_eq!(m.ncols(), n);
    assert_eq!((c.nrows(), c.ncols()), (n, n));
    assert_eq!((k.nrows(), k.ncols()), (n, n));

    let m_inv = m.clone().try_inverse().ok_or(ModelError::SingularMass)?;
    let mut a = DMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        a[(i, n + i)] = 1.0;
    }
    let mk = -&m_inv * k;
    let mc = -&m_inv * c;
    a.view_mut((n, 0), (n, n)).copy_from(&mk);
    a.view_mut((n, n), (n, n)).copy_from(&mc);

    let eig = a.complex_eigenvalues();
    let scale = eig.iter().map(|l| l.norm()).fold(0.0_f64, f64::max).max(1.0);
    let mut modes: Vec<Mode> = eig
        .iter()
        .filter(|l| l.im > 1e-9 * scale) // one of each conjugate pair
        .map(|l| Mode {
            omega: l.norm(),
            damping_ratio: -l.re / l.norm(),
        })
        .collect();
    modes.sort_by(|a, b| a.omega.total_cmp(&b.omega));
    Ok(modes)
}

/// Underdamped modes of an assembled model at its initial stiffness.
pub fn complex_modes(model: &SystemModel) -> Result<Vec<Mode>, ModelError> {
    complex_modes_matrices(&model.mass, &model.damping, &model.initial_stiffness())
}

/// Frequency-dependent support compliance seen by a single-mass oscillator.
pub struct SupportCompliance<'a> {
    /// Sway stiffness under the structure, `k_u(omega)`.
    pub sway_stiffness: &'a dyn Fn(f64) -> f64,
    /// Rocking stiffness, `k_theta(omega)`.
    pub rocking_stiffness: &'a dyn Fn(f64) -> f64,
    /// Foundation damping ratio contribution at the shifted frequency.
    pub foundation_damping: &'a dyn Fn(f64) -> f64,
}

/// Result of the period-lengthening fixed point.
#[derive(Debug, Clone, Copy)]
pub struct PeriodShift {
    /// Flexible-base period.
    pub period: f64,
    /// Ratio of flexible-base to fixed-base period, `>= 1`.
    pub ratio: f64,
    /// Flexible-base damping ratio.
    pub damping_ratio: f64,
    pub iterations: usize,
}

/// Period lengthening of a fixed-base oscillator (`k_s`, `t_fixed`,
/// `xi_fixed`, effective height `h_s`) placed on compliant supports.
///
/// Iterates `ratio = sqrt(1 + k_s/k_u + k_s h_s^2 / k_theta)` with the
/// support stiffnesses evaluated at the shifted frequency until the relative
/// change drops below `tol`.  The damping ratio is then updated in a single
/// step: foundation contribution at the shifted frequency plus the fixed-base
/// ratio divided by the cubed period ratio.
pub fn period_lengthening(
    k_s: f64,
    h_s: f64,
    t_fixed: f64,
    xi_fixed: f64,
    support: &SupportCompliance<'_>,
    tol: f64,
    max_iter: usize,
) -> Result<PeriodShift, ModelError> {
    if !(k_s > 0.0) || !(h_s > 0.0) || !(t_fixed > 0.0) {
        return Err(ModelError::InvalidModel(
            "period lengthening needs positive stiffness, height and period".into(),
        ));
    }
    let mut ratio = 1.0_f64;
    for it in 1..=max_iter {
        let omega = 2.0 * std::f64::consts::PI / (t_fixed * ratio);
        let ku = (support.sway_stiffness)(omega);
        let kt = (support.rocking_stiffness)(omega);
        if !(ku > 0.0) || !(kt > 0.0) {
            return Err(ModelError::InvalidModel(format!(
                "support stiffness must stay positive, got k_u={ku}, k_theta={kt}"
            )));
        }
        let next = (1.0 + k_s / ku + k_s * h_s * h_s / kt).sqrt();
        let done = ((next - ratio) / next).abs() < tol;
        ratio = next;
        if done {
            let omega_shifted = 2.0 * std::f64::consts::PI / (t_fixed * ratio);
            let xi0 = (support.foundation_damping)(omega_shifted);
            return Ok(PeriodShift {
                period: t_fixed * ratio,
                ratio,
                damping_ratio: xi0 + xi_fixed / ratio.powi(3),
                iterations: it,
            });
        }
    }
    Err(ModelError::PeriodNonConvergence(max_iter))
}
