//! Amplification operators and spectral-radius stability scans.

use nalgebra::{DMatrix, Matrix3};
use num_complex::Complex64;

use crate::{NewmarkError, NewmarkParams};

/// Single-mode amplification operator on the state `[u, v, a]`.
///
/// With `b1 = dt^2 omega_n^2` and `b2 = 2 xi dt omega_n`, the operator maps
/// the state of an unforced oscillator one step forward; it is derived by
/// eliminating the new acceleration from the equation of motion at the new
/// time and substituting into the two kinematic update rules.
pub fn amplification_matrix(params: &NewmarkParams, omega_n: f64, xi: f64) -> Matrix3<f64> {
    let NewmarkParams { gamma: g, beta, dt } = *params;
    let b1 = dt * dt * omega_n * omega_n;
    let b2 = 2.0 * xi * dt * omega_n;
    let den = 1.0 + g * b2 + beta * b1;
    Matrix3::new(
        1.0 + g * b2,
        dt * (1.0 + b2 * (g - beta)),
        dt * dt * ((0.5 - beta) + b2 * (0.5 * g - beta)),
        -g * b1 / dt,
        1.0 + b1 * (beta - g),
        dt * ((1.0 - g) + b1 * (beta - 0.5 * g)),
        -b1 / (dt * dt),
        -(b1 + b2) / dt,
        -(b2 * (1.0 - g) + b1 * (0.5 - beta)),
    ) / den
}

/// Nontrivial eigenvalue pair of the gamma = 1/2 amplification operator in
/// closed form; the third operator eigenvalue is identically zero.
///
/// For `b1^2 (beta - 1/4) + b1 - b2^2/4 >= 0` the pair is complex conjugate;
/// otherwise both eigenvalues are real and distinct.
pub fn amplification_eigenvalues(beta: f64, b1: f64, b2: f64) -> [Complex64; 2] {
    let den = 1.0 + 0.5 * b2 + beta * b1;
    let re = 1.0 + b1 * (beta - 0.5);
    let disc = b1 * b1 * (beta - 0.25) + b1 - 0.25 * b2 * b2;
    if disc >= 0.0 {
        let im = disc.sqrt();
        [
            Complex64::new(re / den, im / den),
            Complex64::new(re / den, -im / den),
        ]
    } else {
        let s = (-disc).sqrt();
        [
            Complex64::new((re + s) / den, 0.0),
            Complex64::new((re - s) / den, 0.0),
        ]
    }
}

/// Spectral radius of the gamma = 1/2 single-mode operator.
pub fn spectral_radius(beta: f64, b1: f64, b2: f64) -> f64 {
    let [l1, l2] = amplification_eigenvalues(beta, b1, b2);
    l1.norm().max(l2.norm())
}

/// Spectral radii over a (beta, dt/T) grid at damping ratio `xi`, using the
/// closed-form eigenvalues with gamma = 1/2.
///
/// Row `i` holds `beta_grid[i]`, column `j` holds `dt_over_t_grid[j]`.
pub fn stability_map(beta_grid: &[f64], dt_over_t_grid: &[f64], xi: f64) -> DMatrix<f64> {
    DMatrix::from_fn(beta_grid.len(), dt_over_t_grid.len(), |i, j| {
        let wdt = 2.0 * std::f64::consts::PI * dt_over_t_grid[j];
        spectral_radius(beta_grid[i], wdt * wdt, 2.0 * xi * wdt)
    })
}

/// Block amplification operator of an unforced linear multi-DOF system on the
/// stacked state `[u; v; a]`.
///
/// Exact discrete propagation: stepping the system with zero load equals
/// multiplying by this matrix.  Errors when the effective stiffness is
/// singular.
pub fn newmark_block_operator(
    mass: &DMatrix<f64>,
    damping: &DMatrix<f64>,
    stiffness: &DMatrix<f64>,
    params: &NewmarkParams,
) -> Result<DMatrix<f64>, NewmarkError> {
    let n = mass.nrows();
    if damping.nrows() != n || stiffness.nrows() != n || !mass.is_square() {
        return Err(NewmarkError::DimensionMismatch(
            "operator matrices must be square and equally sized".into(),
        ));
    }
    let NewmarkParams { gamma: g, beta, dt } = *params;
    let ca = 1.0 / (beta * dt * dt);
    let cv = g / (beta * dt);
    let inv_bdt = 1.0 / (beta * dt);
    let am = 0.5 / beta - 1.0;
    let cm = g / beta - 1.0;
    let ck = dt * (g / (2.0 * beta) - 1.0);

    let k_eff = ca * mass + cv * damping + stiffness;
    let lu = k_eff.lu();
    if lu.determinant() == 0.0 {
        return Err(NewmarkError::SingularEffectiveStiffness);
    }
    // Columns of the u-row blocks: solve K_eff X = RHS per previous-state block.
    let rhs_u = ca * mass + cv * damping;
    let rhs_v = inv_bdt * mass + cm * damping;
    let rhs_a = am * mass + ck * damping;
    let xu = lu
        .solve(&rhs_u)
        .ok_or(NewmarkError::SingularEffectiveStiffness)?;
    let xv = lu
        .solve(&rhs_v)
        .ok_or(NewmarkError::SingularEffectiveStiffness)?;
    let xa = lu
        .solve(&rhs_a)
        .ok_or(NewmarkError::SingularEffectiveStiffness)?;

    let eye = DMatrix::<f64>::identity(n, n);
    let mut a_op = DMatrix::<f64>::zeros(3 * n, 3 * n);
    // Acceleration row: a1 = ca (u1 - u) - v/(beta dt) - am a.
    let au = ca * (&xu - &eye);
    let av = ca * &xv - inv_bdt * &eye;
    let aa = ca * &xa - am * &eye;
    // Velocity row: v1 = v + dt ((1-g) a + g a1).
    let vu = dt * g * &au;
    let vv = &eye + dt * g * &av;
    let va = dt * (1.0 - g) * &eye + dt * g * &aa;

    a_op.view_mut((0, 0), (n, n)).copy_from(&xu);
    a_op.view_mut((0, n), (n, n)).copy_from(&xv);
    a_op.view_mut((0, 2 * n), (n, n)).copy_from(&xa);
    a_op.view_mut((n, 0), (n, n)).copy_from(&vu);
    a_op.view_mut((n, n), (n, n)).copy_from(&vv);
    a_op.view_mut((n, 2 * n), (n, n)).copy_from(&va);
    a_op.view_mut((2 * n, 0), (n, n)).copy_from(&au);
    a_op.view_mut((2 * n, n), (n, n)).copy_from(&av);
    a_op.view_mut((2 * n, 2 * n), (n, n)).copy_from(&aa);
    Ok(a_op)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn avg_accel(dt: f64) -> NewmarkParams {
        NewmarkParams::average_acceleration(dt).unwrap()
    }

    #[test]
    fn closed_form_matches_numeric_eigenvalues_on_both_branches() {
        for &(beta, dtt, xi) in &[
            (0.25, 0.1, 0.0),
            (0.25, 2.0, 0.15),
            (1.0 / 6.0, 1.0, 0.0),
            (0.2, 1.0, 0.05),
            (0.45, 3.0, 0.3),
        ] {
            let wn = 2.0 * std::f64::consts::PI;
            let params = NewmarkParams::new(0.5, beta, dtt).unwrap();
            let a = amplification_matrix(&params, wn, xi);
            let eig = DMatrix::from_column_slice(3, 3, a.as_slice()).complex_eigenvalues();
            let rho_num = eig.iter().map(|l| l.norm()).fold(0.0f64, f64::max);
            let wdt = wn * dtt;
            let rho_cf = spectral_radius(beta, wdt * wdt, 2.0 * xi * wdt);
            assert_relative_eq!(rho_num, rho_cf, max_relative = 1e-12);
        }
    }

    #[test]
    fn vanishing_step_gives_neutral_propagation() {
        let rho = spectral_radius(0.25, 1e-16, 0.0);
        assert_relative_eq!(rho, 1.0, max_relative = 1e-9);
        let a = amplification_matrix(&avg_accel(1e-9), 5.0, 0.05);
        assert_relative_eq!(a[(0, 0)], 1.0, max_relative = 1e-8);
        assert_relative_eq!(a[(1, 1)], 1.0, max_relative = 1e-8);
    }

    #[test]
    fn average_acceleration_is_neutrally_stable_at_any_step() {
        for &dtt in &[0.01, 0.1, 0.5, 1.0, 3.0, 10.0, 100.0] {
            let wdt = 2.0 * std::f64::consts::PI * dtt;
            let [l1, l2] = amplification_eigenvalues(0.25, wdt * wdt, 0.0);
            assert!((l1.norm() - 1.0).abs() <= f64::EPSILON, "dtt {dtt}");
            assert!((l2.norm() - 1.0).abs() <= f64::EPSILON, "dtt {dtt}");
        }
    }

    #[test]
    fn linear_acceleration_grows_at_large_steps() {
        let wdt = 2.0 * std::f64::consts::PI;
        assert!(spectral_radius(1.0 / 6.0, wdt * wdt, 0.0) > 1.0);
        let wdt3 = 3.0 * wdt;
        assert!(spectral_radius(1.0 / 6.0, wdt3 * wdt3, 0.0) > 1.0);
        assert!(spectral_radius(0.2, wdt * wdt, 0.0) > 1.0);
    }

    #[test]
    fn damping_contracts_at_small_steps() {
        let wdt = 2.0 * std::f64::consts::PI * 0.02;
        let rho = spectral_radius(0.25, wdt * wdt, 2.0 * 0.1 * wdt);
        assert!(rho < 1.0, "rho {rho}");
    }

    #[test]
    fn map_rows_above_quarter_stay_bounded() {
        let betas: Vec<f64> = (0..12).map(|i| 0.25 + 0.05 * i as f64).collect();
        let dtts: Vec<f64> = (1..40).map(|j| 0.1 * j as f64).collect();
        let map = stability_map(&betas, &dtts, 0.0);
        for i in 0..betas.len() {
            for j in 0..dtts.len() {
                assert!(
                    map[(i, j)] <= 1.0 + 1e-12,
                    "beta {} dtT {} rho {}",
                    betas[i],
                    dtts[j],
                    map[(i, j)]
                );
            }
        }
    }

    #[test]
    fn block_operator_reduces_to_single_mode_matrix() {
        let wn = 11.3;
        let xi = 0.08;
        let params = avg_accel(0.02);
        let m = DMatrix::from_element(1, 1, 1.0);
        let c = DMatrix::from_element(1, 1, 2.0 * xi * wn);
        let k = DMatrix::from_element(1, 1, wn * wn);
        let block = newmark_block_operator(&m, &c, &k, &params).unwrap();
        let single = amplification_matrix(&params, wn, xi);
        for i in 0..3 {
            for j in 0..3 {
                assert_relative_eq!(block[(i, j)], single[(i, j)], max_relative = 1e-13);
            }
        }
    }
}
