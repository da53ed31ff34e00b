//! Split of an impedance into singular (instantaneous) and regular parts.
//!
//! The singular part `-m_inf w^2 + i w c_inf + k_inf` captures the
//! high-frequency behaviour that a time-domain scheme must treat
//! implicitly; what remains is the regular part, whose real-part integral
//! supplies the time-zero value `s0` of the causal force kernel.

use num_complex::Complex64;

use crate::families::ImpedanceFunction;
use crate::ImpedanceError;

/// Instantaneous (singular) impedance coefficients plus the time-zero
/// kernel value of the regular remainder.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingularPart {
    pub m_inf: f64,
    pub c_inf: f64,
    pub k_inf: f64,
    /// `(2/pi) * sum Re{S_regular(w)} dw` over the grid.
    pub s0: f64,
}

impl SingularPart {
    /// Singular impedance value at `omega`.
    pub fn eval(&self, omega: f64) -> Complex64 {
        Complex64::new(
            self.k_inf - self.m_inf * omega * omega,
            omega * self.c_inf,
        )
    }
}

/// Evaluate the high-frequency limits of `s` on a uniform grid whose top
/// frequency plays the role of the working Nyquist frequency.
///
/// `m_inf` comes from the second difference of the real part at the top of
/// the grid, `c_inf` and `k_inf` from the top-point values, and `s0` from
/// the real-part sum of the regular remainder over the whole grid.
pub fn singular_decompose(
    s: &ImpedanceFunction,
    omega_grid: &[f64],
) -> Result<SingularPart, ImpedanceError> {
    let n = omega_grid.len();
    if n < 8 {
        return Err(ImpedanceError::InvalidGrid(format!(
            "need at least 8 grid points, got {n}"
        )));
    }
    let dw = omega_grid[1] - omega_grid[0];
    if !(dw > 0.0) {
        return Err(ImpedanceError::InvalidGrid(
            "grid must increase strictly".into(),
        ));
    }
    for w in omega_grid.windows(2) {
        if ((w[1] - w[0]) - dw).abs() > 1e-9 * dw {
            return Err(ImpedanceError::InvalidGrid(
                "grid spacing must be uniform".into(),
            ));
        }
    }
    let w_top = omega_grid[n - 1];
    if !(w_top > 0.0) {
        return Err(ImpedanceError::InvalidGrid(
            "top frequency must be positive".into(),
        ));
    }

    let values: Vec<Complex64> = omega_grid
        .iter()
        .map(|&w| s.eval(w))
        .collect::<Result<_, _>>()?;
    let re: Vec<f64> = values.iter().map(|v| v.re).collect();

    // second differences at the last five interior nodes
    let scale = re.iter().fold(0.0_f64, |a, &b| a.max(b.abs())).max(1e-300);
    let floor = 1e-10 * scale;
    let mut signs = [0i8; 5];
    for (j, i) in ((n - 6)..=(n - 2)).enumerate() {
        let d2 = re[i + 1] - 2.0 * re[i] + re[i - 1];
        signs[j] = if d2.abs() <= floor {
            0
        } else if d2 > 0.0 {
            1
        } else {
            -1
        };
    }
    let has_pos = signs.contains(&1);
    let has_neg = signs.contains(&-1);
    if has_pos && has_neg {
        return Err(ImpedanceError::GridTooCoarse(
            "second difference of Re S changes sign near the top of the grid".into(),
        ));
    }
    let m_inf = if !has_pos && !has_neg {
        0.0
    } else {
        -0.5 * (re[n - 1] - 2.0 * re[n - 2] + re[n - 3]) / (dw * dw)
    };

    let c_inf = values[n - 1].im / w_top;
    let k_inf = re[n - 1] + m_inf * w_top * w_top;

    let mut s0 = 0.0;
    for (i, &w) in omega_grid.iter().enumerate() {
        s0 += re[i] - (k_inf - m_inf * w * w);
    }
    s0 *= 2.0 / std::f64::consts::PI * dw;

    Ok(SingularPart {
        m_inf,
        c_inf,
        k_inf,
        s0,
    })
}
