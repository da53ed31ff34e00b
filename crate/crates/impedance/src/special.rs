//! Bessel helper for impulse-response kernels.

/// Bessel function of the first kind, order one.
///
/// Rational fits below `|x| = 8`, amplitude/phase asymptotics above; the
/// absolute error stays under 5e-9 across the arguments that matter here,
/// which is plenty for the percent-level kernel comparisons it serves.
pub fn bessel_j1(x: f64) -> f64 {
    let ax = x.abs();
    if ax < 8.0 {
        let y = x * x;
        let num = x
            * (72362614232.0
                + y * (-7895059235.0
                    + y * (242396853.1
                        + y * (-2972611.439 + y * (15704.48260 + y * (-30.16036606))))));
        let den = 144725228442.0
            + y * (2300535178.0 + y * (18583304.74 + y * (99447.43394 + y * (376.9991397 + y))));
        return num / den;
    }
    let z = 8.0 / ax;
    let y = z * z;
    let xx = ax - 2.356194491;
    let p1 = 1.0
        + y * (0.183105e-2
            + y * (-0.3516396496e-4 + y * (0.2457520174e-5 + y * (-0.240337019e-6))));
    let q1 = 0.04687499995
        + y * (-0.2002690873e-3
            + y * (0.8449199096e-5 + y * (-0.88228987e-6 + y * 0.105787412e-6)));
    let ans = (0.636619772 / ax).sqrt() * (xx.cos() * p1 - z * xx.sin() * q1);
    if x < 0.0 {
        -ans
    } else {
        ans
    }
}

/// Impulse-response kernel of the exponential-area rod in dimensionless
/// time: `J1(t/2) / (2t)`, continuous at zero with value 1/8.
pub fn rod_exponential_irf_kernel(t_hat: f64) -> f64 {
    debug_assert!(t_hat >= 0.0);
    if t_hat == 0.0 {
        0.125
    } else {
        bessel_j1(0.5 * t_hat) / (2.0 * t_hat)
    }
}
