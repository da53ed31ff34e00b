//! Tabulated impedance with cubic-spline interpolation.

use num_complex::Complex64;

use crate::ImpedanceError;

// Natural cubic spline: second derivatives vanish at both ends.
#[derive(Debug, Clone)]
struct CubicSpline {
    x: Vec<f64>,
    y: Vec<f64>,
    // second derivatives at the knots
    m: Vec<f64>,
}

impl CubicSpline {
    // `x` strictly increasing with at least 4 entries, checked by the caller.
    fn new(x: Vec<f64>, y: Vec<f64>) -> Self {
        let n = x.len();
        let mut m = vec![0.0; n];
        // Thomas algorithm on the interior tridiagonal system
        let mut diag = vec![0.0; n];
        let mut rhs = vec![0.0; n];
        for i in 1..n - 1 {
            let h0 = x[i] - x[i - 1];
            let h1 = x[i + 1] - x[i];
            diag[i] = 2.0 * (h0 + h1);
            rhs[i] = 6.0 * ((y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0);
        }
        let mut c_prime = vec![0.0; n];
        for i in 1..n - 1 {
            let h0 = x[i] - x[i - 1];
            let lower = if i == 1 { 0.0 } else { h0 };
            let denom = diag[i] - lower * c_prime[i - 1];
            c_prime[i] = if i + 1 < n - 1 { (x[i + 1] - x[i]) / denom } else { 0.0 };
            rhs[i] = (rhs[i] - lower * rhs[i - 1]) / denom;
        }
        for i in (1..n - 1).rev() {
            m[i] = rhs[i] - c_prime[i] * m[i + 1];
        }
        Self { x, y, m }
    }

    fn eval(&self, xq: f64) -> f64 {
        // binary search for the bracketing interval
        let n = self.x.len();
        let mut lo = 0;
        let mut hi = n - 1;
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if self.x[mid] <= xq {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let h = self.x[hi] - self.x[lo];
        let a = (self.x[hi] - xq) / h;
        let b = (xq - self.x[lo]) / h;
        a * self.y[lo]
            + b * self.y[hi]
            + ((a * a * a - a) * self.m[lo] + (b * b * b - b) * self.m[hi]) * h * h / 6.0
    }
}

/// Impedance sampled on a strictly increasing frequency grid, interpolated
/// by natural cubic splines fitted to the real and imaginary parts
/// separately.
#[derive(Debug, Clone)]
pub struct ImpedanceTable {
    omega: Vec<f64>,
    values: Vec<Complex64>,
    re: CubicSpline,
    im: CubicSpline,
}

impl ImpedanceTable {
    /// Build a table from `(omega, S)` samples.
    pub fn new(samples: &[(f64, Complex64)]) -> Result<Self, ImpedanceError> {
        if samples.len() < 4 {
            return Err(ImpedanceError::TableTooShort(samples.len()));
        }
        for (i, w) in samples.windows(2).enumerate() {
            if !(w[1].0 > w[0].0) {
                return Err(ImpedanceError::NonMonotonicFrequencies(i + 1));
            }
        }
        let omega: Vec<f64> = samples.iter().map(|s| s.0).collect();
        let values: Vec<Complex64> = samples.iter().map(|s| s.1).collect();
        let re = CubicSpline::new(omega.clone(), values.iter().map(|v| v.re).collect());
        let im = CubicSpline::new(omega.clone(), values.iter().map(|v| v.im).collect());
        Ok(Self {
            omega,
            values,
            re,
            im,
        })
    }

    pub fn omega_min(&self) -> f64 {
        self.omega[0]
    }

    pub fn omega_max(&self) -> f64 {
        *self.omega.last().unwrap()
    }

    pub fn len(&self) -> usize {
        self.omega.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Knot frequencies.
    pub fn frequencies(&self) -> &[f64] {
        &self.omega
    }

    /// Spline evaluation; frequencies outside the table range are an error.
    pub fn eval(&self, omega: f64) -> Result<Complex64, ImpedanceError> {
        if omega < self.omega_min() || omega > self.omega_max() {
            return Err(ImpedanceError::OutOfRange {
                omega,
                min: self.omega_min(),
                max: self.omega_max(),
            });
        }
        Ok(Complex64::new(self.re.eval(omega), self.im.eval(omega)))
    }

    /// Nearest-knot lookup: returns the sampled value whose frequency is
    /// closest to `omega`.  Never fails; intended for mapping FFT bins onto
    /// a table that was sampled on (or near) the same grid.
    pub fn eval_nearest(&self, omega: f64) -> Complex64 {
        let idx = match self
            .omega
            .binary_search_by(|w| w.total_cmp(&omega))
        {
            Ok(i) => i,
            Err(i) => {
                if i == 0 {
                    0
                } else if i >= self.omega.len() {
                    self.omega.len() - 1
                } else if omega - self.omega[i - 1] <= self.omega[i] - omega {
                    i - 1
                } else {
                    i
                }
            }
        };
        self.values[idx]
    }
}
