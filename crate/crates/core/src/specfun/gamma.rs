use num_complex::Complex64;

use super::tables::STIRLING;
use crate::{Error, Result};

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

/// Principal branch of `ln Gamma(s)`: the analytic continuation from the
/// positive reals to `C \ (-inf, 0]`.
///
/// The argument is shifted upward until `Re >= 0` and `|s| >= 15`, then the
/// Stirling series with ten Bernoulli terms is applied.
pub fn log_gamma_complex(s: Complex64) -> Result<Complex64> {
    if !s.re.is_finite() || !s.im.is_finite() {
        return Err(Error::SpecialFunction(format!("log-gamma of non-finite {s}")));
    }
    if s.im == 0.0 && s.re <= 0.0 && s.re == s.re.round() {
        return Err(Error::SpecialFunction(format!("log-gamma pole at {}", s.re)));
    }
    let mut z = s;
    let mut shift = Complex64::new(0.0, 0.0);
    while z.re < 0.0 || z.norm_sqr() < 225.0 {
        shift += z.ln();
        z += 1.0;
    }
    Ok(stirling(z) - shift)
}

fn stirling(z: Complex64) -> Complex64 {
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut p = inv;
    for c in STIRLING {
        series += p * c;
        p *= inv2;
    }
    (z - 0.5) * z.ln() - z + HALF_LN_2PI + series
}

/// `|Gamma(s)|^2`, computed in log space.
pub fn gamma_abs_sq(s: Complex64) -> Result<f64> {
    Ok((2.0 * log_gamma_complex(s)?.re).exp())
}
