use num_complex::Complex64;

use super::gamma::log_gamma_complex;
use crate::{Error, Result};

/// Spectral parameter `t` of a Laplace eigenvalue `1/4 + t^2`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct SpectralParameter(f64);

impl SpectralParameter {
    pub fn new(t: f64) -> Result<Self> {
        if !t.is_finite() {
            return Err(Error::Parameter(format!("spectral parameter {t} is not finite")));
        }
        Ok(Self(t))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn eigenvalue(self) -> f64 {
        0.25 + self.0 * self.0
    }
}

fn ln_abs_gamma(re: f64, im: f64) -> Result<f64> {
    Ok(log_gamma_complex(Complex64::new(re, im))?.re)
}

/// Gamma factor for negative discriminants, which is the constant `2 pi^2`.
pub fn h_minus(_t: f64) -> f64 {
    2.0 * std::f64::consts::PI * std::f64::consts::PI
}

/// `ln H_+(t) = ln |Gamma(1/4 + it/2)|^4 - ln |Gamma(1/2 + it)|^2`.
pub fn ln_h_plus(t: f64) -> Result<f64> {
    Ok(4.0 * ln_abs_gamma(0.25, 0.5 * t)? - 2.0 * ln_abs_gamma(0.5, t)?)
}

/// Gamma factor `H_+(t)` for positive discriminants.
pub fn h_plus(t: f64) -> Result<f64> {
    Ok(ln_h_plus(t)?.exp())
}

/// `ln H(t, t_g)`.
pub fn ln_h_watson(t: f64, t_g: f64) -> Result<f64> {
    if !(t_g > 0.0) {
        return Err(Error::Parameter(format!("cusp form parameter t_g = {t_g} must be positive")));
    }
    Ok(ln_h_plus(t)?
        + 2.0 * ln_abs_gamma(0.25, 0.5 * (2.0 * t_g + t))?
        + 2.0 * ln_abs_gamma(0.25, 0.5 * (2.0 * t_g - t))?
        - 4.0 * ln_abs_gamma(0.5, t_g)?)
}

/// Triple-product gamma factor
/// `H_+(t) |Gamma(1/4 + i(2t_g + t)/2)|^2 |Gamma(1/4 + i(2t_g - t)/2)|^2 / |Gamma(1/2 + i t_g)|^4`.
pub fn h_watson(t: f64, t_g: f64) -> Result<f64> {
    Ok(ln_h_watson(t, t_g)?.exp())
}
