use crate::hypgeo::rho_from_u;
use crate::quad::{integrate, Tolerance};
use crate::{Error, Result};

/// Conical function `P_{-1/2 + it}(1 + 2u)`.
///
/// Mehler's integral `(sqrt 2 / pi) int_0^rho cos(t v) / sqrt(cosh rho - cosh v) dv`
/// with `v = rho - w^2`, which removes the endpoint singularity.
pub fn conical_p(t: f64, u: f64) -> Result<f64> {
    if !(u >= 0.0) || !u.is_finite() || !t.is_finite() {
        return Err(Error::SpecialFunction(format!("conical function needs u >= 0, got {u}")));
    }
    let lambda = 0.25 + t * t;
    if u < 1e-10 {
        return Ok(1.0 - lambda * u);
    }
    let rho = rho_from_u(u);
    let f = |w: f64| {
        let w2 = w * w;
        if w2 == 0.0 {
            return 2.0 / rho.sinh().sqrt();
        }
        let den = 2.0 * (rho - 0.5 * w2).sinh() * (0.5 * w2).sinh();
        2.0 * w * (t * (rho - w2)).cos() / den.sqrt()
    };
    let r = integrate(f, 0.0, rho.sqrt(), Tolerance::new(1e-15, 1e-13));
    Ok(std::f64::consts::SQRT_2 / std::f64::consts::PI * r.value)
}
