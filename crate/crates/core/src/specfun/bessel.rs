use crate::quad::{integrate, Tolerance};
use crate::{Error, Result};

/// Above this argument `K_{i tau}(x)` underflows for every `tau` used here.
const UNDERFLOW_ARGUMENT: f64 = 700.0;

/// Value of `K_{i tau}(x)` with an underflow flag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselK {
    pub value: f64,
    pub underflow: bool,
}

/// Macdonald function `K_{i tau}(x)` for real `tau` and `x > 0`.
///
/// The integral `int_0^inf e^{-x cosh v} cos(tau v) dv` is shifted to the
/// contour `v + ic`, giving
/// `e^{-tau c} int_0^inf e^{-x cos c cosh v} cos(tau v - x sin c sinh v) dv`,
/// which removes the `e^{tau pi/2}` cancellation for large `tau`.
pub fn bessel_k_imag(tau: f64, x: f64) -> Result<BesselK> {
    if !(x > 0.0) || !x.is_finite() || !tau.is_finite() {
        return Err(Error::SpecialFunction(format!("K_(i{tau})({x}) needs finite tau and x > 0")));
    }
    if x > UNDERFLOW_ARGUMENT {
        return Ok(BesselK {
            value: 0.0,
            underflow: true,
        });
    }
    let tau = tau.abs();
    let c = (tau / x)
        .min(1.0)
        .asin()
        .min(std::f64::consts::FRAC_PI_2 - 1.0 / (1.0 + tau));
    let (sc, cc) = c.sin_cos();
    let xc = x * cc;
    let xs = x * sc;
    let v_max = (1.0 + 42.0 / xc).acosh();
    let envelope = v_max.min((std::f64::consts::PI / (2.0 * xc)).sqrt() + 1.0);
    let f = |v: f64| {
        let damp = (-xc * 2.0 * (0.5 * v).sinh().powi(2)).exp();
        damp * (tau * v - xs * v.sinh()).cos()
    };
    let tol = Tolerance {
        abs: 1e-16 * envelope,
        rel: 1e-13,
        max_intervals: 4000,
    };
    let r = integrate(f, 0.0, v_max, tol);
    let log_scale = -tau * c - xc;
    let value = r.value * log_scale.exp();
    Ok(BesselK {
        value,
        underflow: log_scale < -745.0,
    })
}
