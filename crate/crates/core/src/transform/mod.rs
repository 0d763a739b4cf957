//! The Gaussian spectral test function `h`, its point-pair kernel `k`, the
//! automorphic kernel and the mollifier used for smoothing Lipschitz
//! functions.

mod kernel;
mod mollifier;

use std::f64::consts::PI;

pub use kernel::{automorphic_kernel, kernel_mass, AutomorphicKernel, KernelMass, KernelSum, KernelTable, MassQuadrature};
pub use mollifier::{mollifier_k_eps, smooth, smooth_gradient_sq, MollifierParams, SmoothingQuadrature};

use crate::hypgeo::{rho_from_u, u_from_rho};
use crate::quad::{integrate, Tolerance};
use crate::specfun::conical_p;
use crate::{Error, Result};

/// Spectral argument of `h`: real `t`, or `t = i sigma` with `|sigma| < 1/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpectralArg {
    Real(f64),
    Imaginary(f64),
}

/// Bandwidth `T` and numerical controls for `h`, `k` and `K`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransformParams {
    bandwidth: f64,
    u_cutoff: f64,
    quad_tol: f64,
}

impl TransformParams {
    /// Relative size of `k(u_cutoff)` against `k(0)`.
    pub const CUTOFF_RATIO: f64 = 1e-14;
    /// Budget for the frontier shell `u in (u_cutoff/2, u_cutoff]` of the group sum.
    pub const FRONTIER_BUDGET: f64 = 1e-13;

    /// Builds parameters for bandwidth `T >= 1` and derives the truncation point.
    pub fn new(bandwidth: f64) -> Result<Self> {
        Self::with_tolerance(bandwidth, 1e-12)
    }

    pub fn with_tolerance(bandwidth: f64, quad_tol: f64) -> Result<Self> {
        if !(bandwidth >= 1.0) || !bandwidth.is_finite() {
            return Err(Error::Parameter(format!("bandwidth T = {bandwidth} must be >= 1")));
        }
        if !(quad_tol > 0.0 && quad_tol < 1e-3) {
            return Err(Error::Parameter(format!("quadrature tolerance {quad_tol} out of range")));
        }
        let mut p = Self {
            bandwidth,
            u_cutoff: f64::INFINITY,
            quad_tol,
        };
        p.u_cutoff = p.derive_cutoff();
        Ok(p)
    }

    pub fn bandwidth(&self) -> f64 {
        self.bandwidth
    }

    pub fn u_cutoff(&self) -> f64 {
        self.u_cutoff
    }

    pub fn rho_cutoff(&self) -> f64 {
        rho_from_u(self.u_cutoff)
    }

    pub fn quad_tol(&self) -> f64 {
        self.quad_tol
    }

    fn tol(&self) -> Tolerance {
        Tolerance {
            abs: 1e-300,
            rel: self.quad_tol,
            max_intervals: 4000,
        }
    }

    /// Analytic majorant of `k` at distance `rho > 0`, from
    /// `sinh(rho + s^2/2) >= sinh rho`, `sinh(s^2/2) >= s^2/2` and
    /// `(rho + s^2)^2 >= rho^2 + 2 rho s^2`.
    pub fn k_tail_bound(&self, rho: f64) -> f64 {
        let t = self.bandwidth;
        let amp = (2.0 * PI).sqrt() * t.powi(3) * (-1.0 / (8.0 * t * t)).exp();
        let bracket = rho.sqrt() / t + 1.0 / (2.0 * t.powi(3) * rho.powf(1.5));
        let s_integral = amp * (-0.5 * t * t * rho * rho).exp() * 0.5 * PI.sqrt() * bracket;
        2.0 * std::f64::consts::SQRT_2 / (4.0 * PI * PI * rho.sinh().sqrt()) * s_integral
    }

    fn derive_cutoff(&self) -> f64 {
        let k0 = k_direct(0.0, self);
        let step = 0.01 / self.bandwidth;
        let mut rho = step;
        loop {
            let u = u_from_rho(rho);
            let rho_half = rho_from_u(0.5 * u);
            if self.k_tail_bound(rho) <= Self::CUTOFF_RATIO * k0
                && 12.0 * u * self.k_tail_bound(rho_half) <= Self::FRONTIER_BUDGET
            {
                return u;
            }
            rho += step;
        }
    }
}

/// `h(t) = exp(-(t^2 + 1/4) / (2 T^2))`.
pub fn h_test(t: SpectralArg, params: &TransformParams) -> Result<f64> {
    let t2 = match t {
        SpectralArg::Real(t) => t * t,
        SpectralArg::Imaginary(s) => {
            if !(s.abs() <= 0.5) {
                return Err(Error::Parameter(format!("h defined for t = i sigma with |sigma| <= 1/2, got {s}")));
            }
            -s * s
        }
    };
    let tt = params.bandwidth;
    Ok((-(t2 + 0.25) / (2.0 * tt * tt)).exp())
}

fn h_real(t: f64, params: &TransformParams) -> f64 {
    let tt = params.bandwidth;
    (-(t * t + 0.25) / (2.0 * tt * tt)).exp()
}

/// Closed form of `int_{-inf}^{inf} h(t) t sin(t v) dt`:
/// `sqrt(2 pi) T^3 e^{-1/(8T^2)} v e^{-T^2 v^2 / 2}`.
pub fn inner_sine_integral(v: f64, params: &TransformParams) -> f64 {
    let t = params.bandwidth;
    (2.0 * PI).sqrt() * t.powi(3) * (-1.0 / (8.0 * t * t)).exp() * v * (-0.5 * t * t * v * v).exp()
}

/// `k` as a function of the distance `rho`, by direct quadrature.
///
/// `k(rho) = (1/4 pi^2) int_0^inf I(rho + s^2) 2s / sqrt(sinh(rho + s^2/2) sinh(s^2/2)) ds`,
/// the Abel-type inversion of the spectral definition. The prefactor is the one
/// for which `4 pi int k du = h(i/2) = 1` and the spectral route agrees.
pub(crate) fn k_direct(rho: f64, params: &TransformParams) -> f64 {
    let t = params.bandwidth;
    let v_end = (rho * rho + 100.0 / (t * t)).sqrt();
    let s_max = (v_end - rho).max(0.0).sqrt();
    let f = |s: f64| {
        let s2 = s * s;
        let den = ((rho + 0.5 * s2).sinh() * (0.5 * s2).sinh()).sqrt();
        if den == 0.0 {
            return 0.0;
        }
        inner_sine_integral(rho + s2, params) * 2.0 * s / den
    };
    let mid = (1.0 / t).min(s_max);
    let tol = params.tol();
    let r = integrate(f, 0.0, mid, tol).value + integrate(f, mid, s_max, tol).value;
    r / (4.0 * PI * PI)
}

/// Point-pair kernel `k(u)` by the closed-form route.
pub fn k_kernel(u: f64, params: &TransformParams) -> Result<f64> {
    if !(u >= 0.0) || !u.is_finite() {
        return Err(Error::Parameter(format!("k(u) needs u >= 0, got {u}")));
    }
    Ok(k_direct(rho_from_u(u), params))
}

/// `k(u)` by the inversion integral `(1/2 pi) int_0^inf h(t) P_{-1/2+it}(1+2u) t tanh(pi t) dt`.
pub fn k_kernel_spectral(u: f64, params: &TransformParams) -> Result<f64> {
    if !(u >= 0.0) || !u.is_finite() {
        return Err(Error::Parameter(format!("k(u) needs u >= 0, got {u}")));
    }
    let t_max = params.bandwidth * 90f64.sqrt();
    let mut err = None;
    let f = |t: f64| match conical_p(t, u) {
        Ok(p) => h_real(t, params) * p * t * (PI * t).tanh(),
        Err(e) => {
            err = Some(e);
            0.0
        }
    };
    let r = integrate(f, 0.0, t_max, Tolerance::new(1e-14, params.quad_tol));
    if let Some(e) = err {
        return Err(e);
    }
    Ok(r.value / (2.0 * PI))
}

/// `4 pi int_0^inf k(u) du`, which should equal `h(i/2) = 1`.
pub fn kernel_radial_mass(params: &TransformParams) -> f64 {
    let f = |rho: f64| k_direct(rho, params) * rho.sinh();
    2.0 * PI * integrate(f, 0.0, params.rho_cutoff(), params.tol()).value
}

/// `4 pi int_0^inf k(u) P_{-1/2+it}(1+2u) du`, which should equal `h(t)`.
pub fn forward_transform(t: f64, params: &TransformParams) -> Result<f64> {
    if !t.is_finite() {
        return Err(Error::Parameter("forward transform needs finite t".into()));
    }
    let mut err = None;
    let f = |rho: f64| match conical_p(t, u_from_rho(rho)) {
        Ok(p) => k_direct(rho, params) * p * rho.sinh(),
        Err(e) => {
            err = Some(e);
            0.0
        }
    };
    let r = integrate(f, 0.0, params.rho_cutoff(), Tolerance::new(1e-14, 1e-10));
    if let Some(e) = err {
        return Err(e);
    }
    Ok(2.0 * PI * r.value)
}

/// `int_0^inf k(u) arsinh(sqrt u) du` and analytic majorants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArsinhMoment {
    pub moment: f64,
    /// `(1/2 pi^{3/2}) e^{-1/(8T^2)} int_0^inf v^2 e^{-v^2} sinh(v/(sqrt 2 T)) dv`.
    pub majorant: f64,
    /// The same inequality chain carried out with the unit-mass normalization
    /// of `k`, which is twice `majorant`.
    pub normalized_majorant: f64,
}

pub fn arsinh_moment(params: &TransformParams) -> ArsinhMoment {
    let f = |rho: f64| k_direct(rho, params) * rho * rho.sinh();
    let moment = 0.25 * integrate(f, 0.0, params.rho_cutoff(), params.tol()).value;
    let t = params.bandwidth;
    let g = |v: f64| v * v * (-v * v).exp() * (v / (std::f64::consts::SQRT_2 * t)).sinh();
    // The integrand is below 1e-300 beyond v = 30 for every T >= 1.
    let inner = integrate(g, 0.0, 30.0, Tolerance::new(1e-16, 1e-13)).value;
    let majorant = (-1.0 / (8.0 * t * t)).exp() * inner / (2.0 * PI.powf(1.5));
    ArsinhMoment {
        moment,
        majorant,
        normalized_majorant: 2.0 * majorant,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn h_special_values() {
        let p = TransformParams::new(2.0).unwrap();
        assert_eq!(h_test(SpectralArg::Imaginary(0.5), &p).unwrap(), 1.0);
        assert!((h_test(SpectralArg::Real(0.0), &p).unwrap() - (-1.0f64 / 32.0).exp()).abs() < 1e-15);
        assert!(h_test(SpectralArg::Imaginary(0.7), &p).is_err());
    }

    #[test]
    fn params_reject_small_bandwidth() {
        assert!(TransformParams::new(0.5).is_err());
        assert!(TransformParams::new(f64::NAN).is_err());
    }

    #[test]
    fn tail_bound_dominates_kernel() {
        let p = TransformParams::new(1.0).unwrap();
        for rho in [0.5, 1.0, 2.0, 4.0, 6.0] {
            assert!(k_direct(rho, &p) <= p.k_tail_bound(rho));
        }
    }
}
