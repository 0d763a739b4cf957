use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::hypgeo::{geodesic_polar, u_from_rho, Point};
use crate::quad::{integrate, GaussLegendre, Tolerance};
use crate::transport::LipschitzFunction;
use crate::{Error, Result};

/// `4 pi int_0^1 exp(1/(s^2 - 1)) ds`.
fn normalizing_constant() -> f64 {
    static C: OnceLock<f64> = OnceLock::new();
    *C.get_or_init(|| {
        let f = |s: f64| {
            let d = s * s - 1.0;
            if d >= 0.0 {
                0.0
            } else {
                (1.0 / d).exp()
            }
        };
        4.0 * PI * integrate(f, 0.0, 1.0, Tolerance::new(1e-17, 1e-15)).value
    })
}

/// Radius `epsilon` and normalizing constant of the mollifier `k_epsilon`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MollifierParams {
    epsilon: f64,
    c: f64,
}

impl MollifierParams {
    pub fn new(epsilon: f64) -> Result<Self> {
        if !(epsilon > 0.0) || !epsilon.is_finite() {
            return Err(Error::Parameter(format!("mollifier radius {epsilon} must be positive")));
        }
        Ok(Self {
            epsilon,
            c: normalizing_constant(),
        })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn normalizing_constant(&self) -> f64 {
        self.c
    }

    /// Support radius in the `u` variable, `sinh^2(epsilon/2)`.
    pub fn support(&self) -> f64 {
        u_from_rho(self.epsilon)
    }
}

/// `k_epsilon(u) = exp(a^2 / (u^2 - a^2)) / (C a)` for `u < a = sinh^2(epsilon/2)`, else 0.
pub fn mollifier_k_eps(u: f64, m: &MollifierParams) -> f64 {
    let a = m.support();
    if !(u >= 0.0) || u >= a {
        return 0.0;
    }
    let s = u / a;
    (1.0 / (s * s - 1.0)).exp() / (m.c * a)
}

/// Geodesic-polar grid for [`smooth`]: Gauss–Legendre in `s = u/a`,
/// trapezoid in the angle.
#[derive(Debug, Clone)]
pub struct SmoothingQuadrature {
    radial: GaussLegendre,
    angles: usize,
}

impl SmoothingQuadrature {
    pub fn new(radial_nodes: usize, angles: usize) -> Self {
        Self {
            radial: GaussLegendre::new(radial_nodes),
            angles,
        }
    }

    /// Default resolution; small radii get more angular nodes because the
    /// test functions vary on the scale of the surface, not of `epsilon`.
    pub fn for_epsilon(epsilon: f64) -> Self {
        if epsilon >= 0.1 {
            Self::new(24, 48)
        } else {
            Self::new(32, 64)
        }
    }
}

/// `F_epsilon(z) = int F(w) k_epsilon(u(z, w)) dmu(w)`.
///
/// The discrete weights are renormalized to sum to one, so constants are
/// reproduced exactly.
pub fn smooth(f: &LipschitzFunction, m: &MollifierParams, z: Point, q: &SmoothingQuadrature) -> f64 {
    let a = m.support();
    let dth = 2.0 * PI / q.angles as f64;
    let mut num = 0.0;
    let mut den = 0.0;
    for (s, ws) in q.radial.mapped(0.0, 1.0) {
        let u = a * s;
        let kw = 2.0 * a * ws * mollifier_k_eps(u, m) * dth;
        if kw == 0.0 {
            continue;
        }
        for j in 0..q.angles {
            let p = geodesic_polar(u, (j as f64 + 0.5) * dth);
            let w = Point {
                x: z.x + z.y * p.x,
                y: z.y * p.y,
            };
            num += kw * f.eval(w);
            den += kw;
        }
    }
    num / den
}

/// `Im(z)^2 |dF_epsilon/dz|^2` by central differences with relative step `h`.
pub fn smooth_gradient_sq(
    f: &LipschitzFunction,
    m: &MollifierParams,
    z: Point,
    q: &SmoothingQuadrature,
    h: f64,
) -> f64 {
    let step = h * z.y;
    let at = |dx: f64, dy: f64| smooth(f, m, Point { x: z.x + dx, y: z.y + dy }, q);
    let fx = (at(step, 0.0) - at(-step, 0.0)) / (2.0 * step);
    let fy = (at(0.0, step) - at(0.0, -step)) / (2.0 * step);
    z.y * z.y * 0.25 * (fx * fx + fy * fy)
}
