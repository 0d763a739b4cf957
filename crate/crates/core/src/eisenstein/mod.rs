//! The Eisenstein series `E(z, 1/2 + it)` of `SL2(Z)`, its Weyl sums against
//! discrete measures, the closed-form squared Weyl sums of arithmetic
//! measures, and the spectral right-hand side of the Berry–Esseen bound.

mod bound;

use std::collections::HashMap;
use std::f64::consts::PI;

use num_complex::Complex64;

pub use bound::{berry_esseen_from_profiles, berry_esseen_rhs, BerryEsseenRhs, MaassData, WeylProfile};

use crate::arithmetic::{discriminant_measure, DiscreteMeasure};
use crate::hypgeo::{reduce, Point};
use crate::specfun::{bessel_k_imag, completed_zeta, dirichlet_l, h_minus, h_plus, riemann_zeta, Discriminant};
use crate::{Error, Result};

/// Smallest admissible `|t|`; `phi` and `E` are refused closer to zero.
pub const MIN_T: f64 = 1e-6;
/// Relative size of the first omitted Fourier term that raises the truncation flag.
pub const TRUNCATION_FLAG: f64 = 1e-12;
/// Fourier modes are kept until `2 pi n y - |t|` exceeds this.
const FOURIER_DECAY: f64 = 40.0;

/// Gauss–Legendre panels for the `t`-integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TQuadrature {
    pub panel_width: f64,
    pub nodes_per_panel: usize,
}

impl TQuadrature {
    /// The same panels with twice the nodes.
    pub fn refined(self) -> Self {
        Self {
            nodes_per_panel: 2 * self.nodes_per_panel,
            ..self
        }
    }
}

/// Truncation and quadrature controls.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EisensteinParams {
    /// Fourier modes kept; `None` picks the smallest `n` with `2 pi n y_min > 40 + |t|`,
    /// since `K_{it}(x)` only starts to decay once `x > |t|`.
    pub n_fourier: Option<usize>,
    pub t_quad: TQuadrature,
    /// The `t`-integral runs over `|t| <= t_max`.
    pub t_max: f64,
    /// Samples per unit length on closed geodesics (`D > 0`).
    pub geodesic_rate: usize,
}

impl Default for EisensteinParams {
    fn default() -> Self {
        Self {
            n_fourier: None,
            t_quad: TQuadrature {
                panel_width: 1.0,
                nodes_per_panel: 12,
            },
            t_max: 15.0,
            geodesic_rate: 32,
        }
    }
}

impl EisensteinParams {
    /// Defaults with `t_max = max(3T, 15)`.
    pub fn for_bandwidth(bandwidth: f64) -> Result<Self> {
        if !(bandwidth >= 1.0) || !bandwidth.is_finite() {
            return Err(Error::Parameter(format!("bandwidth T = {bandwidth} must be >= 1")));
        }
        Ok(Self {
            t_max: (3.0 * bandwidth).max(15.0),
            ..Self::default()
        })
    }

    fn validate(&self) -> Result<()> {
        if self.n_fourier == Some(0) {
            return Err(Error::Parameter("n_fourier must be >= 1".into()));
        }
        if !(self.t_quad.panel_width > 0.0) || self.t_quad.nodes_per_panel == 0 {
            return Err(Error::Parameter("t quadrature needs positive panel width and nodes".into()));
        }
        if !(self.t_max > 0.0) || !self.t_max.is_finite() {
            return Err(Error::Parameter(format!("t_max = {} must be positive", self.t_max)));
        }
        if self.geodesic_rate == 0 {
            return Err(Error::Parameter("geodesic sampling rate must be positive".into()));
        }
        Ok(())
    }

    fn modes_for(&self, y_min: f64, t: f64) -> usize {
        self.n_fourier
            .unwrap_or_else(|| ((FOURIER_DECAY + t.abs()) / (2.0 * PI * y_min)).floor() as usize + 1)
    }
}

fn check_t(t: f64) -> Result<()> {
    if !t.is_finite() || t.abs() < MIN_T {
        return Err(Error::Parameter(format!("Eisenstein series needs finite |t| >= {MIN_T}, got {t}")));
    }
    Ok(())
}

/// `phi(1/2 + it) = xi(2it) / xi(1 + 2it) = conj(xi(1 + 2it)) / xi(1 + 2it)`.
pub fn scattering_phi(t: f64) -> Result<Complex64> {
    check_t(t)?;
    let xi = completed_zeta(Complex64::new(1.0, 2.0 * t))?;
    Ok(xi.conj() / xi)
}

/// `E(z, 1/2 + it)` with Fourier diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EisensteinValue {
    pub value: Complex64,
    /// Fourier modes summed.
    pub modes: usize,
    /// The first omitted mode exceeded `1e-12` of the running value.
    pub truncated: bool,
}

/// `sum_{d | n} cos(t ln(n / d^2))`, the real divisor coefficient.
fn divisor_coefficient(n: usize, t: f64) -> f64 {
    let nf = n as f64;
    let mut s = 0.0;
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let df = d as f64;
            s += (t * (nf / (df * df)).ln()).cos();
            let e = n / d;
            if e != d {
                let ef = e as f64;
                s += (t * (nf / (ef * ef)).ln()).cos();
            }
        }
        d += 1;
    }
    s
}

/// Everything in the expansion that depends on `t` alone.
#[derive(Debug, Clone)]
struct Spectral {
    t: f64,
    phi: Complex64,
    /// `4 / xi(1 + 2it)`.
    prefactor: Complex64,
    /// `K_{it}(2 pi n y)` for each `y` seen so far, keyed by bit pattern.
    bessel: HashMap<(u64, usize), f64>,
}

impl Spectral {
    fn new(t: f64) -> Result<Self> {
        check_t(t)?;
        let xi = completed_zeta(Complex64::new(1.0, 2.0 * t))?;
        Ok(Self {
            t,
            phi: xi.conj() / xi,
            prefactor: 4.0 / xi,
            bessel: HashMap::new(),
        })
    }

    fn bessel(&mut self, n: usize, y: f64) -> Result<f64> {
        let key = (y.to_bits(), n);
        if let Some(&k) = self.bessel.get(&key) {
            return Ok(k);
        }
        let k = bessel_k_imag(self.t, 2.0 * PI * n as f64 * y)?.value;
        self.bessel.insert(key, k);
        Ok(k)
    }

    /// `E(z, 1/2 + it)` at a reduced point with `modes` Fourier modes.
    fn eval(&mut self, z: Point, modes: usize) -> Result<EisensteinValue> {
        let (x, y) = (z.x, z.y);
        let ys = Complex64::new(0.0, self.t * y.ln()).exp() * y.sqrt();
        let constant = ys + self.phi * ys.conj();
        let mut fourier = 0.0;
        for n in 1..=modes {
            fourier += divisor_coefficient(n, self.t) * self.bessel(n, y)? * (2.0 * PI * n as f64 * x).cos();
        }
        let scale = self.prefactor * y.sqrt();
        let value = constant + scale * fourier;
        let n = modes + 1;
        let omitted = scale.norm() * (divisor_coefficient(n, self.t) * self.bessel(n, y)?).abs();
        Ok(EisensteinValue {
            value,
            modes,
            truncated: omitted > TRUNCATION_FLAG * value.norm(),
        })
    }
}

/// `E(z, 1/2 + it)` from the Fourier expansion at the reduction of `z`:
/// `y^s + phi(s) y^{1-s} + (4 sqrt y / xi(1+2it)) sum_n tau_t(n) K_{it}(2 pi n y) cos(2 pi n x)`.
pub fn eisenstein_eval(z: Point, t: f64, p: &EisensteinParams) -> Result<EisensteinValue> {
    p.validate()?;
    let zr = reduce(z)?.point;
    Spectral::new(t)?.eval(zr, p.modes_for(zr.y, t))
}

fn weyl_sum_with(m: &DiscreteMeasure, sp: &mut Spectral, p: &EisensteinParams) -> Result<EisensteinValue> {
    let y_min = m.atoms().iter().map(|a| a.point.y()).fold(f64::INFINITY, f64::min);
    let modes = p.modes_for(y_min, sp.t);
    let mut value = Complex64::new(0.0, 0.0);
    let mut truncated = false;
    for a in m.atoms() {
        let e = sp.eval(a.point.point, modes)?;
        value += a.weight * e.value;
        truncated |= e.truncated;
    }
    Ok(EisensteinValue {
        value,
        modes,
        truncated,
    })
}

/// `int E(z, 1/2 + it) dm(z)` as a weighted sum over the atoms.
pub fn weyl_sum_empirical(m: &DiscreteMeasure, t: f64, p: &EisensteinParams) -> Result<EisensteinValue> {
    p.validate()?;
    weyl_sum_with(m, &mut Spectral::new(t)?, p)
}

/// Closed form of `|int E(z, 1/2 + it) dnu_D|^2`:
/// `H_{sgn D}(t) / (4 sqrt|D| L(1, chi_D)^2) |zeta(1/2+it) L(1/2+it, chi_D) / zeta(1+2it)|^2`.
pub fn weyl_sum_exact_sq(d: Discriminant, t: f64) -> Result<f64> {
    check_t(t)?;
    let gamma_factor = if d.is_negative() { h_minus(t) } else { h_plus(t)? };
    let l1 = dirichlet_l(Complex64::new(1.0, 0.0), d)?.re;
    let s = Complex64::new(0.5, t);
    let ratio = riemann_zeta(s)? * dirichlet_l(s, d)? / riemann_zeta(Complex64::new(1.0, 2.0 * t))?;
    let root = (d.value().unsigned_abs() as f64).sqrt();
    Ok(gamma_factor / (4.0 * root * l1 * l1) * ratio.norm_sqr())
}

/// Empirical against closed-form squared Weyl sum of `nu_D`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeylComparison {
    pub discriminant: i64,
    pub t: f64,
    pub empirical_sq: f64,
    pub exact_sq: f64,
    pub ratio: f64,
    pub truncated: bool,
}

pub fn weyl_compare(d: Discriminant, t: f64, p: &EisensteinParams) -> Result<WeylComparison> {
    p.validate()?;
    let m = discriminant_measure(d, p.geodesic_rate)?;
    let w = weyl_sum_empirical(&m, t, p)?;
    let empirical_sq = w.value.norm_sqr();
    let exact_sq = weyl_sum_exact_sq(d, t)?;
    Ok(WeylComparison {
        discriminant: d.value(),
        t,
        empirical_sq,
        exact_sq,
        ratio: empirical_sq / exact_sq,
        truncated: w.truncated,
    })
}
