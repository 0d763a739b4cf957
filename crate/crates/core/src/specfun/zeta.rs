use num_complex::Complex64;

use super::character::{kronecker_symbol, Discriminant};
use super::gamma::log_gamma_complex;
use super::tables::BERNOULLI_OVER_FACTORIAL;
use crate::{Error, Result};

/// Parameters of the Euler–Maclaurin evaluation: `n` directly summed terms
/// and `m` Bernoulli corrections.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EulerMaclaurin {
    pub n: usize,
    pub m: usize,
}

impl EulerMaclaurin {
    pub const DEFAULT_CORRECTIONS: usize = 24;

    /// Default choice for argument `s`: large enough that every correction
    /// ratio `|s + 2j| / (2 pi N)` stays below one half.
    pub fn for_argument(s: Complex64) -> Self {
        let m = Self::DEFAULT_CORRECTIONS;
        let n = 30 + ((s.norm() + 2.0 * m as f64) / std::f64::consts::PI).ceil() as usize;
        Self { n, m }
    }
}

fn check_parameter(a: f64) -> Result<()> {
    if !(a > 0.0 && a <= 1.0) {
        return Err(Error::SpecialFunction(format!("Hurwitz parameter {a} outside (0, 1]")));
    }
    Ok(())
}

/// `(e^w - 1) / w`, accurate for small `w`.
fn expm1_over(w: Complex64) -> Complex64 {
    if w.norm() < 1e-3 {
        1.0 + w * (0.5 + w * (1.0 / 6.0 + w * (1.0 / 24.0 + w / 120.0)))
    } else {
        (w.exp() - 1.0) / w
    }
}

fn euler_maclaurin(s: Complex64, a: f64, em: EulerMaclaurin, regular: bool) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 0..em.n {
        sum += (-s * (k as f64 + a).ln()).exp();
    }
    let x = em.n as f64 + a;
    let lx = x.ln();
    let x_pow = (-s * lx).exp();
    let w = (1.0 - s) * lx;
    if regular {
        sum += -lx * expm1_over(w);
    } else {
        sum += w.exp() / (s - 1.0);
    }
    sum += 0.5 * x_pow;
    let inv_x2 = 1.0 / (x * x);
    let mut fac = s * x_pow / x;
    for j in 1..=em.m.min(BERNOULLI_OVER_FACTORIAL.len()) {
        sum += BERNOULLI_OVER_FACTORIAL[j - 1] * fac;
        let jf = j as f64;
        fac *= (s + 2.0 * jf - 1.0) * (s + 2.0 * jf) * inv_x2;
    }
    sum
}

/// Hurwitz zeta `zeta(s, a)` for `a` in `(0, 1]` and `s != 1`.
///
/// Accurate to near machine precision for `Re s >= 0`; for `Re s < 0` the
/// direct sum grows like `N^{1 - Re s}` and relative accuracy degrades accordingly.
pub fn hurwitz_zeta(s: Complex64, a: f64) -> Result<Complex64> {
    hurwitz_zeta_with(s, a, EulerMaclaurin::for_argument(s))
}

/// [`hurwitz_zeta`] with explicit Euler–Maclaurin parameters.
pub fn hurwitz_zeta_with(s: Complex64, a: f64, em: EulerMaclaurin) -> Result<Complex64> {
    check_parameter(a)?;
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::SpecialFunction("zeta pole at s = 1".into()));
    }
    Ok(euler_maclaurin(s, a, em, false))
}

/// `zeta(s, a) - 1/(s - 1)`, entire in `s`.
pub fn hurwitz_zeta_regular(s: Complex64, a: f64) -> Result<Complex64> {
    check_parameter(a)?;
    Ok(euler_maclaurin(s, a, EulerMaclaurin::for_argument(s), true))
}

/// Riemann zeta function.
pub fn riemann_zeta(s: Complex64) -> Result<Complex64> {
    hurwitz_zeta(s, 1.0)
}

/// `xi(s) = pi^{-s/2} Gamma(s/2) zeta(s)`.
pub fn completed_zeta(s: Complex64) -> Result<Complex64> {
    let lg = log_gamma_complex(s / 2.0)?;
    let z = riemann_zeta(s)?;
    Ok((lg - s / 2.0 * std::f64::consts::PI.ln()).exp() * z)
}

/// `L(s, chi_D)` for the Kronecker character of a fundamental discriminant.
///
/// Uses `L(s, chi) = q^{-s} sum_a chi(a) zeta(s, a/q)` with the regularised
/// Hurwitz function, so `s = 1` is admissible.
pub fn dirichlet_l(s: Complex64, d: Discriminant) -> Result<Complex64> {
    let q = d.value().unsigned_abs();
    let mut sum = Complex64::new(0.0, 0.0);
    for a in 1..=q {
        let chi = kronecker_symbol(d, a as i64);
        if chi == 0 {
            continue;
        }
        sum += f64::from(chi) * hurwitz_zeta_regular(s, a as f64 / q as f64)?;
    }
    Ok(sum * (-s * (q as f64).ln()).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn even_zeta_values() {
        let z2 = riemann_zeta(c(2.0, 0.0)).unwrap();
        assert!((z2.re - PI * PI / 6.0).abs() < 1e-14);
        let z4 = riemann_zeta(c(4.0, 0.0)).unwrap();
        assert!((z4.re - PI.powi(4) / 90.0).abs() < 1e-14);
    }

    #[test]
    fn negative_integers() {
        // The direct sum grows like N^{1-s}, so cancellation limits accuracy here.
        let z = riemann_zeta(c(-1.0, 0.0)).unwrap();
        assert!((z.re + 1.0 / 12.0).abs() < 1e-10);
        let z = riemann_zeta(c(-2.0, 0.0)).unwrap();
        assert!(z.norm() < 1e-9);
    }

    #[test]
    fn pole_is_error_and_regular_part_is_euler_gamma() {
        assert!(riemann_zeta(c(1.0, 0.0)).is_err());
        let g = hurwitz_zeta_regular(c(1.0, 0.0), 1.0).unwrap();
        assert!((g.re - 0.577_215_664_901_532_9).abs() < 1e-14);
    }

    #[test]
    fn hurwitz_half_relation() {
        // zeta(s, 1/2) = (2^s - 1) zeta(s)
        let s = c(0.5, 7.0);
        let lhs = hurwitz_zeta(s, 0.5).unwrap();
        let rhs = ((s * 2f64.ln()).exp() - 1.0) * riemann_zeta(s).unwrap();
        assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn dirichlet_l_at_one_small_discriminants() {
        // L(1, chi_{-4}) = pi/4, L(1, chi_{-3}) = pi/(3 sqrt 3), L(1, chi_5) = 2 ln(golden)/sqrt 5
        let l4 = dirichlet_l(c(1.0, 0.0), Discriminant::new(-4).unwrap()).unwrap();
        assert!((l4.re - PI / 4.0).abs() < 1e-13);
        let l3 = dirichlet_l(c(1.0, 0.0), Discriminant::new(-3).unwrap()).unwrap();
        assert!((l3.re - PI / (3.0 * 3f64.sqrt())).abs() < 1e-13);
        let l5 = dirichlet_l(c(1.0, 0.0), Discriminant::new(5).unwrap()).unwrap();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((l5.re - 2.0 * phi.ln() / 5f64.sqrt()).abs() < 1e-13);
    }
}
