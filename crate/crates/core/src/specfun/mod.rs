//! Special functions: complex log-gamma, Hurwitz and Riemann zeta,
//! Dirichlet L-functions of quadratic characters, `K_{i tau}`, conical
//! Legendre functions and the spectral gamma factors.

mod bessel;
pub(crate) mod character;
mod gamma;
mod gamma_factors;
mod legendre;
mod tables;
mod zeta;

pub use bessel::{bessel_k_imag, BesselK};
pub use character::{kronecker, kronecker_symbol, Discriminant};
pub use gamma::{gamma_abs_sq, log_gamma_complex};
pub use gamma_factors::{h_minus, h_plus, h_watson, ln_h_plus, ln_h_watson, SpectralParameter};
pub use legendre::conical_p;
pub use zeta::{
    completed_zeta, dirichlet_l, hurwitz_zeta, hurwitz_zeta_regular, hurwitz_zeta_with, riemann_zeta,
    EulerMaclaurin,
};

