//! Numerical toolkit for equidistribution on the modular surface `SL2(Z)\H`.
//!
//! The crate covers hyperbolic geometry and fundamental-domain reduction,
//! the special functions needed by the Selberg transform and the Eisenstein
//! series, a Gaussian spectral test function with its point-pair kernel,
//! arithmetic measures (Heegner points, closed geodesics, Haar grids) and
//! exact and entropic optimal transport between discrete measures.

// NaN-rejecting guards are written as `!(x > 0.0)`; reference constants keep all printed digits.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod arithmetic;
pub mod eisenstein;
mod error;
pub mod hypgeo;
pub mod quad;
pub mod specfun;
pub mod transform;
pub mod transport;

pub use error::{Error, Result};
