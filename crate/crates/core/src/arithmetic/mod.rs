//! Quadratic forms and the arithmetic measures built from them: Heegner
//! points, closed geodesics and a discretization of the Haar probability
//! measure.

mod forms;
mod geodesic;
mod haar;
mod measure;

pub use crate::specfun::Discriminant;
pub use forms::{
    class_number, cycle_automorph, pell_by_search, reduced_forms, reduced_indefinite_all, reduction_cycle,
    QuadraticForm,
};
pub use geodesic::{closed_geodesics, geodesic_measure, ClosedGeodesic};
pub use haar::{discretization_bound, haar_discretization, mean_height, HaarGrid};
pub use measure::{cuspidal_mass, Atom, DiscreteMeasure, FILE_MASS_TOL, MASS_TOL};

pub(crate) use crate::specfun::character::is_fundamental as fundamental;

use crate::hypgeo::{reduce, Point};
use crate::{Error, Result};

/// Whether `d` is a fundamental discriminant other than 1.
pub fn is_fundamental(d: i64) -> bool {
    fundamental(d)
}

/// Heegner point `(-b + i sqrt|D|) / (2a)` of a positive definite form.
pub fn heegner_point(q: &QuadraticForm) -> Point {
    let d = q.discriminant();
    let two_a = 2.0 * q.a as f64;
    Point {
        x: -(q.b as f64) / two_a,
        y: ((-d) as f64).sqrt() / two_a,
    }
}

/// Uniform probability measure on the Heegner points of discriminant `D < 0`.
pub fn heegner_measure(d: Discriminant) -> Result<DiscreteMeasure> {
    if !d.is_negative() {
        return Err(Error::Parameter(format!("Heegner points need D < 0, got {d}")));
    }
    let forms = reduced_forms(d)?;
    let w = 1.0 / forms.len() as f64;
    let atoms = forms
        .iter()
        .map(|q| {
            Ok(Atom {
                point: reduce(heegner_point(q))?,
                weight: w,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DiscreteMeasure::new(atoms, "heegner")?.with_param("D", d))
}

/// `nu_D`: Heegner points for `D < 0`, arclength samples along the closed
/// geodesics at `samples_per_unit_length` for `D > 0`.
pub fn discriminant_measure(d: Discriminant, samples_per_unit_length: usize) -> Result<DiscreteMeasure> {
    if d.is_negative() {
        heegner_measure(d)
    } else {
        geodesic_measure(d, samples_per_unit_length)
    }
}

/// Analytic class number: `w sqrt|D| L(1, chi_D) / (2 pi)` for `D < 0`, and
/// `sqrt D L(1, chi_D) / ln eps` for `D > 0`, where `eps = (t + u sqrt D)/2`
/// is the fundamental totally positive unit.
pub fn class_number_formula(d: Discriminant) -> Result<f64> {
    let l1 = crate::specfun::dirichlet_l(num_complex::Complex64::new(1.0, 0.0), d)?.re;
    let root = (d.value().unsigned_abs() as f64).sqrt();
    if d.is_negative() {
        Ok(f64::from(d.unit_count()) * root * l1 / (2.0 * std::f64::consts::PI))
    } else {
        let geos = closed_geodesics(d)?;
        Ok(root * l1 / (0.5 * geos[0].length))
    }
}
