use super::forms::{cycle_automorph, reduced_forms, QuadraticForm};
use super::measure::{Atom, DiscreteMeasure};
use crate::hypgeo::{reduce, Point, UnimodularMatrix};
use crate::specfun::Discriminant;
use crate::{Error, Result};

/// The closed geodesic of an indefinite form: the semicircle joining the
/// roots of `a z^2 + b z + c`, modulo its automorph.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedGeodesic {
    pub form: QuadraticForm,
    /// `((-b - sqrt D)/(2a), (-b + sqrt D)/(2a))`.
    pub endpoints: (f64, f64),
    pub length: f64,
    pub automorph: UnimodularMatrix,
    /// Fundamental solution `(t, u)` of `t^2 - D u^2 = 4`.
    pub pell: (i64, i64),
}

impl ClosedGeodesic {
    pub fn center(&self) -> f64 {
        0.5 * (self.endpoints.0 + self.endpoints.1)
    }

    pub fn radius(&self) -> f64 {
        0.5 * (self.endpoints.1 - self.endpoints.0).abs()
    }

    /// Point at signed arclength `s` from the top of the semicircle.
    pub fn point_at(&self, s: f64) -> Point {
        let r = self.radius();
        Point {
            x: self.center() + r * s.tanh(),
            y: r / s.cosh(),
        }
    }
}

/// One closed geodesic per narrow class of discriminant `D > 0`.
pub fn closed_geodesics(d: Discriminant) -> Result<Vec<ClosedGeodesic>> {
    if d.is_negative() {
        return Err(Error::Parameter(format!("closed geodesics need D > 0, got {d}")));
    }
    let sd = (d.value() as f64).sqrt();
    reduced_forms(d)?
        .into_iter()
        .map(|q| {
            let (t, u, g) = cycle_automorph(q)?;
            let two_a = 2.0 * q.a as f64;
            let r1 = (-(q.b as f64) - sd) / two_a;
            let r2 = (-(q.b as f64) + sd) / two_a;
            Ok(ClosedGeodesic {
                form: q,
                endpoints: (r1.min(r2), r1.max(r2)),
                length: 2.0 * (0.5 * t as f64).acosh(),
                automorph: g,
                pell: (t, u),
            })
        })
        .collect()
}

/// Arclength-uniform samples along every closed geodesic of discriminant `D > 0`.
///
/// Each period is cut into `ceil(length * rate)` equal steps centered on the
/// top of the semicircle; every midpoint is reduced and carries weight
/// `step / total length`.
pub fn geodesic_measure(d: Discriminant, samples_per_unit_length: usize) -> Result<DiscreteMeasure> {
    if samples_per_unit_length == 0 {
        return Err(Error::Parameter("sampling rate must be positive".into()));
    }
    let geos = closed_geodesics(d)?;
    let total: f64 = geos.iter().map(|g| g.length).sum();
    let mut atoms = Vec::new();
    for g in &geos {
        let n = ((g.length * samples_per_unit_length as f64).ceil() as usize).max(1);
        let step = g.length / n as f64;
        for k in 0..n {
            let s = -0.5 * g.length + (k as f64 + 0.5) * step;
            atoms.push(Atom {
                point: reduce(g.point_at(s))?,
                weight: step / total,
            });
        }
    }
    Ok(DiscreteMeasure::new(atoms, "geodesic")?
        .with_param("D", d)
        .with_param("rate", samples_per_unit_length))
}
