use std::io::{BufRead, Write};

use crate::hypgeo::{reduce, Point, SurfacePoint};
use crate::{Error, Result};

/// Tolerance on the total mass of a constructed measure.
pub const MASS_TOL: f64 = 1e-12;
/// Tolerance on the total mass of a measure read from a file.
pub const FILE_MASS_TOL: f64 = 1e-9;

/// A weighted point of the fundamental domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Atom {
    pub point: SurfacePoint,
    pub weight: f64,
}

/// Finitely supported probability measure on the surface.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteMeasure {
    atoms: Vec<Atom>,
    label: String,
    params: Vec<(String, String)>,
}

impl DiscreteMeasure {
    /// Reduces the points and validates positive weights summing to one.
    pub fn from_points(points: &[(Point, f64)], label: impl Into<String>) -> Result<Self> {
        let atoms = points
            .iter()
            .map(|&(p, w)| Ok(Atom { point: reduce(p)?, weight: w }))
            .collect::<Result<Vec<_>>>()?;
        Self::new(atoms, label)
    }

    pub fn new(atoms: Vec<Atom>, label: impl Into<String>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::Measure("no atoms".into()));
        }
        if atoms.iter().any(|a| !(a.weight > 0.0) || !a.weight.is_finite()) {
            return Err(Error::Measure("weights must be positive and finite".into()));
        }
        let total: f64 = atoms.iter().map(|a| a.weight).sum();
        if (total - 1.0).abs() > MASS_TOL {
            return Err(Error::Measure(format!("total mass {total} is not 1")));
        }
        Ok(Self {
            atoms,
            label: label.into(),
            params: Vec::new(),
        })
    }

    /// Unit point mass at the reduction of `z`.
    pub fn dirac(z: Point) -> Result<Self> {
        Self::from_points(&[(z, 1.0)], "dirac")
    }

    pub fn with_param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.push((key.to_string(), value.to_string()));
        self
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn weights(&self) -> Vec<f64> {
        self.atoms.iter().map(|a| a.weight).collect()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn params(&self) -> &[(String, String)] {
        &self.params
    }

    /// `lambda * self + (1 - lambda) * other`.
    pub fn mixture(&self, other: &Self, lambda: f64) -> Result<Self> {
        if !(lambda > 0.0 && lambda < 1.0) {
            return Err(Error::Measure(format!("mixture weight {lambda} outside (0, 1)")));
        }
        let atoms = self
            .atoms
            .iter()
            .map(|a| Atom {
                weight: lambda * a.weight,
                ..*a
            })
            .chain(other.atoms.iter().map(|a| Atom {
                weight: (1.0 - lambda) * a.weight,
                ..*a
            }))
            .collect();
        Self::new(atoms, "mixture")
    }

    /// Writes the plain-text table: one header line, then `x y weight` rows
    /// with 17 significant digits.
    pub fn write_table<W: Write>(&self, mut w: W) -> Result<()> {
        write!(w, "# label={}", self.label)?;
        for (k, v) in &self.params {
            write!(w, " {k}={v}")?;
        }
        writeln!(w)?;
        for a in &self.atoms {
            writeln!(w, "{:.16e} {:.16e} {:.16e}", a.point.x(), a.point.y(), a.weight)?;
        }
        Ok(())
    }

    /// Reads a table written by [`write_table`](Self::write_table). Lines
    /// starting with `#` are comments; the first one may carry `key=value`
    /// pairs. A total mass within `1e-9` of one is renormalized.
    pub fn read_table<R: BufRead>(r: R) -> Result<Self> {
        let mut label = String::from("file");
        let mut params = Vec::new();
        let mut raw = Vec::new();
        let mut header_seen = false;
        for (lineno, line) in r.lines().enumerate() {
            let line = line?;
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('#') {
                if !header_seen {
                    header_seen = true;
                    for tok in rest.split_whitespace() {
                        if let Some((k, v)) = tok.split_once('=') {
                            if k == "label" {
                                label = v.to_string();
                            } else {
                                params.push((k.to_string(), v.to_string()));
                            }
                        }
                    }
                }
                continue;
            }
            let cols: Vec<&str> = line.split_whitespace().collect();
            if cols.len() != 3 {
                return Err(Error::Measure(format!("line {}: expected 3 columns", lineno + 1)));
            }
            let parse = |s: &str| {
                s.parse::<f64>()
                    .map_err(|e| Error::Measure(format!("line {}: {e}", lineno + 1)))
            };
            let p = Point::new(parse(cols[0])?, parse(cols[1])?)?;
            raw.push((p, parse(cols[2])?));
        }
        let total: f64 = raw.iter().map(|&(_, w)| w).sum();
        if (total - 1.0).abs() > FILE_MASS_TOL {
            return Err(Error::Measure(format!("file mass {total} is not 1")));
        }
        let scale = if (total - 1.0).abs() <= MASS_TOL { 1.0 } else { total };
        let atoms = raw
            .iter()
            .map(|&(p, w)| {
                let sp = reduce(p)?;
                let moved = (sp.point.x - p.x).abs() + (sp.point.y - p.y).abs();
                // Keep stored coordinates bit-exact when they are already reduced.
                let point = if moved < 1e-12 {
                    SurfacePoint {
                        point: p,
                        reducing_matrix: sp.reducing_matrix,
                    }
                } else {
                    sp
                };
                Ok(Atom {
                    point,
                    weight: w / scale,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let mut m = Self::new(atoms, label)?;
        m.params = params;
        Ok(m)
    }
}

/// Total weight of atoms with height above `y`.
pub fn cuspidal_mass(m: &DiscreteMeasure, y: f64) -> Result<f64> {
    if !(y >= 1.0) {
        return Err(Error::Parameter(format!("cusp height {y} must be >= 1")));
    }
    Ok(m.atoms().iter().filter(|a| a.point.y() > y).map(|a| a.weight).sum())
}
