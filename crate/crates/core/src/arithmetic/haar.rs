use std::f64::consts::PI;

use super::measure::{Atom, DiscreteMeasure};
use crate::hypgeo::{hyperbolic_distance, reduce, Point};
use crate::{Error, Result};

/// Resolution of [`haar_discretization`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HaarGrid {
    pub n_x: usize,
    pub n_levels: usize,
    pub y_max: f64,
}

impl Default for HaarGrid {
    fn default() -> Self {
        Self {
            n_x: 40,
            n_levels: 40,
            y_max: 20.0,
        }
    }
}

/// Cell-centered discretization of `(3/pi) y^{-2} dx dy` on the fundamental domain.
///
/// In `(x, eta = 1/y)` the region below `y_max` is `1/y_max <= eta <= 1/sqrt(1 - x^2)`.
/// Columns are uniform in `x`; each column is split into `n_levels` cells
/// uniform in the normalized height `s = (eta - 1/y_max) / (eta_top(x) - 1/y_max)`,
/// so every cell of a column has the same exact mass. Each atom sits at the
/// `dmu`-mean height of its cell, `ln(eta_1/eta_0) / (eta_1 - eta_0)`. The cusp
/// region above `y_max`, of mass `3/(pi y_max)`, becomes one atom at `i y_max`.
pub fn haar_discretization(grid: HaarGrid) -> Result<DiscreteMeasure> {
    let HaarGrid { n_x, n_levels, y_max } = grid;
    if n_x == 0 || n_levels == 0 {
        return Err(Error::Parameter("Haar grid needs at least one cell".into()));
    }
    if !(y_max >= 2.0) || !y_max.is_finite() {
        return Err(Error::Parameter(format!("Y_max = {y_max} must be >= 2")));
    }
    let eta0 = 1.0 / y_max;
    let dx = 1.0 / n_x as f64;
    let mut atoms = Vec::with_capacity(n_x * n_levels + 1);
    for i in 0..n_x {
        let (x0, x1) = (-0.5 + i as f64 * dx, -0.5 + (i + 1) as f64 * dx);
        let column = 3.0 / PI * (x1.asin() - x0.asin() - dx * eta0);
        let xm = 0.5 * (x0 + x1);
        let top = 1.0 / (1.0 - xm * xm).sqrt();
        let level = |l: usize| eta0 + (top - eta0) * l as f64 / n_levels as f64;
        for l in 0..n_levels {
            let (e0, e1) = (level(l), level(l + 1));
            atoms.push(Atom {
                point: reduce(Point {
                    x: xm,
                    y: (e1 / e0).ln() / (e1 - e0),
                })?,
                weight: column / n_levels as f64,
            });
        }
    }
    atoms.push(Atom {
        point: reduce(Point { x: 0.0, y: y_max })?,
        weight: 3.0 / (PI * y_max),
    });
    Ok(DiscreteMeasure::new(atoms, "haar")?
        .with_param("n_x", n_x)
        .with_param("n_levels", n_levels)
        .with_param("y_max", y_max))
}

/// Upper bound on `W1(nu, haar_discretization(grid))`.
///
/// Every cell is sent to its own atom, so the cost is at most the sum of
/// `mass * (largest distance from the atom to the cell)`. `u(atom, .)` is
/// convex in each coordinate, so that distance is attained at a corner. Points
/// of the cusp region `y > Y` travel to `iY` at cost below
/// `ln(y/Y) + 1/(2Y)`, which integrates to `(3/pi)(1/Y + 1/(2Y^2))`.
pub fn discretization_bound(grid: HaarGrid) -> Result<f64> {
    let m = haar_discretization(grid)?;
    let HaarGrid { n_x, n_levels, y_max } = grid;
    let eta0 = 1.0 / y_max;
    let dx = 1.0 / n_x as f64;
    let top = |x: f64| 1.0 / (1.0 - x * x).sqrt();
    let mut bound = 0.0;
    for i in 0..n_x {
        let xs = [-0.5 + i as f64 * dx, -0.5 + (i + 1) as f64 * dx];
        for l in 0..n_levels {
            let a = m.atoms()[i * n_levels + l];
            let atom = a.point.point;
            let mut worst = 0.0f64;
            for &x in &xs {
                for k in [l, l + 1] {
                    let eta = eta0 + (top(x) - eta0) * k as f64 / n_levels as f64;
                    worst = worst.max(hyperbolic_distance(atom, Point { x, y: 1.0 / eta }));
                }
            }
            bound += a.weight * worst;
        }
    }
    Ok(bound + 3.0 / PI * (1.0 / y_max + 0.5 / (y_max * y_max)))
}

/// `int Im(z) dm(z)`.
pub fn mean_height(m: &DiscreteMeasure) -> f64 {
    m.atoms().iter().map(|a| a.weight * a.point.y()).sum()
}
