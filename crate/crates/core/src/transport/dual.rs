use std::fmt;
use std::sync::Arc;

use crate::arithmetic::DiscreteMeasure;
use crate::hypgeo::{reduce, surface_distance_reduced, Point};
use crate::{Error, Result};

type Evaluator = Arc<dyn Fn(Point) -> f64 + Send + Sync>;

/// A function on the surface with a known Lipschitz constant.
#[derive(Clone)]
pub struct LipschitzFunction {
    evaluator: Evaluator,
    lipschitz_constant: f64,
    name: String,
}

impl fmt::Debug for LipschitzFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LipschitzFunction")
            .field("name", &self.name)
            .field("lipschitz_constant", &self.lipschitz_constant)
            .finish()
    }
}

impl LipschitzFunction {
    pub fn new<F>(name: impl Into<String>, lipschitz_constant: f64, f: F) -> Result<Self>
    where
        F: Fn(Point) -> f64 + Send + Sync + 'static,
    {
        if !(lipschitz_constant > 0.0) || !lipschitz_constant.is_finite() {
            return Err(Error::Parameter(format!("Lipschitz constant {lipschitz_constant} must be positive")));
        }
        Ok(Self {
            evaluator: Arc::new(f),
            lipschitz_constant,
            name: name.into(),
        })
    }

    /// The constant function `c`, reported with Lipschitz constant 1.
    pub fn constant(c: f64) -> Self {
        Self {
            evaluator: Arc::new(move |_| c),
            lipschitz_constant: 1.0,
            name: format!("const({c})"),
        }
    }

    /// `z -> min(surface_distance(z, site), radius)`, 1-Lipschitz on the surface.
    pub fn clipped_distance(site: Point, radius: f64) -> Self {
        let s = reduce(site).map(|r| r.point).unwrap_or(site);
        Self {
            evaluator: Arc::new(move |z| {
                let zr = reduce(z).map(|r| r.point).unwrap_or(z);
                surface_distance_reduced(zr, s).min(radius)
            }),
            lipschitz_constant: 1.0,
            name: format!("min(d(., {:.4}+{:.4}i), {radius})", site.x, site.y),
        }
    }

    pub fn eval(&self, z: Point) -> f64 {
        (self.evaluator)(z)
    }

    pub fn lipschitz_constant(&self) -> f64 {
        self.lipschitz_constant
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Largest two-point quotient `|F(z) - F(w)| / d(z, w)` over the sample.
    pub fn max_sampled_quotient(&self, points: &[Point]) -> f64 {
        let vals: Vec<f64> = points.iter().map(|&p| self.eval(p)).collect();
        let reduced: Vec<Point> = points.iter().map(|&p| reduce(p).map(|r| r.point).unwrap_or(p)).collect();
        let mut worst = 0.0f64;
        for i in 0..points.len() {
            for j in (i + 1)..points.len() {
                let d = surface_distance_reduced(reduced[i], reduced[j]);
                if d > 1e-12 {
                    worst = worst.max((vals[i] - vals[j]).abs() / d);
                }
            }
        }
        worst
    }
}

/// Kantorovich–Rubinstein lower bound `|int F dm1 - int F dm2| / Lip(F)`.
pub fn dual_lower_bound(m1: &DiscreteMeasure, m2: &DiscreteMeasure, f: &LipschitzFunction) -> f64 {
    let integral = |m: &DiscreteMeasure| -> f64 { m.atoms().iter().map(|a| a.weight * f.eval(a.point.point)).sum() };
    (integral(m1) - integral(m2)).abs() / f.lipschitz_constant()
}

/// Clipped distances to each site at radii 1, 2 and 4.
pub fn clipped_distance_family(sites: &[Point]) -> Vec<LipschitzFunction> {
    sites
        .iter()
        .flat_map(|&s| [1.0, 2.0, 4.0].map(|r| LipschitzFunction::clipped_distance(s, r)))
        .collect()
}

/// Best bound over a family, with the index of the maximizer.
pub fn best_dual_lower_bound(m1: &DiscreteMeasure, m2: &DiscreteMeasure, family: &[LipschitzFunction]) -> (f64, usize) {
    family
        .iter()
        .enumerate()
        .map(|(k, f)| (dual_lower_bound(m1, m2, f), k))
        .fold((0.0, 0), |acc, x| if x.0 > acc.0 { x } else { acc })
}
