use ndarray::Array2;

use crate::arithmetic::DiscreteMeasure;
use crate::hypgeo::{surface_distance_reduced, Point};
use crate::{Error, Result};

/// Size guard for dense cost matrices.
pub const MAX_COST_ENTRIES: usize = 20_000 * 20_000;

/// Pairwise surface distances between the atoms of two measures.
#[derive(Debug, Clone)]
pub struct CostMatrix {
    pub entries: Array2<f64>,
    pub row_points: Vec<Point>,
    pub col_points: Vec<Point>,
}

pub fn cost_matrix(m1: &DiscreteMeasure, m2: &DiscreteMeasure) -> Result<CostMatrix> {
    let (r, c) = (m1.len(), m2.len());
    if r == 0 || c == 0 {
        return Err(Error::Transport("cost matrix of an empty measure".into()));
    }
    if r.saturating_mul(c) > MAX_COST_ENTRIES {
        return Err(Error::Transport(format!("cost matrix {r} x {c} exceeds the size guard")));
    }
    let row_points: Vec<Point> = m1.atoms().iter().map(|a| a.point.point).collect();
    let col_points: Vec<Point> = m2.atoms().iter().map(|a| a.point.point).collect();
    let entries = Array2::from_shape_fn((r, c), |(i, j)| {
        let (p, q) = (row_points[i], col_points[j]);
        // Fixed argument order makes the matrix exactly symmetric when m1 = m2.
        if p == q {
            0.0
        } else if (p.x, p.y) < (q.x, q.y) {
            surface_distance_reduced(p, q)
        } else {
            surface_distance_reduced(q, p)
        }
    });
    Ok(CostMatrix {
        entries,
        row_points,
        col_points,
    })
}
