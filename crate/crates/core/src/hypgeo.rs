//! Upper half-plane geometry and reduction to the fundamental domain of
//! `SL2(Z)`.

use std::sync::OnceLock;

use crate::{Error, Result};

/// Smallest admissible imaginary part.
pub const MIN_HEIGHT: f64 = 1e-12;
/// Slack used when deciding whether a point lies on the unit circle.
const ARC_TOL: f64 = 1e-13;
const MAX_REDUCTION_STEPS: usize = 10_000;

/// A point `x + iy` of the upper half-plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if !x.is_finite() || !y.is_finite() {
            return Err(Error::Geometry(format!("non-finite point ({x}, {y})")));
        }
        if y < MIN_HEIGHT {
            return Err(Error::Geometry(format!("imaginary part {y} below {MIN_HEIGHT}")));
        }
        Ok(Self { x, y })
    }
}

/// An integer matrix of determinant one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct UnimodularMatrix {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl UnimodularMatrix {
    pub const IDENTITY: Self = Self { a: 1, b: 0, c: 0, d: 1 };
    /// `z -> -1/z`.
    pub const S: Self = Self { a: 0, b: -1, c: 1, d: 0 };
    /// `z -> z + 1`.
    pub const T: Self = Self { a: 1, b: 1, c: 0, d: 1 };

    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        if (a as i128) * (d as i128) - (b as i128) * (c as i128) != 1 {
            return Err(Error::Geometry(format!("det of ({a},{b};{c},{d}) is not 1")));
        }
        Ok(Self { a, b, c, d })
    }

    pub fn translation(n: i64) -> Self {
        Self { a: 1, b: n, c: 0, d: 1 }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    pub fn inverse(&self) -> Self {
        Self {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            a: -self.a,
            b: -self.b,
            c: -self.c,
            d: -self.d,
        }
    }

    pub fn trace(&self) -> i64 {
        self.a + self.d
    }

    pub fn apply(&self, z: Point) -> Point {
        mobius_apply(self, z)
    }
}

/// Möbius action `(az + b)/(cz + d)`.
pub fn mobius_apply(g: &UnimodularMatrix, z: Point) -> Point {
    let (a, b, c, d) = (g.a as f64, g.b as f64, g.c as f64, g.d as f64);
    if g.c == 0 {
        // Here a = d = ±1.
        return Point {
            x: (a * z.x + b) * d,
            y: z.y,
        };
    }
    let re = c * z.x + d;
    let im = c * z.y;
    let den = re * re + im * im;
    let num_re = a * z.x + b;
    let num_im = a * z.y;
    Point {
        x: (num_re * re + num_im * im) / den,
        y: z.y / den,
    }
}

/// Point-pair invariant `u(z, w) = |z - w|^2 / (4 Im z Im w)`.
pub fn point_pair_invariant(z: Point, w: Point) -> f64 {
    let dx = z.x - w.x;
    let dy = z.y - w.y;
    (dx * dx + dy * dy) / (4.0 * z.y * w.y)
}

/// Hyperbolic distance in `H`.
pub fn hyperbolic_distance(z: Point, w: Point) -> f64 {
    rho_from_u(point_pair_invariant(z, w))
}

/// `rho = 2 asinh(sqrt(u))`.
pub fn rho_from_u(u: f64) -> f64 {
    2.0 * u.max(0.0).sqrt().asinh()
}

/// `u = sinh^2(rho / 2)`.
pub fn u_from_rho(rho: f64) -> f64 {
    let s = (0.5 * rho).sinh();
    s * s
}

/// A point of the fundamental domain together with the matrix that moved the
/// original point there.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfacePoint {
    pub point: Point,
    pub reducing_matrix: UnimodularMatrix,
}

impl SurfacePoint {
    pub fn x(&self) -> f64 {
        self.point.x
    }
    pub fn y(&self) -> f64 {
        self.point.y
    }
}

/// Moves `z` into the standard fundamental domain.
///
/// The representative satisfies `-1/2 <= x < 1/2`, `|z| >= 1`, and `x <= 0`
/// whenever `|z| = 1`.
pub fn reduce(z: Point) -> Result<SurfacePoint> {
    if !(z.y >= MIN_HEIGHT) || !z.x.is_finite() || !z.y.is_finite() {
        return Err(Error::Geometry(format!("cannot reduce degenerate point ({}, {})", z.x, z.y)));
    }
    let mut g = UnimodularMatrix::IDENTITY;
    let (mut x, mut y) = (z.x, z.y);
    for _ in 0..MAX_REDUCTION_STEPS {
        let n = (x + 0.5).floor();
        if n != 0.0 {
            if n.abs() > 4e18 {
                return Err(Error::Geometry("translation out of range".into()));
            }
            x -= n;
            if x >= 0.5 {
                x -= 1.0;
                g = UnimodularMatrix::translation(-(n as i64) - 1).mul(&g);
            } else {
                g = UnimodularMatrix::translation(-(n as i64)).mul(&g);
            }
        }
        let r2 = x * x + y * y;
        let on_arc = (r2 - 1.0).abs() <= ARC_TOL;
        if r2 < 1.0 - ARC_TOL || (on_arc && x > 0.0) {
            x = -x / r2;
            y /= r2;
            g = UnimodularMatrix::S.mul(&g);
            continue;
        }
        return Ok(SurfacePoint {
            point: Point { x, y },
            reducing_matrix: g,
        });
    }
    Err(Error::Geometry("reduction did not terminate".into()))
}

/// Imaginary part of the reduced representative.
pub fn height(z: Point) -> Result<f64> {
    Ok(reduce(z)?.point.y)
}

/// `PSL2(Z)` elements with entries bounded by 2 in absolute value, one per
/// sign class.
fn neighbor_matrices() -> &'static [UnimodularMatrix] {
    static CELL: OnceLock<Vec<UnimodularMatrix>> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut out = Vec::new();
        for a in -2..=2i64 {
            for b in -2..=2i64 {
                for c in -2..=2i64 {
                    for d in -2..=2i64 {
                        if a * d - b * c != 1 {
                            continue;
                        }
                        if c < 0 || (c == 0 && d < 0) {
                            continue;
                        }
                        out.push(UnimodularMatrix { a, b, c, d });
                    }
                }
            }
        }
        out
    })
}

/// Distance on `SL2(Z)\H`: minimum over the orbit of `w` of the distance to `z`.
///
/// Both points are reduced first; for reduced points the minimum is attained
/// by a matrix with entries at most 2 in absolute value.
pub fn surface_distance(z: Point, w: Point) -> f64 {
    let zr = reduce(z).map(|s| s.point).unwrap_or(z);
    let wr = reduce(w).map(|s| s.point).unwrap_or(w);
    surface_distance_reduced(zr, wr)
}

/// [`surface_distance`] for points already in the fundamental domain.
pub fn surface_distance_reduced(z: Point, w: Point) -> f64 {
    let mut best = f64::INFINITY;
    for g in neighbor_matrices() {
        let u = point_pair_invariant(z, mobius_apply(g, w));
        if u < best {
            best = u;
        }
    }
    rho_from_u(best)
}

/// Point at geodesic polar coordinates `(u, theta)` about `i`, with
/// `u = sinh^2(r/2)`. The invariant area element is `2 du dtheta`.
pub fn geodesic_polar(u: f64, theta: f64) -> Point {
    let r = (u * (u + 1.0)).sqrt();
    let (s, c) = theta.sin_cos();
    let den = 1.0 + 2.0 * u + 2.0 * r * c;
    Point {
        x: 2.0 * r * s / den,
        y: 1.0 / den,
    }
}

/// Point at hyperbolic distance `rho` from `z` in direction `theta`
/// (measured at `z`, `theta = 0` pointing straight down).
pub fn geodesic_polar_at(z: Point, rho: f64, theta: f64) -> Point {
    let p = geodesic_polar(u_from_rho(rho), theta);
    Point {
        x: z.x + z.y * p.x,
        y: z.y * p.y,
    }
}
