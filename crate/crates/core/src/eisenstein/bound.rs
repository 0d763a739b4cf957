use std::f64::consts::PI;
use std::io::BufRead;
use std::path::Path;

use num_complex::Complex64;

use super::{weyl_sum_with, EisensteinParams, Spectral};
use crate::arithmetic::DiscreteMeasure;
use crate::quad::GaussLegendre;
use crate::{Error, Result};

/// Externally supplied cuspidal spectral data: rows `(t_f, |W_f(nu_1) - W_f(nu_2)|^2)`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct MaassData {
    rows: Vec<(f64, f64)>,
}

impl MaassData {
    /// Requires `t_f > 0` strictly increasing and finite nonnegative differences.
    pub fn new(rows: Vec<(f64, f64)>) -> Result<Self> {
        let mut prev = 0.0;
        for &(t, w) in &rows {
            if !(t > prev) || !t.is_finite() {
                return Err(Error::Parameter(format!("t_f = {t} must be positive and strictly increasing")));
            }
            if !(w >= 0.0) || !w.is_finite() {
                return Err(Error::Parameter(format!("weyl_sq_diff = {w} at t_f = {t} must be nonnegative")));
            }
            prev = t;
        }
        Ok(Self { rows })
    }

    /// Parses rows `t_f weyl_sq_diff`; lines starting with `#` are comments.
    pub fn read<R: BufRead>(r: R) -> Result<Self> {
        let mut rows = Vec::new();
        for (lineno, line) in r.lines().enumerate() {
            let line = line?;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let cols: Vec<&str> = line.split_whitespace().collect();
            if cols.len() != 2 {
                return Err(Error::Parameter(format!("Maass data line {}: expected 2 columns", lineno + 1)));
            }
            let parse = |s: &str| {
                s.parse::<f64>()
                    .map_err(|e| Error::Parameter(format!("Maass data line {}: {e}", lineno + 1)))
            };
            rows.push((parse(cols[0])?, parse(cols[1])?));
        }
        Self::new(rows)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let f = std::fs::File::open(path)?;
        Self::read(std::io::BufReader::new(f))
    }

    pub fn rows(&self) -> &[(f64, f64)] {
        &self.rows
    }

    /// `sum e^{-t_f^2/T^2} / (1/4 + t_f^2) * weyl_sq_diff`.
    pub fn cuspidal_term(&self, bandwidth: f64) -> f64 {
        self.rows
            .iter()
            .map(|&(t, w)| (-(t * t) / (bandwidth * bandwidth)).exp() / (0.25 + t * t) * w)
            .sum()
    }
}

/// Right-hand side of the Berry–Esseen inequality for two measures.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BerryEsseenRhs {
    pub leading_term: f64,
    /// `(1/4 pi) int_{|t| <= t_max} e^{-t^2/T^2} / (1/4 + t^2) |Delta_E(t)|^2 dt`.
    pub eisenstein_term: f64,
    /// Estimate of the omitted `|t| > t_max` part, from the largest
    /// `|Delta_E|^2` on the outermost panel and the Gaussian tail.
    pub eisenstein_tail: f64,
    pub cuspidal_term: f64,
    /// `1/T + sqrt(pi/3) sqrt(cuspidal + eisenstein)`.
    pub total: f64,
    /// No cuspidal data was supplied, so `total` omits the cusp-form spectrum.
    pub partial: bool,
    /// Some Eisenstein evaluation raised the Fourier truncation flag.
    pub truncated: bool,
}

/// Weyl sums of one measure at the nodes of the `t`-quadrature.
#[derive(Debug, Clone, PartialEq)]
pub struct WeylProfile {
    nodes: Vec<(f64, f64)>,
    values: Vec<Complex64>,
    /// Nodes of the outermost panel start here.
    outer_start: usize,
    t_max: f64,
    truncated: bool,
}

impl WeylProfile {
    /// Evaluates `int E(z, 1/2 + it) dm` at every node of `p.t_quad` on `(0, t_max]`.
    pub fn new(m: &DiscreteMeasure, p: &EisensteinParams) -> Result<Self> {
        p.validate()?;
        let panels = (p.t_max / p.t_quad.panel_width).ceil() as usize;
        let width = p.t_max / panels as f64;
        let gl = GaussLegendre::new(p.t_quad.nodes_per_panel);
        let mut nodes = Vec::new();
        let mut values = Vec::new();
        let mut truncated = false;
        for k in 0..panels {
            for (t, w) in gl.mapped(k as f64 * width, (k + 1) as f64 * width) {
                let e = weyl_sum_with(m, &mut Spectral::new(t)?, p)?;
                truncated |= e.truncated;
                nodes.push((t, w));
                values.push(e.value);
            }
        }
        Ok(Self {
            outer_start: (panels - 1) * gl.len(),
            nodes,
            values,
            t_max: p.t_max,
            truncated,
        })
    }

    pub fn nodes(&self) -> &[(f64, f64)] {
        &self.nodes
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }
}

/// [`berry_esseen_rhs`] from precomputed profiles on the same `t`-grid.
pub fn berry_esseen_from_profiles(
    a: &WeylProfile,
    b: &WeylProfile,
    bandwidth: f64,
    data: Option<&MaassData>,
) -> Result<BerryEsseenRhs> {
    if !(bandwidth >= 1.0) || !bandwidth.is_finite() {
        return Err(Error::Parameter(format!("bandwidth T = {bandwidth} must be >= 1")));
    }
    if a.nodes != b.nodes {
        return Err(Error::Parameter("Weyl profiles use different t grids".into()));
    }
    if a.t_max < 3.0 * bandwidth {
        return Err(Error::Parameter(format!("t_max = {} is below 3T = {}", a.t_max, 3.0 * bandwidth)));
    }
    let t2 = bandwidth * bandwidth;
    let mut integral = 0.0;
    let mut outer_max = 0.0f64;
    for (k, (&(t, w), (ea, eb))) in a.nodes.iter().zip(a.values.iter().zip(&b.values)).enumerate() {
        let diff = (ea - eb).norm_sqr();
        integral += w * (-t * t / t2).exp() / (0.25 + t * t) * diff;
        if k >= a.outer_start {
            outer_max = outer_max.max(diff);
        }
    }
    // |Delta_E(-t)| = |Delta_E(t)|, so the symmetric integral is twice the half-line one.
    let eisenstein_term = 2.0 * integral / (4.0 * PI);
    let tm = a.t_max;
    let gaussian_tail = t2 * (-tm * tm / t2).exp() / (2.0 * tm);
    let eisenstein_tail = 2.0 * outer_max * gaussian_tail / ((0.25 + tm * tm) * 4.0 * PI);
    let cuspidal_term = data.map_or(0.0, |d| d.cuspidal_term(bandwidth));
    let leading_term = 1.0 / bandwidth;
    Ok(BerryEsseenRhs {
        leading_term,
        eisenstein_term,
        eisenstein_tail,
        cuspidal_term,
        total: leading_term + (PI / 3.0).sqrt() * (cuspidal_term + eisenstein_term).sqrt(),
        partial: data.is_none(),
        truncated: a.truncated || b.truncated,
    })
}

pub fn berry_esseen_rhs(
    m1: &DiscreteMeasure,
    m2: &DiscreteMeasure,
    bandwidth: f64,
    data: Option<&MaassData>,
    p: &EisensteinParams,
) -> Result<BerryEsseenRhs> {
    if p.t_max < 3.0 * bandwidth {
        return Err(Error::Parameter(format!("t_max = {} is below 3T = {}", p.t_max, 3.0 * bandwidth)));
    }
    let a = WeylProfile::new(m1, p)?;
    let b = WeylProfile::new(m2, p)?;
    berry_esseen_from_profiles(&a, &b, bandwidth, data)
}
