use std::f64::consts::PI;

use super::{k_direct, TransformParams};
use crate::hypgeo::{point_pair_invariant, reduce, rho_from_u, Point};
use crate::quad::GaussLegendre;
use crate::Result;

const CHEB_DEGREE: usize = 16;

/// Piecewise Chebyshev interpolant of `ln k(rho)` on `[0, rho_cutoff]`.
#[derive(Debug, Clone)]
pub struct KernelTable {
    rho_max: f64,
    panel_width: f64,
    coeffs: Vec<[f64; CHEB_DEGREE + 1]>,
}

impl KernelTable {
    pub fn new(params: &TransformParams) -> Self {
        let rho_max = params.rho_cutoff();
        let panels = ((rho_max * params.bandwidth() / 0.25).ceil() as usize).max(4);
        let panel_width = rho_max / panels as f64;
        let n = CHEB_DEGREE + 1;
        let nodes: Vec<f64> = (0..n).map(|j| (PI * (j as f64 + 0.5) / n as f64).cos()).collect();
        let coeffs = (0..panels)
            .map(|p| {
                let lo = p as f64 * panel_width;
                let vals: Vec<f64> = nodes
                    .iter()
                    .map(|&x| k_direct(lo + 0.5 * panel_width * (x + 1.0), params).ln())
                    .collect();
                let mut c = [0.0; CHEB_DEGREE + 1];
                for (k, ck) in c.iter_mut().enumerate() {
                    let s: f64 = (0..n)
                        .map(|j| vals[j] * (PI * k as f64 * (j as f64 + 0.5) / n as f64).cos())
                        .sum();
                    *ck = 2.0 * s / n as f64;
                }
                c[0] *= 0.5;
                c
            })
            .collect();
        Self {
            rho_max,
            panel_width,
            coeffs,
        }
    }

    pub fn rho_max(&self) -> f64 {
        self.rho_max
    }

    /// `k` at distance `rho`; zero beyond the cutoff.
    pub fn eval_rho(&self, rho: f64) -> f64 {
        if rho > self.rho_max {
            return 0.0;
        }
        let p = ((rho / self.panel_width) as usize).min(self.coeffs.len() - 1);
        let lo = p as f64 * self.panel_width;
        let x = 2.0 * (rho - lo) / self.panel_width - 1.0;
        let c = &self.coeffs[p];
        let (mut b1, mut b2) = (0.0, 0.0);
        for &ck in c[1..].iter().rev() {
            let b0 = 2.0 * x * b1 - b2 + ck;
            b2 = b1;
            b1 = b0;
        }
        (x * b1 - b2 + c[0]).exp()
    }

    pub fn eval_u(&self, u: f64) -> f64 {
        self.eval_rho(rho_from_u(u))
    }
}

/// Value of the automorphic kernel with truncation diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelSum {
    pub value: f64,
    /// Contribution of images with `u` in `(u_cutoff/2, u_cutoff]`.
    pub frontier: f64,
    pub truncated: bool,
}

/// `K(z, w) = sum over PSL2(Z) of k(u(z, gamma w))`, with a tabulated `k`.
#[derive(Debug, Clone)]
pub struct AutomorphicKernel {
    params: TransformParams,
    table: KernelTable,
}

/// Frontier contribution above which a kernel sum is flagged as truncated.
pub const FRONTIER_FLAG: f64 = 1e-12;

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

impl AutomorphicKernel {
    pub fn new(params: TransformParams) -> Self {
        let table = KernelTable::new(&params);
        Self { params, table }
    }

    pub fn params(&self) -> &TransformParams {
        &self.params
    }

    pub fn table(&self) -> &KernelTable {
        &self.table
    }

    /// Calls `visit(u)` for every image `gamma w`, `gamma` in `PSL2(Z)`, with
    /// `u(z, gamma w) <= u_max`. Both points must be reduced.
    ///
    /// Images are enumerated by bottom row `(c, d)`: the condition forces
    /// `Im(gamma w)` into `[y_z r_-, y_z r_+]`, which bounds `|cw + d|`, and
    /// each coprime row contributes a row of translates.
    pub fn for_each_image<F: FnMut(f64)>(z: Point, w: Point, u_max: f64, mut visit: F) {
        let root = (u_max * (u_max + 1.0)).sqrt();
        let r_minus = 1.0 / (1.0 + 2.0 * u_max + 2.0 * root);
        let mut scan_row = |p: Point| {
            let disc = 4.0 * u_max * z.y * p.y - (p.y - z.y) * (p.y - z.y);
            if disc < 0.0 {
                return;
            }
            let half = disc.sqrt();
            let k_lo = (z.x - half - p.x).ceil() as i64;
            let k_hi = (z.x + half - p.x).floor() as i64;
            for k in k_lo..=k_hi {
                let q = Point {
                    x: p.x + k as f64,
                    y: p.y,
                };
                let u = point_pair_invariant(z, q);
                if u <= u_max {
                    visit(u);
                }
            }
        };
        scan_row(w);
        let bound = w.y / (z.y * r_minus);
        let c_max = (bound.sqrt() / w.y).floor() as i64;
        for c in 1..=c_max {
            let cf = c as f64;
            let rem = bound - cf * cf * w.y * w.y;
            if rem < 0.0 {
                continue;
            }
            let rad = rem.sqrt();
            let d_lo = (-cf * w.x - rad).ceil() as i64;
            let d_hi = (-cf * w.x + rad).floor() as i64;
            for d in d_lo..=d_hi {
                let (g, x, y) = ext_gcd(d, c);
                if g.abs() != 1 {
                    continue;
                }
                // a d - b c = 1 with a = x g, b = -y g.
                let (a, b) = (x * g, -y * g);
                let (af, bf, df) = (a as f64, b as f64, d as f64);
                let re = cf * w.x + df;
                let im = cf * w.y;
                let den = re * re + im * im;
                let p = Point {
                    x: ((af * w.x + bf) * re + af * w.y * im) / den,
                    y: w.y / den,
                };
                scan_row(p);
            }
        }
    }

    pub fn eval(&self, z: Point, w: Point) -> KernelSum {
        let zr = reduce(z).map(|s| s.point).unwrap_or(z);
        let wr = reduce(w).map(|s| s.point).unwrap_or(w);
        self.eval_reduced(zr, wr)
    }

    /// [`eval`](Self::eval) for points already in the fundamental domain.
    pub fn eval_reduced(&self, z: Point, w: Point) -> KernelSum {
        let u_cut = self.params.u_cutoff();
        let half = 0.5 * u_cut;
        let mut value = 0.0;
        let mut frontier = 0.0;
        Self::for_each_image(z, w, u_cut, |u| {
            let k = self.table.eval_u(u);
            value += k;
            if u > half {
                frontier += k;
            }
        });
        KernelSum {
            value,
            frontier,
            truncated: frontier > FRONTIER_FLAG,
        }
    }
}

/// Evaluates `K(z, w)` with a freshly built table. Prefer
/// [`AutomorphicKernel`] when evaluating many pairs.
pub fn automorphic_kernel(z: Point, w: Point, params: &TransformParams) -> KernelSum {
    AutomorphicKernel::new(*params).eval(z, w)
}

/// Tensor-grid controls for [`kernel_mass`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MassQuadrature {
    /// Cusp cutoff `Y`; the region `y > Y` is integrated as a separate panel.
    pub cusp_height: f64,
    /// Trapezoid nodes in `x` on the periodic strip.
    pub x_nodes: usize,
    /// Gauss–Legendre nodes per panel.
    pub nodes_per_panel: usize,
}

impl Default for MassQuadrature {
    fn default() -> Self {
        Self {
            cusp_height: 50.0,
            x_nodes: 32,
            nodes_per_panel: 12,
        }
    }
}

/// `int_{Gamma\H} K(z, w) dmu(w)` and its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelMass {
    pub mass: f64,
    /// `|fine - coarse|`, where the coarse grid halves every node count.
    pub error_bound: f64,
    /// Contribution of `y > Y`, included in `mass`.
    pub cusp_tail: f64,
    pub truncated: bool,
}

fn mass_on_grid(kernel: &AutomorphicKernel, z: Point, q: &MassQuadrature) -> (f64, f64, bool) {
    // Coordinates (x, eta) with eta = 1/y, so dmu = dx deta.
    let gl = GaussLegendre::new(q.nodes_per_panel);
    let mut truncated = false;
    let mut eval = |x: f64, eta: f64| {
        let s = kernel.eval_reduced(z, Point { x, y: 1.0 / eta });
        truncated |= s.truncated;
        s.value
    };
    let hx = 1.0 / q.x_nodes as f64;
    let xs: Vec<f64> = (0..q.x_nodes).map(|i| -0.5 + (i as f64 + 0.5) * hx).collect();
    let eta_cusp = 1.0 / q.cusp_height;
    let mut cusp = 0.0;
    for &x in &xs {
        for (eta, w) in gl.mapped(0.0, eta_cusp) {
            if eta > 0.0 {
                cusp += hx * w * eval(x, eta);
            }
        }
    }
    let mut strip = 0.0;
    let breaks = [eta_cusp, 0.2, 0.5, 1.0];
    for &x in &xs {
        for win in breaks.windows(2) {
            for (eta, w) in gl.mapped(win[0], win[1]) {
                strip += hx * w * eval(x, eta);
            }
        }
    }
    // Lens below y = 1 bounded by the unit circle, eta <= 1/sqrt(1 - x^2).
    let mut lens = 0.0;
    for half in [(-0.5, 0.0), (0.0, 0.5)] {
        for (x, wx) in gl.mapped(half.0, half.1) {
            let top = 1.0 / (1.0 - x * x).sqrt();
            for (eta, w) in gl.mapped(1.0, top) {
                lens += wx * w * eval(x, eta);
            }
        }
    }
    (cusp + strip + lens, cusp, truncated)
}

/// Integrates the automorphic kernel over the fundamental domain in `w`.
pub fn kernel_mass(z: Point, kernel: &AutomorphicKernel, q: &MassQuadrature) -> Result<KernelMass> {
    let zr = reduce(z)?.point;
    let (fine, cusp, t1) = mass_on_grid(kernel, zr, q);
    let coarse_q = MassQuadrature {
        x_nodes: q.x_nodes / 2,
        nodes_per_panel: q.nodes_per_panel / 2,
        ..*q
    };
    let (coarse, _, t2) = mass_on_grid(kernel, zr, &coarse_q);
    Ok(KernelMass {
        mass: fine,
        error_bound: (fine - coarse).abs(),
        cusp_tail: cusp,
        truncated: t1 || t2,
    })
}
