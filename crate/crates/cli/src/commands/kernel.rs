use modular_w1::hypgeo::Point;
use modular_w1::transform::{kernel_mass, AutomorphicKernel, MassQuadrature, TransformParams};

use crate::config::ExperimentConfig;
use crate::report::{cell, num, Report};

const COLUMNS: &[&str] = &[
    "x",
    "y",
    "T",
    "mass",
    "error_bound",
    "cusp_tail",
    "truncated",
    "pass",
];

/// `int K(z, w) dmu(w) = 1` at each configured base point.
pub fn run(cfg: &ExperimentConfig) -> anyhow::Result<Report> {
    let t = cfg.bandwidth;
    let kernel = AutomorphicKernel::new(TransformParams::new(t)?);
    let km = &cfg.kernel_mass;
    let q = MassQuadrature {
        cusp_height: km.cusp_height,
        x_nodes: km.x_nodes,
        nodes_per_panel: km.nodes_per_panel,
    };
    let tol = cfg.tolerances.kernel_mass;
    let mut r = Report::new("kernel-mass", COLUMNS);
    for &[x, y] in &km.points {
        let m = kernel_mass(Point::new(x, y)?, &kernel, &q)?;
        let err = (m.mass - 1.0).abs();
        let ok = err <= tol && !m.truncated;
        r.row(vec![
            num(x),
            num(y),
            num(t),
            num(m.mass),
            num(m.error_bound),
            num(m.cusp_tail),
            cell(m.truncated),
            cell(ok),
        ]);
        let detail = if m.truncated {
            format!("mass {} but the group sum was truncated", m.mass)
        } else {
            format!(
                "|{} - 1| = {err:e}, quadrature error estimate {:e}",
                m.mass, m.error_bound
            )
        };
        r.check(format!("kernel mass at {x}+{y}i"), ok, detail);
    }
    Ok(r)
}
