use std::fs::File;
use std::io::{BufReader, Write};
use std::path::Path;

use modular_w1::arithmetic::DiscreteMeasure;
use modular_w1::hypgeo::Point;
use modular_w1::transport::{
    best_dual_lower_bound, clipped_distance_family, w1_exact, w1_sinkhorn,
};

use crate::config::ExperimentConfig;
use crate::report::{cell, num, Report};

pub const SINKHORN_ITERS: usize = 5000;

pub fn read_measure(path: &Path) -> anyhow::Result<DiscreteMeasure> {
    let f = File::open(path).map_err(|e| anyhow::anyhow!("{}: {e}", path.display()))?;
    DiscreteMeasure::read_table(BufReader::new(f))
        .map_err(|e| anyhow::anyhow!("{}: {e}", path.display()))
}

/// Exact `W1` between two measure tables, optionally with a Sinkhorn
/// estimate and the transport plan written as `i j mass` rows.
pub fn run(
    cfg: &ExperimentConfig,
    first: &Path,
    second: &Path,
    sinkhorn_reg: Option<f64>,
    plan_out: Option<&Path>,
) -> anyhow::Result<Report> {
    let m1 = read_measure(first)?;
    let m2 = read_measure(second)?;
    let mut r = Report::new(
        "wasserstein",
        &["method", "value", "marginal_error", "atoms_1", "atoms_2"],
    );
    let exact = w1_exact(&m1, &m2)?;
    let marg = exact.marginal_error(&m1.weights(), &m2.weights());
    r.row(vec![
        cell("exact"),
        num(exact.value),
        num(marg),
        cell(m1.len()),
        cell(m2.len()),
    ]);
    r.check(
        "exact plan satisfies the marginals",
        marg <= 1e-9,
        format!("marginal error {marg:e}"),
    );

    let sites: Vec<Point> = cfg
        .duke
        .sites
        .iter()
        .map(|&[x, y]| Point { x, y })
        .collect();
    let (dual, _) = best_dual_lower_bound(&m1, &m2, &clipped_distance_family(&sites));
    r.row(vec![
        cell("dual_lower_bound"),
        num(dual),
        num(0.0),
        cell(m1.len()),
        cell(m2.len()),
    ]);
    r.check(
        "W1 above dual lower bound",
        exact.value >= dual - 1e-12,
        format!("{} >= {dual}", exact.value),
    );

    if let Some(reg) = sinkhorn_reg {
        let s = w1_sinkhorn(&m1, &m2, reg, SINKHORN_ITERS)?;
        r.row(vec![
            cell("sinkhorn"),
            num(s.value),
            num(s.marginal_error),
            cell(m1.len()),
            cell(m2.len()),
        ]);
        if !s.converged {
            r.note(format!(
                "Sinkhorn with reg {reg} did not converge in {SINKHORN_ITERS} iterations"
            ));
        }
    }

    if let Some(path) = plan_out {
        let mut w = std::io::BufWriter::new(File::create(path)?);
        writeln!(w, "# i j mass")?;
        for ((i, j), &v) in exact.plan.indexed_iter() {
            if v > 0.0 {
                writeln!(w, "{i} {j} {v:.16e}")?;
            }
        }
        w.flush()?;
    }
    Ok(r)
}
