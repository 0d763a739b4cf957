use ndarray::Array2;

use super::cost::cost_matrix;
use crate::arithmetic::DiscreteMeasure;
use crate::{Error, Result};

/// Marginal violation above which a Sinkhorn run is reported as unconverged.
const CONVERGENCE_FLAG: f64 = 1e-7;

/// Entropic transport value with diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SinkhornResult {
    pub value: f64,
    /// L1 violation of the column marginal at exit (worst of the three runs).
    pub marginal_error: f64,
    pub converged: bool,
}

fn log_sum_exp(it: impl Iterator<Item = f64> + Clone) -> f64 {
    let mx = it.clone().fold(f64::NEG_INFINITY, f64::max);
    if mx == f64::NEG_INFINITY {
        return mx;
    }
    mx + it.map(|x| (x - mx).exp()).sum::<f64>().ln()
}

/// Log-domain Sinkhorn with epsilon scaling. Returns the plan and its final
/// column-marginal L1 error.
///
/// The regularization is annealed geometrically from the cost scale down to
/// `reg`, warm-starting the potentials at each stage; `iters` bounds the
/// iterations at the final stage.
pub fn sinkhorn_plan(a: &[f64], b: &[f64], cost: &Array2<f64>, reg: f64, iters: usize) -> Result<(Array2<f64>, f64)> {
    if !(reg > 0.0) {
        return Err(Error::Transport(format!("regularization {reg} must be positive")));
    }
    let (m, n) = cost.dim();
    if a.len() != m || b.len() != n {
        return Err(Error::Transport("marginal sizes do not match the cost".into()));
    }
    let la: Vec<f64> = a.iter().map(|x| x.ln()).collect();
    let lb: Vec<f64> = b.iter().map(|x| x.ln()).collect();
    let mut f = vec![0.0; m];
    let mut g = vec![0.0; n];
    let cmax = cost.iter().fold(0.0f64, |x, &c| x.max(c));
    let mut eps = cmax.max(reg);
    let mut err = f64::INFINITY;
    loop {
        let last = eps <= reg;
        let stage_iters = if last { iters } else { 50 };
        for _ in 0..stage_iters {
            for (fi, row) in f.iter_mut().zip(cost.rows()) {
                let lse = log_sum_exp((0..n).map(|j| (g[j] - row[j]) / eps + lb[j]));
                *fi = -eps * lse;
            }
            for (gj, col) in g.iter_mut().zip(cost.columns()) {
                let lse = log_sum_exp((0..m).map(|i| (f[i] - col[i]) / eps + la[i]));
                *gj = -eps * lse;
            }
            // After the g-update columns are exact, so measure the rows.
            err = (0..m)
                .map(|i| {
                    let row = cost.row(i);
                    let s: f64 = (0..n).map(|j| ((f[i] + g[j] - row[j]) / eps + la[i] + lb[j]).exp()).sum();
                    (s - a[i]).abs()
                })
                .sum();
            if last && err < 1e-12 {
                break;
            }
        }
        if last {
            break;
        }
        eps = (eps * 0.5).max(reg);
    }
    let plan = Array2::from_shape_fn((m, n), |(i, j)| {
        ((f[i] + g[j] - cost[[i, j]]) / eps + la[i] + lb[j]).exp()
    });
    Ok((plan, err))
}

fn sharp_cost(a: &[f64], b: &[f64], cost: &Array2<f64>, reg: f64, iters: usize) -> Result<(f64, f64)> {
    let (plan, err) = sinkhorn_plan(a, b, cost, reg, iters)?;
    Ok(((&plan * cost).sum(), err))
}

/// Debiased entropic estimate
/// `<P_ab, C> - (<P_aa, C> + <P_bb, C>) / 2` of the 1-Wasserstein distance.
pub fn w1_sinkhorn(m1: &DiscreteMeasure, m2: &DiscreteMeasure, reg: f64, iters: usize) -> Result<SinkhornResult> {
    let (a, b) = (m1.weights(), m2.weights());
    let cab = cost_matrix(m1, m2)?;
    let caa = cost_matrix(m1, m1)?;
    let cbb = cost_matrix(m2, m2)?;
    let (vab, e1) = sharp_cost(&a, &b, &cab.entries, reg, iters)?;
    let (vaa, e2) = sharp_cost(&a, &a, &caa.entries, reg, iters)?;
    let (vbb, e3) = sharp_cost(&b, &b, &cbb.entries, reg, iters)?;
    let marginal_error = e1.max(e2).max(e3);
    Ok(SinkhornResult {
        value: vab - 0.5 * (vaa + vbb),
        marginal_error,
        converged: marginal_error <= CONVERGENCE_FLAG,
    })
}
