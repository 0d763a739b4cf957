use std::collections::VecDeque;

use ndarray::Array2;

use super::cost::cost_matrix;
use crate::arithmetic::DiscreteMeasure;
use crate::{Error, Result};

/// Largest combined support accepted by [`w1_exact`].
pub const MAX_EXACT_SUPPORT: usize = 2000;

/// Consecutive degenerate pivots after which pricing falls back to Bland's rule.
const DEGENERATE_SWITCH: usize = 50;

/// A coupling and its transport cost.
#[derive(Debug, Clone)]
pub struct TransportPlan {
    pub plan: Array2<f64>,
    pub value: f64,
}

impl TransportPlan {
    /// Largest deviation of the row and column sums from the given marginals.
    pub fn marginal_error(&self, supply: &[f64], demand: &[f64]) -> f64 {
        let rows = self
            .plan
            .rows()
            .into_iter()
            .zip(supply)
            .map(|(r, s)| (r.sum() - s).abs())
            .fold(0.0, f64::max);
        let cols = self
            .plan
            .columns()
            .into_iter()
            .zip(demand)
            .map(|(c, d)| (c.sum() - d).abs())
            .fold(0.0, f64::max);
        rows.max(cols)
    }
}

struct Basis {
    m: usize,
    n: usize,
    cells: Vec<(usize, usize)>,
    flow: Vec<f64>,
    /// Basis slot of each cell, `usize::MAX` when non-basic.
    slot: Vec<usize>,
}

impl Basis {
    /// Northwest-corner rule advancing one index per step, so the basis has
    /// exactly `m + n - 1` cells even under degeneracy.
    fn northwest(supply: &[f64], demand: &[f64]) -> Self {
        let (m, n) = (supply.len(), demand.len());
        let mut s = supply.to_vec();
        let mut d = demand.to_vec();
        let mut cells = Vec::with_capacity(m + n - 1);
        let mut flow = Vec::with_capacity(m + n - 1);
        let (mut i, mut j) = (0, 0);
        loop {
            let q = s[i].min(d[j]).max(0.0);
            cells.push((i, j));
            flow.push(q);
            s[i] -= q;
            d[j] -= q;
            if i == m - 1 && j == n - 1 {
                break;
            }
            if i == m - 1 {
                j += 1;
            } else if j == n - 1 || s[i] <= d[j] {
                i += 1;
            } else {
                j += 1;
            }
        }
        let mut slot = vec![usize::MAX; m * n];
        for (k, &(i, j)) in cells.iter().enumerate() {
            slot[i * n + j] = k;
        }
        Self { m, n, cells, flow, slot }
    }
}

/// Tree bookkeeping rooted at row node 0: nodes `0..m` are rows, `m..m+n` columns.
struct Tree {
    u: Vec<f64>,
    v: Vec<f64>,
    parent_edge: Vec<usize>,
    parent: Vec<usize>,
    depth: Vec<usize>,
}

fn build_tree(b: &Basis, cost: &Array2<f64>) -> Result<Tree> {
    let nodes = b.m + b.n;
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); nodes];
    for (k, &(i, j)) in b.cells.iter().enumerate() {
        adj[i].push(k);
        adj[b.m + j].push(k);
    }
    let mut u = vec![0.0; b.m];
    let mut v = vec![0.0; b.n];
    let mut parent_edge = vec![usize::MAX; nodes];
    let mut parent = vec![usize::MAX; nodes];
    let mut depth = vec![usize::MAX; nodes];
    depth[0] = 0;
    let mut queue = VecDeque::from([0usize]);
    while let Some(node) = queue.pop_front() {
        for &k in &adj[node] {
            let (i, j) = b.cells[k];
            let other = if node < b.m { b.m + j } else { i };
            if depth[other] != usize::MAX {
                continue;
            }
            if node < b.m {
                v[j] = cost[[i, j]] - u[i];
            } else {
                u[i] = cost[[i, j]] - v[j];
            }
            depth[other] = depth[node] + 1;
            parent[other] = node;
            parent_edge[other] = k;
            queue.push_back(other);
        }
    }
    if depth.contains(&usize::MAX) {
        return Err(Error::Transport("basis is not a spanning tree".into()));
    }
    Ok(Tree {
        u,
        v,
        parent_edge,
        parent,
        depth,
    })
}

/// Basis edges on the tree path from column node `m + j` to row node `i`.
fn tree_path(t: &Tree, from: usize, to: usize) -> Vec<usize> {
    let (mut a, mut b) = (from, to);
    let mut head = Vec::new();
    let mut tail = Vec::new();
    while t.depth[a] > t.depth[b] {
        head.push(t.parent_edge[a]);
        a = t.parent[a];
    }
    while t.depth[b] > t.depth[a] {
        tail.push(t.parent_edge[b]);
        b = t.parent[b];
    }
    while a != b {
        head.push(t.parent_edge[a]);
        a = t.parent[a];
        tail.push(t.parent_edge[b]);
        b = t.parent[b];
    }
    head.extend(tail.into_iter().rev());
    head
}

/// Solves the balanced transportation problem by the primal transportation
/// simplex (MODI potentials on the basis tree).
///
/// Entering cells follow Dantzig's most-negative reduced cost; after a run of
/// degenerate pivots the rule switches to Bland's lowest-index entering and
/// leaving choice until progress resumes, which rules out cycling.
pub fn solve_transport(supply: &[f64], demand: &[f64], cost: &Array2<f64>) -> Result<TransportPlan> {
    let (m, n) = (supply.len(), demand.len());
    if m == 0 || n == 0 {
        return Err(Error::Transport("empty marginal".into()));
    }
    if cost.dim() != (m, n) {
        return Err(Error::Transport(format!("cost is {:?}, marginals {m} x {n}", cost.dim())));
    }
    if supply.iter().chain(demand).any(|&w| !(w >= 0.0) || !w.is_finite()) {
        return Err(Error::Transport("marginals must be finite and nonnegative".into()));
    }
    if cost.iter().any(|c| !c.is_finite()) {
        return Err(Error::Transport("cost entries must be finite".into()));
    }
    let (ss, ds): (f64, f64) = (supply.iter().sum(), demand.iter().sum());
    if (ss - ds).abs() > 1e-9 * ss.max(1.0) {
        return Err(Error::Transport(format!("unbalanced marginals: {ss} vs {ds}")));
    }
    let cmax = cost.iter().fold(0.0f64, |a, &c| a.max(c.abs()));
    let tol = 1e-12 * cmax.max(1.0);
    let mut basis = Basis::northwest(supply, demand);
    let max_pivots = 100 * (m + n) * (m + n).max(50);
    let mut degenerate_run = 0usize;
    for _ in 0..max_pivots {
        let tree = build_tree(&basis, cost)?;
        let bland = degenerate_run >= DEGENERATE_SWITCH;
        let mut entering: Option<(usize, usize)> = None;
        let mut best = -tol;
        'scan: for i in 0..m {
            let ui = tree.u[i];
            let row = cost.row(i);
            for j in 0..n {
                let r = row[j] - ui - tree.v[j];
                if r < best && basis.slot[i * n + j] == usize::MAX {
                    entering = Some((i, j));
                    if bland {
                        break 'scan;
                    }
                    best = r;
                }
            }
        }
        let Some((ei, ej)) = entering else {
            return Ok(finish(&basis, cost));
        };
        let path = tree_path(&tree, m + ej, ei);
        let mut theta = f64::INFINITY;
        for &k in path.iter().step_by(2) {
            theta = theta.min(basis.flow[k]);
        }
        let tie = 1e-15 * ss.max(1.0);
        let leaving = path
            .iter()
            .step_by(2)
            .copied()
            .filter(|&k| basis.flow[k] <= theta + tie)
            .min_by_key(|&k| {
                let (i, j) = basis.cells[k];
                i * n + j
            })
            .ok_or_else(|| Error::Transport("empty pivot cycle".into()))?;
        for (pos, &k) in path.iter().enumerate() {
            if pos % 2 == 0 {
                basis.flow[k] = (basis.flow[k] - theta).max(0.0);
            } else {
                basis.flow[k] += theta;
            }
        }
        if theta <= tie {
            degenerate_run += 1;
        } else {
            degenerate_run = 0;
        }
        let (li, lj) = basis.cells[leaving];
        basis.slot[li * n + lj] = usize::MAX;
        basis.cells[leaving] = (ei, ej);
        basis.flow[leaving] = theta;
        basis.slot[ei * n + ej] = leaving;
    }
    Err(Error::Transport("pivot limit reached".into()))
}

fn finish(basis: &Basis, cost: &Array2<f64>) -> TransportPlan {
    let mut plan = Array2::zeros((basis.m, basis.n));
    let mut value = 0.0;
    for (&(i, j), &f) in basis.cells.iter().zip(&basis.flow) {
        plan[[i, j]] = f;
        value += f * cost[[i, j]];
    }
    TransportPlan { plan, value }
}

/// Exact 1-Wasserstein distance between two discrete measures on the surface.
pub fn w1_exact(m1: &DiscreteMeasure, m2: &DiscreteMeasure) -> Result<TransportPlan> {
    if m1.len() + m2.len() > MAX_EXACT_SUPPORT {
        return Err(Error::Transport(format!(
            "combined support {} exceeds {MAX_EXACT_SUPPORT}",
            m1.len() + m2.len()
        )));
    }
    let cost = cost_matrix(m1, m2)?;
    solve_transport(&m1.weights(), &m2.weights(), &cost.entries)
}
