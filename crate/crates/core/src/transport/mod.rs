//! 1-Wasserstein distance on the modular surface: cost matrices, the exact
//! transportation simplex, log-domain Sinkhorn and Kantorovich–Rubinstein
//! lower bounds.

mod cost;
mod dual;
mod simplex;
mod sinkhorn;

pub use cost::{cost_matrix, CostMatrix, MAX_COST_ENTRIES};
pub use dual::{clipped_distance_family, dual_lower_bound, best_dual_lower_bound, LipschitzFunction};
pub use simplex::{solve_transport, w1_exact, TransportPlan, MAX_EXACT_SUPPORT};
pub use sinkhorn::{sinkhorn_plan, w1_sinkhorn, SinkhornResult};
