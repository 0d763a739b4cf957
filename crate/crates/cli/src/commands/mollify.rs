use modular_w1::hypgeo::Point;
use modular_w1::transform::{smooth, smooth_gradient_sq, MollifierParams, SmoothingQuadrature};
use modular_w1::transport::LipschitzFunction;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Context;
use crate::config::ExperimentConfig;
use crate::report::{cell, num, Report};

const COLUMNS: &[&str] = &[
    "function",
    "eps",
    "x",
    "y",
    "F",
    "F_eps",
    "diff",
    "grad_sq",
    "grad_bound",
    "pass",
];

/// Uniform in `x`, then uniform in `y` above the unit circle up to height 3.
pub fn sample_points(n: usize, seed: u64) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let x: f64 = rng.gen_range(-0.5..0.5);
            let lo = (1.0 - x * x).sqrt();
            Point {
                x,
                y: rng.gen_range(lo..3.0),
            }
        })
        .collect()
}

/// Sup-norm and gradient bounds of the smoothed clipped-distance functions.
pub fn run(cfg: &ExperimentConfig, ctx: &Context) -> anyhow::Result<Report> {
    let mc = &cfg.mollify;
    let points = sample_points(mc.samples, ctx.seed);
    let mut r = Report::new("mollify-check", COLUMNS);
    for &eps in &mc.epsilons {
        let m = MollifierParams::new(eps)?;
        let q = SmoothingQuadrature::for_epsilon(eps);
        let bound = (eps.exp() - 0.5).powi(2) + cfg.tolerances.gradient_slack;
        for &[sx, sy, radius] in &mc.functions {
            let f = LipschitzFunction::clipped_distance(Point::new(sx, sy)?, radius);
            let mut worst_diff = 0.0f64;
            let mut worst_grad = 0.0f64;
            let mut ok_all = true;
            for &z in &points {
                let fz = f.eval(z);
                let fe = smooth(&f, &m, z, &q);
                let g = smooth_gradient_sq(&f, &m, z, &q, mc.step);
                let diff = (fe - fz).abs();
                let ok = diff <= eps && g <= bound;
                ok_all &= ok;
                worst_diff = worst_diff.max(diff);
                worst_grad = worst_grad.max(g);
                r.row(vec![
                    cell(f.name()),
                    num(eps),
                    num(z.x),
                    num(z.y),
                    num(fz),
                    num(fe),
                    num(diff),
                    num(g),
                    num(bound),
                    cell(ok),
                ]);
            }
            r.check(
                format!(
                    "eps={eps} {}: |F - F_eps| <= eps and gradient bound",
                    f.name()
                ),
                ok_all,
                format!("max diff {worst_diff:e}, max grad_sq {worst_grad:.6} vs {bound:.6}"),
            );
        }
        let c = LipschitzFunction::constant(2.5);
        let err = points
            .iter()
            .map(|&z| (smooth(&c, &m, z, &q) - 2.5).abs())
            .fold(0.0, f64::max);
        r.check(
            format!("eps={eps} constants reproduced"),
            err <= 1e-12,
            format!("max error {err:e}"),
        );
    }
    Ok(r)
}
