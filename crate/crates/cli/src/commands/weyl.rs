use modular_w1::arithmetic::Discriminant;
use modular_w1::eisenstein::{weyl_compare, EisensteinParams};

use crate::config::ExperimentConfig;
use crate::report::{cell, num, Report};

const COLUMNS: &[&str] = &[
    "D",
    "t",
    "empirical_sq",
    "exact_sq",
    "ratio",
    "tolerance",
    "status",
];

/// Empirical squared Weyl sums of `nu_D` against the closed form.
///
/// `D = -3, -4` are recorded but excluded from pass/fail; their ratios are
/// checked for constancy in `t` instead.
pub fn run(cfg: &ExperimentConfig) -> anyhow::Result<Report> {
    let p = EisensteinParams {
        geodesic_rate: cfg.geodesic.rate,
        ..EisensteinParams::default()
    };
    let mut r = Report::new("weyl-compare", COLUMNS);
    for &d in &cfg.weyl.discriminants {
        let disc = Discriminant::new(d)?;
        let tol = if d > 0 {
            cfg.tolerances.weyl_geodesic
        } else {
            cfg.tolerances.weyl
        };
        let recorded = d == -3 || d == -4;
        let mut ratios = Vec::new();
        for &t in &cfg.weyl.t_values {
            let c = weyl_compare(disc, t, &p)?;
            let ok = (c.ratio - 1.0).abs() <= tol && !c.truncated;
            let status = if recorded {
                "recorded"
            } else if ok {
                "pass"
            } else {
                "fail"
            };
            r.row(vec![
                cell(d),
                num(t),
                num(c.empirical_sq),
                num(c.exact_sq),
                num(c.ratio),
                num(tol),
                cell(status),
            ]);
            if !recorded {
                r.check(
                    format!("Weyl identity D={d} t={t}"),
                    ok,
                    format!("ratio {}", c.ratio),
                );
            }
            ratios.push(c.ratio);
        }
        if recorded && !ratios.is_empty() {
            let spread = ratios
                .iter()
                .fold(0.0f64, |m, x| m.max((x - ratios[0]).abs()));
            r.note(format!(
                "D={d}: ratio {} (spread across t {spread:e}); constant offset {}",
                ratios[0],
                ratios[0] - 1.0
            ));
        }
    }
    Ok(r)
}
