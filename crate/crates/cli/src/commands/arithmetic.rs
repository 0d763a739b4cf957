use modular_w1::arithmetic::*;

use crate::config::ExperimentConfig;
use crate::report::{cell, num, Report};

/// Heegner points of every negative configured discriminant.
pub fn heegner(cfg: &ExperimentConfig) -> anyhow::Result<Report> {
    let mut r = Report::new("heegner", &["D", "class_number", "x", "y", "weight"]);
    for &d in cfg.arithmetic.discriminants.iter().filter(|&&d| d < 0) {
        let m = heegner_measure(Discriminant::new(d)?)?;
        for a in m.atoms() {
            r.row(vec![
                cell(d),
                cell(m.len()),
                num(a.point.x()),
                num(a.point.y()),
                num(a.weight),
            ]);
        }
    }
    Ok(r)
}

/// Closed geodesics of every positive configured discriminant.
pub fn geodesics(cfg: &ExperimentConfig) -> anyhow::Result<Report> {
    let cols = ["D", "form", "t", "u", "length", "left", "right", "samples"];
    let mut r = Report::new("geodesics", &cols);
    for &d in cfg.arithmetic.discriminants.iter().filter(|&&d| d > 0) {
        for g in closed_geodesics(Discriminant::new(d)?)? {
            let samples = (g.length * cfg.geodesic.rate as f64).ceil() as usize;
            r.row(vec![
                cell(d),
                cell(g.form.to_string()),
                cell(g.pell.0),
                cell(g.pell.1),
                num(g.length),
                num(g.endpoints.0),
                num(g.endpoints.1),
                cell(samples),
            ]);
        }
    }
    Ok(r)
}

/// Form enumeration against the analytic class number formula.
pub fn class_number(cfg: &ExperimentConfig) -> anyhow::Result<Report> {
    let tol = cfg.tolerances.class_number;
    let mut r = Report::new(
        "class-number",
        &["D", "h_forms", "h_formula", "error", "pass"],
    );
    let [lo, hi] = cfg.arithmetic.class_number_range;
    let mut failures = Vec::new();
    let mut count = 0;
    for d in lo..=hi {
        if !is_fundamental(d) {
            continue;
        }
        let disc = Discriminant::new(d)?;
        let h = modular_w1::arithmetic::class_number(disc)?;
        let formula = class_number_formula(disc)?;
        let err = (formula - h as f64).abs();
        let ok = err <= tol;
        if !ok {
            failures.push(d);
        }
        count += 1;
        r.row(vec![cell(d), cell(h), num(formula), num(err), cell(ok)]);
    }
    r.check(
        format!("class number formula for {count} discriminants in [{lo}, {hi}]"),
        failures.is_empty(),
        if failures.is_empty() {
            format!("all within {tol:e}")
        } else {
            format!("mismatch at {failures:?}")
        },
    );
    Ok(r)
}
