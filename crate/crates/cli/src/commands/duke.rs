use modular_w1::arithmetic::{
    discretization_bound, haar_discretization, heegner_measure, Discriminant,
};
use modular_w1::eisenstein::{berry_esseen_from_profiles, EisensteinParams, WeylProfile};
use modular_w1::hypgeo::Point;
use modular_w1::transport::{best_dual_lower_bound, clipped_distance_family, w1_exact};

use super::Context;
use crate::config::ExperimentConfig;
use crate::report::{cell, num, Report};

const COLUMNS: &[&str] = &[
    "D",
    "class_number",
    "T_used",
    "W1_estimate",
    "discretization_bound",
    "dual_lower_bound",
    "berry_esseen_total",
    "eisenstein_term",
    "cuspidal_term",
    "partial",
];

/// Bandwidth for discriminant `d`: the configured one, or `max(1, |D|^{1/12})`.
pub fn bandwidth_for(cfg: &ExperimentConfig, d: i64) -> f64 {
    cfg.duke
        .bandwidth
        .unwrap_or_else(|| (d.unsigned_abs() as f64).powf(1.0 / 12.0).max(1.0))
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn log_log_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let (lx, ly): (Vec<f64>, Vec<f64>) = points.iter().map(|&(x, y)| (x.ln(), y.ln())).unzip();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// `W1(nu_D, Haar)` along the configured discriminants, with the
/// Berry–Esseen right-hand side for comparison.
pub fn run(cfg: &ExperimentConfig, ctx: &Context) -> anyhow::Result<Report> {
    let grid = cfg.haar.grid();
    let haar = haar_discretization(grid)?;
    let disc_bound = discretization_bound(grid)?;
    let sites: Vec<Point> = cfg
        .duke
        .sites
        .iter()
        .map(|&[x, y]| Point::new(x, y))
        .collect::<Result<_, _>>()?;
    let family = clipped_distance_family(&sites);

    let t_top = cfg
        .duke
        .discriminants
        .iter()
        .map(|&d| bandwidth_for(cfg, d))
        .fold(1.0, f64::max);
    let p = EisensteinParams {
        geodesic_rate: cfg.geodesic.rate,
        ..EisensteinParams::for_bandwidth(t_top)?
    };
    let haar_profile = WeylProfile::new(&haar, &p)?;

    let mut r = Report::new("duke", COLUMNS);
    let mut series = Vec::new();
    for &d in &cfg.duke.discriminants {
        let nu = heegner_measure(Discriminant::new(d)?)?;
        let t = bandwidth_for(cfg, d);
        let w1 = w1_exact(&nu, &haar)?.value;
        let (dual, _) = best_dual_lower_bound(&nu, &haar, &family);
        let be = berry_esseen_from_profiles(
            &WeylProfile::new(&nu, &p)?,
            &haar_profile,
            t,
            ctx.maass_data.as_ref(),
        )?;
        r.row(vec![
            cell(d),
            cell(nu.len()),
            num(t),
            num(w1),
            num(disc_bound),
            num(dual),
            num(be.total),
            num(be.eisenstein_term),
            num(be.cuspidal_term),
            cell(be.partial),
        ]);
        r.check(
            format!("D={d} W1 positive and finite"),
            w1 > 0.0 && w1.is_finite(),
            format!("W1 = {w1}"),
        );
        r.check(
            format!("D={d} W1 above dual lower bound"),
            w1 >= dual - 1e-12,
            format!("{w1} >= {dual}"),
        );
        if be.truncated {
            r.note(format!(
                "D={d}: Eisenstein Fourier expansion flagged as truncated"
            ));
        }
        series.push((d.unsigned_abs() as f64, w1));
    }
    if series.len() >= 2 {
        let slope = log_log_slope(&series);
        r.check(
            "W1 decreases with |D| (log-log slope < 0)",
            slope < 0.0,
            format!("slope {slope:.4}"),
        );
        r.note(format!("fitted log-log slope of W1 against |D|: {slope}"));
    }
    r.note(format!(
        "W1 is measured against a {}-atom Haar discretization; the distance to the true Haar measure \
         differs by at most discretization_bound",
        haar.len()
    ));
    if ctx.maass_data.is_none() {
        r.note(
            "WARNING: no cuspidal data supplied (--maass-data); berry_esseen_total omits the Maass form \
             contribution and is NOT an upper bound",
        );
    }
    Ok(r)
}
