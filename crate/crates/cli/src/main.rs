use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use modular_w1_cli::commands::{self, Context};
use modular_w1_cli::config::{ConfigError, ExperimentConfig};
use modular_w1_cli::report::Report;

/// Numerical experiments on Wasserstein distances between probability
/// measures on the modular surface.
///
/// Each subcommand writes a CSV table (or JSON with --json) to --out or
/// stdout and a PASS/FAIL summary to stderr. Exit status: 0 when every check
/// passes, 1 when a check fails, 2 on configuration or input errors.
#[derive(Debug, Parser)]
#[command(name = "modw1", version)]
struct Cli {
    /// TOML configuration; every key is optional.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output file for the table (default: stdout, or `output` from the config).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Emit JSON instead of CSV.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for sampled points (overrides the config).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Cuspidal spectral data, rows `t_f diff_sq` (overrides the config).
    #[arg(long, global = true)]
    maass_data: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Transform identities of the point-pair kernel.
    ///
    /// Columns: T, check, arg, value, target, error, tolerance, pass.
    TransformCheck,
    /// Total mass of the automorphic kernel at the configured base points.
    ///
    /// Columns: x, y, T, mass, error_bound, cusp_tail, truncated, pass.
    KernelMass,
    /// Heegner points of the negative configured discriminants.
    ///
    /// Columns: D, class_number, x, y, weight.
    Heegner,
    /// Closed geodesics of the positive configured discriminants.
    ///
    /// Columns: D, form, t, u, length, left, right, samples.
    Geodesics,
    /// Form enumeration against the class number formula.
    ///
    /// Columns: D, h_forms, h_formula, error, pass.
    ClassNumber,
    /// Empirical Weyl sums against their closed form.
    ///
    /// Columns: D, t, empirical_sq, exact_sq, ratio, tolerance, status.
    WeylCompare,
    /// W1 between Heegner measures and the Haar measure as |D| grows.
    ///
    /// Columns: D, class_number, T_used, W1_estimate, discretization_bound,
    /// dual_lower_bound, berry_esseen_total, eisenstein_term, cuspidal_term, partial.
    Duke,
    /// Smoothing bounds for clipped distance functions.
    ///
    /// Columns: function, eps, x, y, F, F_eps, diff, grad_sq, grad_bound, pass.
    MollifyCheck,
    /// Exact W1 between two measure tables (`x y weight` rows).
    ///
    /// Columns: method, value, marginal_error, atoms_1, atoms_2.
    Wasserstein {
        first: PathBuf,
        second: PathBuf,
        /// Also run entropic transport with this regularization.
        #[arg(long)]
        sinkhorn_reg: Option<f64>,
        /// Write the optimal plan as `i j mass` rows.
        #[arg(long)]
        plan: Option<PathBuf>,
    },
}

enum Failure {
    Config(anyhow::Error),
    Run(anyhow::Error),
}

fn load_config(cli: &Cli) -> Result<ExperimentConfig, ConfigError> {
    match &cli.config {
        Some(p) => ExperimentConfig::load(p),
        None => Ok(ExperimentConfig::default()),
    }
}

fn run(cli: Cli) -> Result<Report, Failure> {
    let cfg = load_config(&cli).map_err(|e| Failure::Config(e.into()))?;
    let seed = cli.seed.unwrap_or(cfg.seed);
    let maass = cli.maass_data.as_ref().or(cfg.maass_data.as_ref());
    let ctx = Context::new(seed, maass).map_err(Failure::Config)?;
    let report = match &cli.command {
        Command::TransformCheck => commands::transform::run(&cfg),
        Command::KernelMass => commands::kernel::run(&cfg),
        Command::Heegner => commands::arithmetic::heegner(&cfg),
        Command::Geodesics => commands::arithmetic::geodesics(&cfg),
        Command::ClassNumber => commands::arithmetic::class_number(&cfg),
        Command::WeylCompare => commands::weyl::run(&cfg),
        Command::Duke => commands::duke::run(&cfg, &ctx),
        Command::MollifyCheck => commands::mollify::run(&cfg, &ctx),
        Command::Wasserstein {
            first,
            second,
            sinkhorn_reg,
            plan,
        } => {
            if let Some(reg) = sinkhorn_reg {
                if reg.is_nan() || *reg <= 0.0 {
                    return Err(Failure::Config(anyhow::anyhow!(
                        "--sinkhorn-reg must be positive"
                    )));
                }
            }
            commands::wasserstein::run(&cfg, first, second, *sinkhorn_reg, plan.as_deref())
        }
    }
    .map_err(Failure::Run)?;
    let out = cli.out.clone().or(cfg.output.clone());
    emit(&report, out, cli.json).map_err(|e| Failure::Run(e.into()))?;
    Ok(report)
}

fn emit(report: &Report, out: Option<PathBuf>, json: bool) -> io::Result<()> {
    let mut w: Box<dyn Write> = match out {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    if json {
        report.write_json(&mut w)?;
    } else {
        report.write_csv(&mut w)?;
    }
    w.flush()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(report) => {
            let _ = report.write_summary(io::stderr().lock());
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Config(e)) => {
            eprintln!("configuration error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Run(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
