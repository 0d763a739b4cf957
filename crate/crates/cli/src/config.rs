//! Experiment configuration, read from a TOML file with one table per
//! subcommand. Every key is optional; missing keys take the defaults below.

use std::path::{Path, PathBuf};

use modular_w1::arithmetic::{is_fundamental, HaarGrid};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("malformed config: {0}")]
    Parse(#[from] toml::de::Error),
    #[error("invalid config: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    /// Bandwidth `T` for single-bandwidth checks.
    pub bandwidth: f64,
    pub seed: u64,
    pub output: Option<PathBuf>,
    pub maass_data: Option<PathBuf>,
    pub haar: HaarConfig,
    pub geodesic: GeodesicConfig,
    pub tolerances: Tolerances,
    pub transform: TransformConfig,
    pub kernel_mass: KernelMassConfig,
    pub arithmetic: ArithmeticConfig,
    pub weyl: WeylConfig,
    pub duke: DukeConfig,
    pub mollify: MollifyConfig,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct HaarConfig {
    pub n_x: usize,
    pub n_levels: usize,
    pub y_max: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GeodesicConfig {
    /// Samples per unit hyperbolic length.
    pub rate: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    pub kernel_integral: f64,
    pub forward_transform: f64,
    pub route_agreement: f64,
    pub moment_slack: f64,
    pub kernel_mass: f64,
    pub class_number: f64,
    pub weyl: f64,
    pub weyl_geodesic: f64,
    pub gradient_slack: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TransformConfig {
    pub bandwidths: Vec<f64>,
    pub t_values: Vec<f64>,
    pub route_u: Vec<f64>,
    pub grid_points: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct KernelMassConfig {
    /// Base points `[x, y]`.
    pub points: Vec<[f64; 2]>,
    pub cusp_height: f64,
    pub x_nodes: usize,
    pub nodes_per_panel: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ArithmeticConfig {
    /// Discriminants for `heegner` and `geodesics`.
    pub discriminants: Vec<i64>,
    /// Inclusive range swept by `class-number`.
    pub class_number_range: [i64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct WeylConfig {
    pub discriminants: Vec<i64>,
    pub t_values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DukeConfig {
    pub discriminants: Vec<i64>,
    /// Fixed bandwidth; when absent `T = max(1, |D|^{1/12})`.
    pub bandwidth: Option<f64>,
    /// Sites of the clipped-distance family for dual lower bounds.
    pub sites: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MollifyConfig {
    pub epsilons: Vec<f64>,
    pub samples: usize,
    /// Test functions `min(d(., site), radius)` as `[x, y, radius]`.
    pub functions: Vec<[f64; 3]>,
    pub step: f64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            bandwidth: 1.0,
            seed: 0,
            output: None,
            maass_data: None,
            haar: HaarConfig::default(),
            geodesic: GeodesicConfig::default(),
            tolerances: Tolerances::default(),
            transform: TransformConfig::default(),
            kernel_mass: KernelMassConfig::default(),
            arithmetic: ArithmeticConfig::default(),
            weyl: WeylConfig::default(),
            duke: DukeConfig::default(),
            mollify: MollifyConfig::default(),
        }
    }
}

impl Default for HaarConfig {
    fn default() -> Self {
        let g = HaarGrid::default();
        Self {
            n_x: g.n_x,
            n_levels: g.n_levels,
            y_max: g.y_max,
        }
    }
}

impl Default for GeodesicConfig {
    fn default() -> Self {
        Self { rate: 32 }
    }
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            kernel_integral: 1e-5,
            forward_transform: 1e-4,
            route_agreement: 1e-6,
            moment_slack: 0.05,
            kernel_mass: 1e-3,
            class_number: 1e-6,
            weyl: 1e-3,
            weyl_geodesic: 5e-3,
            gradient_slack: 1e-3,
        }
    }
}

impl Default for TransformConfig {
    fn default() -> Self {
        Self {
            bandwidths: vec![1.0],
            t_values: vec![0.0, 1.0, 5.0, 10.0],
            route_u: vec![0.01, 0.1, 1.0],
            grid_points: 200,
        }
    }
}

impl Default for KernelMassConfig {
    fn default() -> Self {
        Self {
            points: vec![[0.0, 1.0], [0.5, 2.0], [0.3, 0.9]],
            cusp_height: 50.0,
            x_nodes: 32,
            nodes_per_panel: 12,
        }
    }
}

impl Default for ArithmeticConfig {
    fn default() -> Self {
        Self {
            discriminants: vec![-3, -4, -7, -23, 5, 8, 13],
            class_number_range: [-200, -3],
        }
    }
}

impl Default for WeylConfig {
    fn default() -> Self {
        Self {
            discriminants: vec![-7, -8, -11, -15, -20, -23, -24],
            t_values: vec![0.5, 1.0, 2.0],
        }
    }
}

impl Default for DukeConfig {
    fn default() -> Self {
        Self {
            discriminants: vec![-4, -8, -11, -19, -43, -67, -163],
            bandwidth: None,
            sites: vec![
                [0.0, 1.0],
                [-0.5, 0.866_025_403_784_438_6],
                [0.0, 2.0],
                [0.0, 4.0],
                [0.25, 1.5],
            ],
        }
    }
}

impl Default for MollifyConfig {
    fn default() -> Self {
        Self {
            epsilons: vec![0.05, 0.2],
            samples: 50,
            functions: vec![[0.0, 2.0, 3.0]],
            step: 1e-4,
        }
    }
}

impl HaarConfig {
    pub fn grid(&self) -> HaarGrid {
        HaarGrid {
            n_x: self.n_x,
            n_levels: self.n_levels,
            y_max: self.y_max,
        }
    }
}

fn invalid(msg: impl Into<String>) -> ConfigError {
    ConfigError::Invalid(msg.into())
}

fn check_bandwidth(t: f64, what: &str) -> Result<(), ConfigError> {
    if !(t >= 1.0) || !t.is_finite() {
        return Err(invalid(format!("{what} = {t} must be >= 1")));
    }
    Ok(())
}

fn check_discriminants(ds: &[i64], what: &str) -> Result<(), ConfigError> {
    match ds.iter().find(|&&d| !is_fundamental(d)) {
        Some(d) => Err(invalid(format!(
            "{what}: {d} is not a fundamental discriminant"
        ))),
        None => Ok(()),
    }
}

fn check_point(p: [f64; 2], what: &str) -> Result<(), ConfigError> {
    if !(p[1] > 0.0) || !p[0].is_finite() || !p[1].is_finite() {
        return Err(invalid(format!(
            "{what}: ({}, {}) is not in the upper half-plane",
            p[0], p[1]
        )));
    }
    Ok(())
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Read {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let cfg: Self = toml::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        check_bandwidth(self.bandwidth, "bandwidth")?;
        for &t in &self.transform.bandwidths {
            check_bandwidth(t, "transform.bandwidths")?;
        }
        if let Some(t) = self.duke.bandwidth {
            check_bandwidth(t, "duke.bandwidth")?;
        }
        let tol = &self.tolerances;
        let all = [
            tol.kernel_integral,
            tol.forward_transform,
            tol.route_agreement,
            tol.moment_slack,
            tol.kernel_mass,
            tol.class_number,
            tol.weyl,
            tol.weyl_geodesic,
            tol.gradient_slack,
        ];
        if all.iter().any(|&x| !(x > 0.0) || !x.is_finite()) {
            return Err(invalid("all tolerances must be positive"));
        }
        check_discriminants(&self.arithmetic.discriminants, "arithmetic.discriminants")?;
        check_discriminants(&self.weyl.discriminants, "weyl.discriminants")?;
        check_discriminants(&self.duke.discriminants, "duke.discriminants")?;
        if let Some(&d) = self.duke.discriminants.iter().find(|&&d| d > 0) {
            return Err(invalid(format!(
                "duke.discriminants: {d} > 0; Heegner points need D < 0"
            )));
        }
        let [lo, hi] = self.arithmetic.class_number_range;
        if lo > hi {
            return Err(invalid("class_number_range must be increasing"));
        }
        let h = &self.haar;
        if h.n_x == 0 || h.n_levels == 0 || !(h.y_max >= 2.0) {
            return Err(invalid("haar grid needs n_x, n_levels >= 1 and y_max >= 2"));
        }
        if self.geodesic.rate == 0 {
            return Err(invalid("geodesic.rate must be positive"));
        }
        if self
            .weyl
            .t_values
            .iter()
            .any(|t| !(t.abs() >= 1e-6) || !t.is_finite())
        {
            return Err(invalid("weyl.t_values must avoid |t| < 1e-6"));
        }
        for &p in &self.kernel_mass.points {
            check_point(p, "kernel_mass.points")?;
        }
        for &p in &self.duke.sites {
            check_point(p, "duke.sites")?;
        }
        let km = &self.kernel_mass;
        if !(km.cusp_height >= 2.0) || km.x_nodes < 2 || km.nodes_per_panel < 2 {
            return Err(invalid(
                "kernel_mass needs cusp_height >= 2 and at least 2 nodes",
            ));
        }
        let m = &self.mollify;
        if m.epsilons.iter().any(|&e| !(e > 0.0)) || !(m.step > 0.0) {
            return Err(invalid(
                "mollify.epsilons and mollify.step must be positive",
            ));
        }
        for f in &m.functions {
            check_point([f[0], f[1]], "mollify.functions")?;
            if !(f[2] > 0.0) {
                return Err(invalid("mollify.functions radius must be positive"));
            }
        }
        if self.transform.grid_points < 2 {
            return Err(invalid("transform.grid_points must be >= 2"));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file_gives_defaults() {
        assert_eq!(
            ExperimentConfig::parse("").unwrap(),
            ExperimentConfig::default()
        );
    }

    #[test]
    fn rejects_bad_values() {
        assert!(ExperimentConfig::parse("bandwidth = 0.5").is_err());
        assert!(ExperimentConfig::parse("[weyl]\ndiscriminants = [-12]").is_err());
        assert!(ExperimentConfig::parse("[tolerances]\nweyl = -1.0").is_err());
        assert!(ExperimentConfig::parse("bandwith = 2.0").is_err());
    }

    #[test]
    fn sections_override_defaults() {
        let c = ExperimentConfig::parse("seed = 4\n[haar]\nn_x = 10\n").unwrap();
        assert_eq!(c.seed, 4);
        assert_eq!(c.haar.n_x, 10);
        assert_eq!(c.haar.n_levels, 40);
    }
}
