//! One module per subcommand. Each builds a [`Report`](crate::report::Report)
//! from a validated configuration.

pub mod arithmetic;
pub mod duke;
pub mod kernel;
pub mod mollify;
pub mod transform;
pub mod wasserstein;
pub mod weyl;

use std::path::PathBuf;

use modular_w1::eisenstein::MaassData;

/// Per-invocation inputs that are not part of the configuration file.
#[derive(Debug, Clone, Default)]
pub struct Context {
    pub seed: u64,
    pub maass_data: Option<MaassData>,
}

impl Context {
    /// Loads the optional cuspidal data file.
    pub fn new(seed: u64, maass_data: Option<&PathBuf>) -> anyhow::Result<Self> {
        let maass_data = match maass_data {
            Some(p) => {
                Some(MaassData::load(p).map_err(|e| anyhow::anyhow!("{}: {e}", p.display()))?)
            }
            None => None,
        };
        Ok(Self { seed, maass_data })
    }
}
