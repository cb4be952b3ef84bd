//! TOML run configuration.
//!
//! ```toml
//! seed = 7                  # RNG seed for random draws (default 0)
//! trials = 20               # random draws per check (default 20)
//! max_group_order = 100000  # closure cap (default 100000)
//! timings = false           # add wall_ms to each check record
//! checks = ["all"]          # structure, character-identity, norms,
//!                           # lemmas, pfister, dihedral, all
//! catalog = false           # include the built-in catalog of groups
//! e = ["1", "3/2", "2"]     # optional split parameters for pfister
//!
//! [[families]]
//! kind = "hyperoctahedral"
//! n = 3
//!
//! [[families]]
//! kind = "iota-times-g0"
//! degree = 3
//! generators = [[2, 3, 1]]
//!
//! [[families]]
//! kind = "dihedral"
//! n = 4
//!
//! [[families]]
//! kind = "file"
//! path = "groups/b2.gens"
//! ```

use std::path::Path;

use serde::Deserialize;

use crate::catalog::{catalog, FamilySpec};
use crate::error::{Error, Result};
use crate::signed_perm::DEFAULT_MAX_ORDER;

pub const DEFAULT_TRIALS: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default = "default_max_order")]
    pub max_group_order: usize,
    #[serde(default)]
    pub timings: bool,
    #[serde(default)]
    pub checks: Vec<String>,
    #[serde(default)]
    pub catalog: bool,
    #[serde(default)]
    pub e: Option<Vec<String>>,
    #[serde(default)]
    pub families: Vec<FamilySpec>,
}

fn default_trials() -> usize {
    DEFAULT_TRIALS
}

fn default_max_order() -> usize {
    DEFAULT_MAX_ORDER
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 0,
            trials: DEFAULT_TRIALS,
            max_group_order: DEFAULT_MAX_ORDER,
            timings: false,
            checks: Vec::new(),
            catalog: false,
            e: None,
            families: Vec::new(),
        }
    }
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::input(format!("config: {e}")))
    }

    /// Reads a config file; relative `file` paths are resolved against the
    /// config's directory.
    pub fn load(path: &Path) -> Result<Self> {
        let text =
            std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        let mut cfg = Self::parse(&text)?;
        if let Some(dir) = path.parent() {
            for f in &mut cfg.families {
                if let FamilySpec::File { path } = f {
                    if path.is_relative() {
                        *path = dir.join(&*path);
                    }
                }
            }
        }
        Ok(cfg)
    }

    /// Families in run order: the catalog first (if enabled), then the listed ones.
    pub fn all_families(&self) -> Vec<FamilySpec> {
        let mut out = if self.catalog { catalog() } else { Vec::new() };
        out.extend(self.families.iter().cloned());
        out
    }
}
