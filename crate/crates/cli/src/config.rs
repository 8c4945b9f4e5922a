use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Suites in their canonical order.
pub const SUITES: [&str; 9] = [
    "lie-structure",
    "frame-change",
    "wedge-decomp",
    "eta-basis",
    "section6-forms",
    "closedness",
    "ad-pullback",
    "uea-identities",
    "period-reduction",
];

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid config {path}: {msg}")]
    Parse { path: String, msg: String },
    #[error("unknown suite `{0}` (known: {list})", list = SUITES.join(", "))]
    UnknownSuite(String),
    #[error("invalid setting: {0}")]
    Invalid(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteConfig {
    pub suites: Vec<String>,
    pub out: Option<PathBuf>,
    pub verbosity: u8,
    /// Total degree bound for the period-reduction comparison.
    pub max_degree: usize,
    /// Largest word length in the confluence samples.
    pub pbw_word_len: usize,
    pub pbw_samples: usize,
    /// Commutation identities are checked for `i = 1..=commutation_max`.
    pub commutation_max: u32,
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            suites: Vec::new(),
            out: None,
            verbosity: 0,
            max_degree: 6,
            pbw_word_len: 5,
            pbw_samples: 200,
            commutation_max: 5,
            seed: 0x5eed,
        }
    }
}

impl SuiteConfig {
    /// Every suite with default knobs.
    pub fn full() -> Self {
        SuiteConfig { suites: SUITES.iter().map(|s| s.to_string()).collect(), ..Default::default() }
    }

    pub fn with_suites(suites: &[&str]) -> Self {
        SuiteConfig { suites: suites.iter().map(|s| s.to_string()).collect(), ..Default::default() }
    }

    /// JSON, or TOML when the extension is `.toml`.
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let p = path.display().to_string();
        let text = fs::read_to_string(path).map_err(|source| ConfigError::Io { path: p.clone(), source })?;
        let cfg: SuiteConfig = if path.extension().is_some_and(|e| e == "toml") {
            toml::from_str(&text).map_err(|e| ConfigError::Parse { path: p.clone(), msg: e.to_string() })?
        } else {
            serde_json::from_str(&text).map_err(|e| ConfigError::Parse { path: p.clone(), msg: e.to_string() })?
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if let Some(bad) = self.suites.iter().find(|s| !SUITES.contains(&s.as_str())) {
            return Err(ConfigError::UnknownSuite(bad.clone()));
        }
        if self.max_degree > 10 {
            return Err(ConfigError::Invalid(format!("max_degree {} is above 10", self.max_degree)));
        }
        if self.commutation_max == 0 {
            return Err(ConfigError::Invalid("commutation_max must be at least 1".into()));
        }
        Ok(())
    }

    /// Suites in canonical order, duplicates removed.
    pub fn ordered_suites(&self) -> Vec<&'static str> {
        SUITES.iter().copied().filter(|s| self.suites.iter().any(|x| x == s)).collect()
    }
}
