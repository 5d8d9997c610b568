use std::path::{Path, PathBuf};
use std::time::Duration;

use serde::Deserialize;
use thiserror::Error;

use qbra_core::advisor::{Advisor, AdvisorConfig, AdvisorError, DEFAULT_DELTA};
use qbra_core::fixtures;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("invalid config file: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("invalid value for {var}: '{value}'")]
    Env { var: &'static str, value: String },
    #[error("delta must lie in [0, 1], got {0}")]
    Delta(f64),
    #[error(transparent)]
    Advisor(#[from] AdvisorError),
}

/// Service settings. Unset fixture paths fall back to the bundled samples.
#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ServiceConfig {
    pub bpm_path: Option<PathBuf>,
    pub problem_db_path: Option<PathBuf>,
    pub embeddings_path: Option<PathBuf>,
    pub delta: f64,
    pub bind_address: String,
    /// Idle time after which a session is evicted, in seconds.
    pub session_ttl_secs: u64,
}

impl Default for ServiceConfig {
    fn default() -> Self {
        ServiceConfig {
            bpm_path: None,
            problem_db_path: None,
            embeddings_path: None,
            delta: DEFAULT_DELTA,
            bind_address: "127.0.0.1:8080".into(),
            session_ttl_secs: 1800,
        }
    }
}

fn read(path: &Path) -> Result<String, ConfigError> {
    std::fs::read_to_string(path).map_err(|source| ConfigError::Io { path: path.to_path_buf(), source })
}

impl ServiceConfig {
    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        let cfg: ServiceConfig = toml::from_str(text)?;
        cfg.validate()
    }

    /// Optional config file, then `QBRA_*` environment overrides.
    pub fn load(file: Option<&Path>) -> Result<Self, ConfigError> {
        let cfg = match file {
            Some(path) => ServiceConfig::from_toml(&read(path)?)?,
            None => ServiceConfig::default(),
        };
        cfg.with_env(|key| std::env::var(key).ok())
    }

    pub fn with_env(mut self, var: impl Fn(&str) -> Option<String>) -> Result<Self, ConfigError> {
        if let Some(v) = var("QBRA_BPM") {
            self.bpm_path = Some(v.into());
        }
        if let Some(v) = var("QBRA_DB") {
            self.problem_db_path = Some(v.into());
        }
        if let Some(v) = var("QBRA_EMBEDDINGS") {
            self.embeddings_path = Some(v.into());
        }
        if let Some(v) = var("QBRA_DELTA") {
            self.delta = v.parse().map_err(|_| ConfigError::Env { var: "QBRA_DELTA", value: v })?;
        }
        if let Some(v) = var("QBRA_BIND") {
            self.bind_address = v;
        }
        self.validate()
    }

    fn validate(self) -> Result<Self, ConfigError> {
        if !(0.0..=1.0).contains(&self.delta) {
            return Err(ConfigError::Delta(self.delta));
        }
        Ok(self)
    }

    pub fn session_ttl(&self) -> Duration {
        Duration::from_secs(self.session_ttl_secs)
    }

    /// Read and validate the fixtures named by this config.
    pub fn load_advisor(&self) -> Result<Advisor, ConfigError> {
        let source = |path: &Option<PathBuf>, bundled: &str| match path {
            Some(p) => read(p),
            None => Ok(bundled.to_string()),
        };
        let bpm = source(&self.bpm_path, fixtures::BPM)?;
        let db = source(&self.problem_db_path, fixtures::PROBLEMS)?;
        let emb = source(&self.embeddings_path, fixtures::EMBEDDINGS)?;
        let config = AdvisorConfig { delta: self.delta, ..Default::default() };
        Ok(Advisor::from_sources(&bpm, &db, &emb, config)?)
    }
}
