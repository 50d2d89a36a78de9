//! Optional TOML run configuration. Command-line flags take precedence.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::verification::RemoteConfig;

use super::CliError;

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub workers: Option<usize>,
    pub seed: Option<u64>,
    pub catalogue: Option<PathBuf>,
    pub gazetteer: Option<PathBuf>,
    pub mine: MineConfig,
    pub verify: VerifyConfig,
    pub rewrite: RewriteConfig,
    pub metrics: MetricsConfig,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MineConfig {
    pub affixes: Option<Vec<String>>,
    pub checkpoint_mb: Option<u64>,
    pub known_words: Option<PathBuf>,
    pub names: Option<PathBuf>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VerifyConfig {
    pub cache: Option<PathBuf>,
    pub offline: Option<PathBuf>,
    pub remote: Option<bool>,
    pub dictionary: RemoteConfig,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RewriteConfig {
    pub mode: Option<String>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MetricsConfig {
    pub lexicon: Option<PathBuf>,
    pub model: Option<String>,
}

impl Config {
    /// Parses a config; relative paths are resolved against `base_dir`.
    pub fn parse(text: &str, base_dir: &Path) -> Result<Self, toml::de::Error> {
        let mut cfg: Config = toml::from_str(text)?;
        let fix = |p: &mut Option<PathBuf>| {
            if let Some(path) = p {
                if path.is_relative() {
                    *path = base_dir.join(&*path);
                }
            }
        };
        fix(&mut cfg.catalogue);
        fix(&mut cfg.gazetteer);
        fix(&mut cfg.mine.known_words);
        fix(&mut cfg.mine.names);
        fix(&mut cfg.verify.cache);
        fix(&mut cfg.verify.offline);
        fix(&mut cfg.metrics.lexicon);
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
        let base = path.parent().unwrap_or(Path::new("."));
        Self::parse(&text, base)
            .map_err(|e| CliError::Usage(format!("config {}: {e}", path.display())))
    }
}
