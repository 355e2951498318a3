use std::path::Path;

use anyhow::{bail, Context, Result};
use fusionforge_core::Limits;
use serde::{Deserialize, Serialize};

/// Environment variable naming a JSON config file.
pub const CONFIG_ENV: &str = "FUSIONFORGE_CONFIG";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub closure_cap: usize,
    pub subgroup_cap: usize,
    pub automorphism_cap: usize,
    pub saturation_cap: usize,
    /// Worker threads for the suites.
    pub parallelism: usize,
    /// Seed for the randomized checks.
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        let l = Limits::default();
        Config {
            closure_cap: l.closure_cap,
            subgroup_cap: l.subgroup_cap,
            automorphism_cap: l.automorphism_cap,
            saturation_cap: l.saturation_cap,
            parallelism: std::thread::available_parallelism().map_or(1, |n| n.get()),
            seed: 0,
        }
    }
}

impl Config {
    pub fn from_json(text: &str) -> Result<Config> {
        let cfg: Config = serde_json::from_str(text).context("malformed config")?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Config> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        Config::from_json(&text)
    }

    /// Reads the file named by `FUSIONFORGE_CONFIG`, or the defaults when unset.
    pub fn from_env() -> Result<Config> {
        match std::env::var_os(CONFIG_ENV) {
            Some(p) if !p.is_empty() => Config::load(Path::new(&p)),
            _ => Ok(Config::default()),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let caps = [
            ("closure_cap", self.closure_cap),
            ("subgroup_cap", self.subgroup_cap),
            ("automorphism_cap", self.automorphism_cap),
            ("saturation_cap", self.saturation_cap),
            ("parallelism", self.parallelism),
        ];
        for (name, v) in caps {
            if v == 0 {
                bail!("{} must be positive", name);
            }
        }
        Ok(())
    }

    pub fn limits(&self) -> Limits {
        Limits {
            closure_cap: self.closure_cap,
            subgroup_cap: self.subgroup_cap,
            automorphism_cap: self.automorphism_cap,
            saturation_cap: self.saturation_cap,
        }
    }

    pub fn pool(&self) -> Result<rayon::ThreadPool> {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.parallelism)
            .build()
            .context("building worker pool")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_files_keep_defaults() {
        let cfg = Config::from_json(r#"{"seed": 7, "parallelism": 2}"#).unwrap();
        assert_eq!(cfg.seed, 7);
        assert_eq!(cfg.parallelism, 2);
        assert_eq!(cfg.closure_cap, 20160);
        assert_eq!(cfg.limits(), Limits { ..Limits::default() });
    }

    #[test]
    fn rejects_zero_and_unknown_fields() {
        assert!(Config::from_json(r#"{"parallelism": 0}"#).is_err());
        assert!(Config::from_json(r#"{"subgroup_cap": 0}"#).is_err());
        assert!(Config::from_json(r#"{"threads": 4}"#).is_err());
    }
}
