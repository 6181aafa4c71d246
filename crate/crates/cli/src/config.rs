use std::path::Path;

use anyhow::{bail, Context};
use plclass::algebra::RecognitionBudget;
use plclass::classify::ClassifyParams;
use plclass::search::{TraversalLimits, WalkParams};
use serde::{Deserialize, Serialize};

pub const CONFIG_VERSION: u32 = 1;

/// Run configuration for `classify run` and `search exhaust`. Every field
/// except `version` may be omitted.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub version: u32,
    #[serde(default)]
    pub walk: WalkParams,
    #[serde(default = "relaxed_default")]
    pub relaxed: WalkParams,
    /// Representative rounds repeat while more than this many classes remain.
    #[serde(default = "k_default")]
    pub k: usize,
    #[serde(default = "rounds_default")]
    pub relaxed_rounds: usize,
    #[serde(default)]
    pub traversal: TraversalLimits,
    #[serde(default)]
    pub recognition_budget: RecognitionBudget,
    /// Record wall-clock timings in the report.
    #[serde(default)]
    pub timings: bool,
}

fn relaxed_default() -> WalkParams {
    ClassifyParams::default().relaxed
}

fn k_default() -> usize {
    ClassifyParams::default().k
}

fn rounds_default() -> usize {
    ClassifyParams::default().relaxed_rounds
}

impl Default for RunConfig {
    fn default() -> Self {
        let p = ClassifyParams::default();
        RunConfig {
            version: CONFIG_VERSION,
            walk: p.walk,
            relaxed: p.relaxed,
            k: p.k,
            relaxed_rounds: p.relaxed_rounds,
            traversal: TraversalLimits::default(),
            recognition_budget: RecognitionBudget::default(),
            timings: p.timings,
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let cfg: RunConfig = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> anyhow::Result<()> {
        if self.version != CONFIG_VERSION {
            bail!("unsupported config version {} (expected {CONFIG_VERSION})", self.version);
        }
        self.walk.validate().map_err(|e| anyhow::anyhow!("walk: {e}"))?;
        self.relaxed.validate().map_err(|e| anyhow::anyhow!("relaxed: {e}"))?;
        if self.traversal.node_budget == 0 {
            bail!("traversal.node_budget must be positive");
        }
        Ok(())
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.walk.seed = seed;
        self.relaxed.seed = seed;
        self
    }

    pub fn classify_params(&self) -> ClassifyParams {
        ClassifyParams {
            walk: self.walk.clone(),
            relaxed: self.relaxed.clone(),
            k: self.k,
            relaxed_rounds: self.relaxed_rounds,
            timings: self.timings,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_config_takes_defaults() {
        let cfg: RunConfig = serde_json::from_str(r#"{"version": 1}"#).unwrap();
        assert_eq!(cfg, RunConfig::default());
        cfg.validate().unwrap();
    }

    #[test]
    fn rejects_bad_configs() {
        assert!(serde_json::from_str::<RunConfig>(r#"{"version": 1, "bogus": 3}"#).is_err());
        assert!(serde_json::from_str::<RunConfig>(r#"{}"#).is_err());
        let cfg: RunConfig = serde_json::from_str(r#"{"version": 2}"#).unwrap();
        assert!(cfg.validate().is_err());
        let cfg: RunConfig = serde_json::from_str(r#"{"version": 1, "walk": {"x": 1.5}}"#).unwrap();
        assert!(cfg.validate().is_err());
    }
}
