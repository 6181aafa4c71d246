//! Random walks and bounded exhaustive traversals of the Pachner graph.

mod traverse;
mod walk;

use std::time::Duration;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use traverse::{exhaustive_traverse, TraversalOutcome};
pub use walk::{adjust_vertex_number, beta, greedy_simplify, usds_walk, usds_walk_to, WalkOutcome};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct WalkParams {
    /// Probability of attempting a 3-3 move at each step.
    pub x: f64,
    /// Strength of the pull towards `n_hat`.
    pub alpha: f64,
    /// Target size the walk hovers around.
    pub n_hat: usize,
    /// Maximum number of steps.
    pub s: u64,
    pub seed: u64,
    /// Wall-clock limit in seconds.
    pub timeout: f64,
}

impl Default for WalkParams {
    fn default() -> Self {
        WalkParams { x: 0.4, alpha: 0.5, n_hat: 8, s: 100_000, seed: 0, timeout: 60.0 }
    }
}

impl WalkParams {
    pub fn validate(&self) -> Result<(), String> {
        if !(0.0..=1.0).contains(&self.x) {
            return Err(format!("x = {} is not a probability", self.x));
        }
        if self.n_hat < 1 {
            return Err("n_hat must be at least 1".into());
        }
        if !self.alpha.is_finite() {
            return Err("alpha must be finite".into());
        }
        if !(self.timeout >= 0.0) {
            return Err("timeout must be non-negative".into());
        }
        Ok(())
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        WalkParams { seed, ..self.clone() }
    }

    pub(crate) fn time_limit(&self) -> Duration {
        Duration::from_secs_f64(self.timeout.min(1e9))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TraversalLimits {
    /// Allowed number of pentachora above the starting size.
    pub excess_height: usize,
    /// Maximum number of distinct triangulations to visit.
    pub node_budget: usize,
    /// Rough cap on memory held by the visited set, in bytes.
    pub memory_budget: usize,
}

impl Default for TraversalLimits {
    fn default() -> Self {
        TraversalLimits { excess_height: 2, node_budget: 5_000_000, memory_budget: 2 << 30 }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("timed out after {0} steps")]
    Timeout(u64),
    #[error("target vertex count must be at least 1")]
    ZeroVertices,
    #[error(transparent)]
    Signature(#[from] crate::isosig::SigError),
}

#[cfg(test)]
mod tests;
