use std::path::PathBuf;

use helly_core::{ArithmeticMode, SearchBudget};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Arith {
    Exact,
    Prime,
}

/// Default limit on ground points and members accepted by `analyze`.
pub const DEFAULT_CAP_GROUND: usize = 64;

/// Default vertex count up to which Leray checks scan every subset.
pub const DEFAULT_CAP_VERTICES: usize = 24;

/// Default node budget for collapsibility search when no global budget is set.
pub const DEFAULT_COLLAPSE_NODES: u64 = 200_000;

/// Everything that influences a run. Two runs with the same config produce
/// byte-identical reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    /// Seed for the ChaCha8 generator used by every randomized phase.
    pub seed: u64,
    pub budget_nodes: Option<u64>,
    pub budget_ms: Option<u64>,
    pub arith: Arith,
    pub cap_ground: usize,
    pub cap_vertices: usize,
    #[serde(skip)]
    pub out: Option<PathBuf>,
    /// Fail with exit code 3 when any result is only a bound.
    pub require_exact: bool,
    #[serde(skip)]
    pub timings: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            budget_nodes: None,
            budget_ms: None,
            arith: Arith::Exact,
            cap_ground: DEFAULT_CAP_GROUND,
            cap_vertices: DEFAULT_CAP_VERTICES,
            out: None,
            require_exact: false,
            timings: false,
        }
    }
}

impl RunConfig {
    pub fn budget(&self) -> SearchBudget {
        SearchBudget {
            max_nodes: self.budget_nodes,
            max_millis: self.budget_ms,
        }
    }

    /// The global budget, or a finite node budget when none is configured.
    pub fn collapse_budget(&self) -> SearchBudget {
        let b = self.budget();
        if b.max_nodes.is_none() && b.max_millis.is_none() {
            SearchBudget::nodes(DEFAULT_COLLAPSE_NODES)
        } else {
            b
        }
    }

    pub fn arithmetic(&self) -> ArithmeticMode {
        match self.arith {
            Arith::Exact => ArithmeticMode::ExactRational,
            Arith::Prime => ArithmeticMode::prime(),
        }
    }
}
