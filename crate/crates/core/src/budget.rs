use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

/// Limits for exponential searches. Absent limits are unbounded.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub max_nodes: Option<u64>,
    pub max_millis: Option<u64>,
}

impl SearchBudget {
    pub const UNBOUNDED: SearchBudget = SearchBudget {
        max_nodes: None,
        max_millis: None,
    };

    pub fn nodes(max_nodes: u64) -> Self {
        Self {
            max_nodes: Some(max_nodes),
            max_millis: None,
        }
    }

    pub fn millis(max_millis: u64) -> Self {
        Self {
            max_nodes: None,
            max_millis: Some(max_millis),
        }
    }

    pub fn meter(&self) -> Meter {
        Meter {
            max_nodes: self.max_nodes,
            deadline: self
                .max_millis
                .map(|ms| Instant::now() + Duration::from_millis(ms)),
            nodes: 0,
            exhausted: false,
        }
    }
}

/// Running node/time accounting for one call.
#[derive(Debug)]
pub struct Meter {
    max_nodes: Option<u64>,
    deadline: Option<Instant>,
    nodes: u64,
    exhausted: bool,
}

impl Meter {
    /// Counts one node; returns `false` once the budget is spent.
    pub fn tick(&mut self) -> bool {
        if self.exhausted {
            return false;
        }
        self.nodes += 1;
        if let Some(max) = self.max_nodes {
            if self.nodes > max {
                self.exhausted = true;
                return false;
            }
        }
        // clock reads are comparatively slow
        if self.nodes.is_multiple_of(256) {
            if let Some(deadline) = self.deadline {
                if Instant::now() >= deadline {
                    self.exhausted = true;
                    return false;
                }
            }
        }
        true
    }

    pub fn exhausted(&self) -> bool {
        self.exhausted
    }

    pub fn nodes(&self) -> u64 {
        self.nodes
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn node_limit_trips() {
        let mut m = SearchBudget::nodes(3).meter();
        assert!(m.tick() && m.tick() && m.tick());
        assert!(!m.tick());
        assert!(m.exhausted());
    }

    #[test]
    fn unbounded_never_trips() {
        let mut m = SearchBudget::UNBOUNDED.meter();
        for _ in 0..10_000 {
            assert!(m.tick());
        }
    }
}
