//! Experiment log for the open question whether nerves of families with
//! `τ ≤ 2` have bounded Leray number. Records data only.

use helly_core::random::random_small_system;
use helly_core::topology::{leray_number_with, LerayOptions};
use helly_core::{comatching_number, gen_torus_grid_system, nerve, SetSystem};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::error::CliResult;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Question1Record {
    pub instance: String,
    pub ground_size: usize,
    pub member_count: usize,
    pub tau: usize,
    pub tau_exact: bool,
    pub leray_number: usize,
    pub leray_exact: bool,
    pub running_max: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Question1Log {
    pub schema: String,
    pub seed: u64,
    pub samples: usize,
    /// Sampled systems rejected for `τ > 2` or an inexact `τ`.
    pub filtered_out: usize,
    pub records: Vec<Question1Record>,
    pub max_leray_number: usize,
}

fn record(
    name: String,
    s: &SetSystem,
    cfg: &RunConfig,
    running: &mut usize,
) -> CliResult<Option<Question1Record>> {
    let tau = comatching_number(s, cfg.budget());
    if !tau.exact || tau.tau > 2 {
        return Ok(None);
    }
    let k = nerve(s)?;
    let opts = LerayOptions {
        exhaustive_cap: cfg.cap_vertices,
        seed: cfg.seed,
    };
    let l = leray_number_with(&k, cfg.budget(), opts);
    *running = (*running).max(l.value);
    Ok(Some(Question1Record {
        instance: name,
        ground_size: s.ground_len(),
        member_count: s.member_count(),
        tau: tau.tau,
        tau_exact: tau.exact,
        leray_number: l.value,
        leray_exact: l.exact,
        running_max: *running,
    }))
}

/// Samples `samples` random systems with at most `max_size` points and
/// members, keeps those with exact `τ ≤ 2`, and logs their nerves' Leray
/// numbers. The torus-grid system is always included as the first record.
pub fn question1(cfg: &RunConfig, samples: usize, max_size: usize) -> CliResult<Question1Log> {
    let mut running = 0;
    let mut records = Vec::new();
    let torus = gen_torus_grid_system(4, 2)?;
    if let Some(r) = record("torus-grid-4x4".into(), &torus, cfg, &mut running)? {
        records.push(r);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut filtered = 0;
    for i in 0..samples {
        let s = random_small_system(&mut rng, max_size, max_size);
        match record(format!("random-{i}"), &s, cfg, &mut running)? {
            Some(r) => records.push(r),
            None => filtered += 1,
        }
    }
    Ok(Question1Log {
        schema: "helly-question1/1".into(),
        seed: cfg.seed,
        samples,
        filtered_out: filtered,
        records,
        max_leray_number: running,
    })
}
