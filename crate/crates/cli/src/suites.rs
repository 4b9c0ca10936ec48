//! Seeded property suites behind `check-theorems`.

use helly_core::random::{random_complex, random_small_system};
use helly_core::{
    colorful_helly_number, colorful_transversal_dichotomy, comatching_number,
    comatching_with_intersection_number, helly_number, is_d_collapsible, kunneth_betti_check,
    leray_check, minimal_empty_subfamilies, nerve, verify_comatching,
    verify_comatching_with_intersection, verify_dichotomy_outcome, CollapseRules, CollapseStatus,
    ColorfulInstance, KunnethStatus, LerayStatus, SearchBudget, SetSystem, SetSystemJson,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::certs::{verify_certificate, Certificate, Object};
use crate::error::CliResult;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteSizes {
    pub theorem_systems: usize,
    pub dichotomy_instances: usize,
    pub collapse_systems: usize,
    pub kunneth_pairs: usize,
    pub max_ground: usize,
    pub max_members: usize,
}

impl Default for SuiteSizes {
    fn default() -> Self {
        Self {
            theorem_systems: 200,
            dichotomy_instances: 500,
            collapse_systems: 200,
            kunneth_pairs: 20,
            max_ground: 7,
            max_members: 7,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub name: String,
    pub cases: usize,
    /// Cases where some search ran out of budget; they are not checked.
    pub skipped: usize,
    pub violations: Vec<String>,
}

impl SuiteResult {
    fn new(name: &str) -> Self {
        Self {
            name: name.into(),
            cases: 0,
            skipped: 0,
            violations: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub schema: String,
    pub seed: u64,
    pub sizes: SuiteSizes,
    pub suites: Vec<SuiteResult>,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.suites.iter().all(|s| s.violations.is_empty())
    }
}

/// A set system with certificates that are all expected to replay.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Fixture {
    pub system: SetSystemJson,
    pub certificates: Vec<Certificate>,
}

fn case_rng(seed: u64, suite: u64, case: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(suite);
    rng.set_word_pos(case as u128 * 1024);
    rng
}

fn describe(s: &SetSystem) -> String {
    serde_json::to_string(&s.to_json_value()).unwrap_or_default()
}

/// `η ≤ 1 + τ′ ≤ 1 + τ`, `h ≤ η`, and `η = τ` whenever `τ′ = τ − 1`.
pub fn theorem_suite(seed: u64, sizes: &SuiteSizes) -> SuiteResult {
    let mut out = SuiteResult::new("comatching_bounds");
    for case in 0..sizes.theorem_systems {
        let s = random_small_system(&mut case_rng(seed, 1, case), sizes.max_ground, sizes.max_members);
        out.cases += 1;
        let tau = comatching_number(&s, SearchBudget::UNBOUNDED);
        let tp = comatching_with_intersection_number(&s, SearchBudget::UNBOUNDED);
        let eta = colorful_helly_number(&s, SearchBudget::UNBOUNDED);
        let h = helly_number(&s);
        let mut bad = Vec::new();
        if !verify_comatching(&s, &tau.certificate).map(|v| v.ok).unwrap_or(false) {
            bad.push("τ certificate fails".to_string());
        }
        if let Some(c) = &tp.certificate {
            if !verify_comatching_with_intersection(&s, c).map(|v| v.ok).unwrap_or(false) {
                bad.push("τ′ certificate fails".into());
            }
        }
        if eta.eta > 1 + tp.tau_prime {
            bad.push(format!("η = {} > 1 + τ′ = {}", eta.eta, 1 + tp.tau_prime));
        }
        if tp.tau_prime > tau.tau {
            bad.push(format!("τ′ = {} > τ = {}", tp.tau_prime, tau.tau));
        }
        if h > eta.eta {
            bad.push(format!("h = {h} > η = {}", eta.eta));
        }
        if tau.tau >= 1 && tp.tau_prime + 1 == tau.tau && eta.eta != tau.tau {
            bad.push(format!("τ′ = τ − 1 = {} but η = {}", tp.tau_prime, eta.eta));
        }
        out.violations
            .extend(bad.into_iter().map(|b| format!("case {case}: {b} in {}", describe(&s))));
    }
    out
}

/// Both dichotomy arms replay; instances longer than `τ′` always yield a
/// transversal.
pub fn dichotomy_suite(seed: u64, sizes: &SuiteSizes) -> SuiteResult {
    let mut out = SuiteResult::new("dichotomy");
    let mut case = 0;
    while out.cases < sizes.dichotomy_instances {
        let mut rng = case_rng(seed, 2, case);
        case += 1;
        let s = random_small_system(&mut rng, sizes.max_ground, sizes.max_members);
        let mins = minimal_empty_subfamilies(&s);
        if mins.is_empty() {
            continue;
        }
        let tp = comatching_with_intersection_number(&s, SearchBudget::UNBOUNDED);
        let n = rng.random_range(1..=tp.tau_prime + 2);
        let inst = ColorfulInstance::new(
            (0..n).map(|_| mins[rng.random_range(0..mins.len())].clone()).collect(),
        );
        out.cases += 1;
        match colorful_transversal_dichotomy(&s, &inst) {
            Err(e) => out.violations.push(format!("case {case}: rejected valid instance: {e}")),
            Ok(outcome) => {
                let ok = verify_dichotomy_outcome(&s, &inst, &outcome).map(|v| v.ok).unwrap_or(false);
                if !ok {
                    out.violations.push(format!("case {case}: returned arm fails replay"));
                }
                if n > tp.tau_prime && !outcome.is_transversal() {
                    out.violations.push(format!(
                        "case {case}: {n} positions exceed τ′ = {} but a witness was returned",
                        tp.tau_prime
                    ));
                }
            }
        }
    }
    out
}

/// A `d`-collapsible nerve forces `η ≤ d + 1` and the `d`-Leray property.
pub fn collapse_suite(seed: u64, sizes: &SuiteSizes) -> SuiteResult {
    let mut out = SuiteResult::new("collapsible_nerve");
    for case in 0..sizes.collapse_systems {
        let s = random_small_system(&mut case_rng(seed, 3, case), sizes.max_ground.min(6), sizes.max_members.min(6));
        if !s.uncovered_members().is_empty() {
            continue;
        }
        out.cases += 1;
        let Ok(k) = nerve(&s) else {
            out.violations.push(format!("case {case}: nerve failed"));
            continue;
        };
        let eta = colorful_helly_number(&s, SearchBudget::UNBOUNDED);
        let mut decided = false;
        for d in 1..=k.vertex_count().max(1) {
            let r = is_d_collapsible(&k, CollapseRules::new(d), SearchBudget::nodes(50_000));
            match r.status {
                CollapseStatus::Proved => {
                    decided = true;
                    if eta.eta > d + 1 {
                        out.violations.push(format!(
                            "case {case}: nerve is {d}-collapsible but η = {}",
                            eta.eta
                        ));
                    }
                    if leray_check(&k, d, SearchBudget::UNBOUNDED).status != LerayStatus::Holds {
                        out.violations.push(format!("case {case}: {d}-collapsible nerve is not {d}-Leray"));
                    }
                    break;
                }
                CollapseStatus::Refuted => {}
                CollapseStatus::BudgetExhausted => break,
            }
        }
        if !decided {
            out.skipped += 1;
        }
    }
    out
}

/// Künneth identity for joins of random small complexes.
pub fn kunneth_suite(seed: u64, sizes: &SuiteSizes) -> SuiteResult {
    let mut out = SuiteResult::new("join_kunneth");
    for case in 0..sizes.kunneth_pairs {
        let mut rng = case_rng(seed, 4, case);
        let nk = rng.random_range(1..=5);
        let nl = rng.random_range(1..=5);
        let (Ok(k), Ok(l)) = (random_complex(&mut rng, nk, 4, 3), random_complex(&mut rng, nl, 4, 3)) else {
            out.violations.push(format!("case {case}: generator failed"));
            continue;
        };
        out.cases += 1;
        match kunneth_betti_check(&k, &l, SearchBudget::UNBOUNDED) {
            Ok(r) if r.status == KunnethStatus::Agrees => {}
            Ok(r) => out.violations.push(format!("case {case}: {}", r.verdict.violations.join("; "))),
            Err(e) => out.violations.push(format!("case {case}: {e}")),
        }
    }
    out
}

pub fn fixture_suite(fixture: &Fixture) -> CliResult<SuiteResult> {
    let s = fixture.system.clone().into_system()?;
    let object = Object::System(s);
    let mut out = SuiteResult::new("fixture");
    for (i, cert) in fixture.certificates.iter().enumerate() {
        out.cases += 1;
        let v = verify_certificate(cert, &object)?;
        out.violations
            .extend(v.violations.into_iter().map(|m| format!("certificate {i}: {m}")));
    }
    Ok(out)
}

pub fn check_theorems(seed: u64, sizes: &SuiteSizes, fixture: Option<&Fixture>) -> CliResult<SuiteReport> {
    let mut suites = vec![
        theorem_suite(seed, sizes),
        dichotomy_suite(seed, sizes),
        collapse_suite(seed, sizes),
        kunneth_suite(seed, sizes),
    ];
    if let Some(f) = fixture {
        suites.push(fixture_suite(f)?);
    }
    Ok(SuiteReport {
        schema: "helly-suites/1".into(),
        seed,
        sizes: *sizes,
        suites,
    })
}
