//! Analysis reports for set systems and complexes.

use std::time::Instant;

use helly_core::topology::{leray_number_with, LerayOptions};
use helly_core::{
    colorful_helly_number, comatching_number, comatching_with_intersection_number,
    complex_comatching_number, helly_number, is_d_collapsible, is_d_good,
    minimal_empty_subfamilies, reduced_betti_with_budget, reduced_euler_characteristic,
    torsion_warning, ArithmeticMode, CollapseRules, CollapseStatus, HomologyProfile, SetSystem,
    SimplicialComplex,
};
use serde::{Deserialize, Serialize};

use crate::certs::{
    collapse_cert, comatching_cert, complex_comatching_cert, intersection_cert, leray_cert,
    refuting_cert, verify_certificate, Certificate, Object,
};
use crate::config::RunConfig;
use crate::error::{CliResult, Failure};

pub const REPORT_SCHEMA: &str = "helly-report/1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certified {
    pub value: usize,
    pub exact: bool,
    pub certificate: Option<Certificate>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HellyRecord {
    pub value: usize,
    /// Always exhaustive.
    pub exact: bool,
    /// Every inclusion-minimal subfamily with empty intersection.
    pub minimal_empty_subfamilies: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemRecord {
    pub ground_size: usize,
    pub member_count: usize,
    pub tau: Certified,
    pub tau_prime: Certified,
    pub helly: HellyRecord,
    pub eta: Certified,
    /// Bounds `h ≤ η ≤ 1 + τ′ ≤ 1 + τ`, checked when all values are exact.
    pub bound_violations: Vec<String>,
    pub nerve_vertices_isolated: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LerayRecord {
    /// Least `d` with the complex `d`-Leray (a lower bound when inexact).
    pub number: usize,
    pub exact: bool,
    pub exhaustive: bool,
    /// Induced subcomplex showing the complex is not `(number - 1)`-Leray.
    pub failure_witness: Option<Certificate>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollapseRecord {
    pub d: usize,
    pub status: CollapseStatus,
    pub certificate: Option<Certificate>,
    pub obstruction: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexRecord {
    pub vertex_count: usize,
    pub facet_count: usize,
    pub dim: isize,
    pub f_vector: Vec<usize>,
    pub isolated_vertices: Vec<String>,
    pub comatching: Certified,
    pub homology: Option<HomologyProfile>,
    /// Largest `d` for which the complex is `d`-good.
    pub good_dimension: Option<usize>,
    pub euler_check: Option<bool>,
    pub torsion_warning: Option<String>,
    pub leray: LerayRecord,
    /// Collapsibility at the Leray number, the least `d` it could hold for.
    pub collapse: Option<CollapseRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub total_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema: String,
    pub config: RunConfig,
    pub system: Option<SystemRecord>,
    pub complex: Option<ComplexRecord>,
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

impl AnalysisReport {
    /// Every value that is only a bound, by name.
    pub fn inexact(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if let Some(s) = &self.system {
            for (name, c) in [("tau", &s.tau), ("tau_prime", &s.tau_prime), ("eta", &s.eta)] {
                if !c.exact {
                    out.push(name);
                }
            }
        }
        if let Some(k) = &self.complex {
            if !k.comatching.exact {
                out.push("complex_comatching");
            }
            if k.homology.is_none() {
                out.push("homology");
            }
            if !k.leray.exact {
                out.push("leray_number");
            }
        }
        out
    }

    pub fn certificates(&self) -> Vec<&Certificate> {
        let mut out = Vec::new();
        if let Some(s) = &self.system {
            out.extend(s.tau.certificate.iter());
            out.extend(s.tau_prime.certificate.iter());
            out.extend(s.eta.certificate.iter());
        }
        if let Some(k) = &self.complex {
            out.extend(k.comatching.certificate.iter());
            out.extend(k.leray.failure_witness.iter());
            if let Some(c) = &k.collapse {
                out.extend(c.certificate.iter());
            }
        }
        out
    }
}

fn names(s: &SetSystem, idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&j| s.member_name(j).to_string()).collect()
}

fn check_caps(s: &SetSystem, cfg: &RunConfig) -> CliResult<()> {
    if s.ground_len() > cfg.cap_ground || s.member_count() > cfg.cap_ground {
        return Err(Failure::Input(anyhow::anyhow!(
            "{} points and {} members exceed --cap-ground {}",
            s.ground_len(),
            s.member_count(),
            cfg.cap_ground
        )));
    }
    Ok(())
}

pub fn analyze_system(s: &SetSystem, cfg: &RunConfig) -> CliResult<SystemRecord> {
    check_caps(s, cfg)?;
    let budget = cfg.budget();
    let tau = comatching_number(s, budget);
    let tp = comatching_with_intersection_number(s, budget);
    let h = helly_number(s);
    let mins = minimal_empty_subfamilies(s);
    let eta = colorful_helly_number(s, budget);
    let mut bounds = Vec::new();
    if tau.exact && tp.exact && eta.exact {
        if h > eta.eta {
            bounds.push(format!("h = {h} exceeds η = {}", eta.eta));
        }
        if eta.eta > 1 + tp.tau_prime {
            bounds.push(format!("η = {} exceeds 1 + τ′ = {}", eta.eta, 1 + tp.tau_prime));
        }
        if tp.tau_prime > tau.tau {
            bounds.push(format!("τ′ = {} exceeds τ = {}", tp.tau_prime, tau.tau));
        }
        if tau.tau >= 1 && tp.tau_prime + 1 == tau.tau && eta.eta != tau.tau {
            bounds.push(format!("τ′ = τ − 1 but η = {} ≠ τ = {}", eta.eta, tau.tau));
        }
    }
    let isolated = s
        .uncovered_members()
        .iter()
        .map(|&j| s.member_name(j).to_string())
        .collect();
    Ok(SystemRecord {
        ground_size: s.ground_len(),
        member_count: s.member_count(),
        tau: Certified {
            value: tau.tau,
            exact: tau.exact,
            certificate: Some(comatching_cert(s, &tau.certificate)),
        },
        tau_prime: Certified {
            value: tp.tau_prime,
            exact: tp.exact,
            certificate: tp.certificate.as_ref().map(|c| intersection_cert(s, c)),
        },
        helly: HellyRecord {
            value: h,
            exact: true,
            minimal_empty_subfamilies: mins.iter().map(|m| names(s, m.indices())).collect(),
        },
        eta: Certified {
            value: eta.eta,
            exact: eta.exact,
            certificate: refuting_cert(s, &eta),
        },
        bound_violations: bounds,
        nerve_vertices_isolated: isolated,
    })
}

pub fn analyze_complex(k: &SimplicialComplex, cfg: &RunConfig) -> CliResult<ComplexRecord> {
    let budget = cfg.budget();
    let mode = cfg.arithmetic();
    let cm = complex_comatching_number(k, budget);
    let homology = reduced_betti_with_budget(k, mode, budget);
    let euler_check = homology.as_ref().map(|p| {
        let alt: i64 = p
            .reduced_betti
            .iter()
            .enumerate()
            .map(|(i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum();
        alt == reduced_euler_characteristic(k)
    });
    let good_dimension = homology
        .as_ref()
        .and_then(|p| (0..p.reduced_betti.len()).rev().find(|&d| is_d_good(p, d)));
    let torsion = match mode {
        ArithmeticMode::PrimeField(p) => torsion_warning(k, p),
        ArithmeticMode::ExactRational => None,
    };
    let opts = LerayOptions {
        exhaustive_cap: cfg.cap_vertices,
        seed: cfg.seed,
    };
    let ln = leray_number_with(k, budget, opts);
    let leray = LerayRecord {
        number: ln.value,
        exact: ln.exact,
        exhaustive: k.vertex_count() <= cfg.cap_vertices,
        failure_witness: ln
            .witness
            .as_ref()
            .map(|w| leray_cert(k, w.dimension, w)),
    };
    let collapse = (!k.is_empty()).then(|| {
        let rules = CollapseRules::new(ln.value.max(1));
        let out = is_d_collapsible(k, rules, cfg.collapse_budget());
        CollapseRecord {
            d: rules.d,
            status: out.status,
            certificate: collapse_cert(k, rules, &out),
            obstruction: out.obstruction.clone(),
        }
    });
    Ok(ComplexRecord {
        vertex_count: k.vertex_count(),
        facet_count: k.facets().len(),
        dim: k.dim(),
        f_vector: k.f_vector(),
        isolated_vertices: k
            .isolated_vertices()
            .iter()
            .map(|&v| k.vertices()[v].clone())
            .collect(),
        comatching: Certified {
            value: cm.tau,
            exact: cm.exact,
            certificate: Some(complex_comatching_cert(k, &cm.certificate)),
        },
        homology,
        good_dimension,
        euler_check,
        torsion_warning: torsion,
        leray,
        collapse,
    })
}

/// Analyzes a parsed object, re-verifies every certificate, and enforces
/// `require_exact`.
pub fn analyze_object(object: &Object, cfg: &RunConfig) -> CliResult<AnalysisReport> {
    let start = Instant::now();
    let mut report = AnalysisReport {
        schema: REPORT_SCHEMA.into(),
        config: cfg.clone(),
        system: None,
        complex: None,
        notes: Vec::new(),
        timings: None,
    };
    match object {
        Object::System(s) => {
            let rec = analyze_system(s, cfg)?;
            if !rec.nerve_vertices_isolated.is_empty() {
                report.notes.push(format!(
                    "members {:?} contain no point and are isolated in the nerve",
                    rec.nerve_vertices_isolated
                ));
            }
            if !rec.bound_violations.is_empty() {
                return Err(Failure::Invariant(rec.bound_violations.join("; ")));
            }
            report.system = Some(rec);
        }
        Object::Complex(k, notes) => {
            report.notes.extend(notes.iter().cloned());
            let rec = analyze_complex(k, cfg)?;
            if rec.euler_check == Some(false) {
                return Err(Failure::Invariant("Betti numbers contradict the Euler characteristic".into()));
            }
            report.complex = Some(rec);
        }
    }
    for cert in report.certificates() {
        let v = verify_certificate(cert, object).map_err(Failure::Input)?;
        if !v.ok {
            return Err(Failure::Invariant(format!(
                "emitted certificate failed replay: {}",
                v.violations.join("; ")
            )));
        }
    }
    if cfg.require_exact {
        let inexact = report.inexact();
        if !inexact.is_empty() {
            return Err(Failure::Budget(format!("inexact values: {}", inexact.join(", "))));
        }
    }
    if cfg.timings {
        report.timings = Some(Timings {
            total_ms: start.elapsed().as_secs_f64() * 1e3,
        });
    }
    Ok(report)
}
