use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};
use helly_cli::certs::{
    collapse_cert, instance_from_labels, intersection_cert, leray_cert, transversal_cert,
};
use helly_cli::config::{DEFAULT_CAP_GROUND, DEFAULT_CAP_VERTICES};
use helly_cli::generate::{generate, Construction};
use helly_cli::question1::question1;
use helly_cli::suites::{check_theorems, Fixture, SuiteSizes};
use helly_cli::{
    analyze_object, load_object, verify_certificate, Arith, Certificate, CliResult, Failure,
    Object, RunConfig,
};
use helly_core::topology::{leray_check_with, leray_number_with, LerayOptions};
use helly_core::{
    colorful_transversal_dichotomy, is_d_collapsible, is_d_good, nerve, reduced_betti_with_budget,
    reduced_euler_characteristic, torsion_warning, ArithmeticMode, CollapseRules, DichotomyOutcome,
    SetSystem, SimplicialComplex,
};
use serde::Serialize;
use serde_json::{json, Value};

/// Exact Helly-type invariants, nerves, homology and Leray checks.
///
/// Exit codes: 0 success, 1 a verification or suite failed, 2 input error,
/// 3 a budget ran out where an exact answer was required.
#[derive(Debug, Parser)]
#[command(name = "helly", version)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalArgs {
    /// Seed for the ChaCha8 generator.
    #[arg(long, global = true, env = "HELLY_SEED", default_value_t = 0)]
    seed: u64,
    /// Node budget per search (unbounded when absent).
    #[arg(long, global = true, env = "HELLY_BUDGET_NODES")]
    budget_nodes: Option<u64>,
    /// Wall-clock budget per search in milliseconds.
    #[arg(long, global = true, env = "HELLY_BUDGET_MS")]
    budget_ms: Option<u64>,
    /// Arithmetic for homology ranks.
    #[arg(long, global = true, env = "HELLY_ARITH", value_enum, default_value_t = Arith::Exact)]
    arith: Arith,
    /// Largest ground set or member count accepted.
    #[arg(long, global = true, env = "HELLY_CAP_GROUND", default_value_t = DEFAULT_CAP_GROUND)]
    cap_ground: usize,
    /// Largest vertex count for exhaustive Leray scans; larger complexes are sampled.
    #[arg(long, global = true, env = "HELLY_CAP_VERTICES", default_value_t = DEFAULT_CAP_VERTICES)]
    cap_vertices: usize,
    /// Write the JSON result here instead of stdout.
    #[arg(long, global = true, env = "HELLY_OUT")]
    out: Option<PathBuf>,
    /// Exit with code 3 if any reported value is only a bound.
    #[arg(long, global = true, env = "HELLY_REQUIRE_EXACT")]
    require_exact: bool,
    /// Include wall-clock timings (makes reports nondeterministic).
    #[arg(long, global = true, env = "HELLY_TIMINGS")]
    timings: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Full report for a set system or complex JSON file.
    Analyze { path: PathBuf },
    /// Emit a construction as JSON.
    Generate {
        #[command(subcommand)]
        construction: Construction,
    },
    /// Nerve of a set system.
    Nerve { path: PathBuf },
    /// Reduced Betti numbers of a complex.
    Homology {
        path: PathBuf,
        /// Compare against the other arithmetic and report disagreements.
        #[arg(long)]
        cross_check: bool,
    },
    /// Search for a d-collapse sequence.
    Collapse {
        path: PathBuf,
        #[arg(long)]
        d: usize,
        /// Only collapse free faces of size exactly d.
        #[arg(long)]
        strict: bool,
    },
    /// d-Leray check, or the Leray number when --d is absent.
    Leray {
        path: PathBuf,
        #[arg(long)]
        d: Option<usize>,
    },
    /// Run the transversal dichotomy on an instance file
    /// (`{"families": [["A","B"], ...]}`).
    Dichotomy { system: PathBuf, instance: PathBuf },
    /// Run the seeded property suites.
    CheckTheorems {
        #[arg(long, default_value_t = 200)]
        systems: usize,
        #[arg(long, default_value_t = 500)]
        instances: usize,
        /// Also replay every certificate in this fixture file.
        #[arg(long)]
        fixture: Option<PathBuf>,
    },
    /// Log Leray numbers of nerves of random systems with τ ≤ 2.
    Question1 {
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 6)]
        max_size: usize,
    },
    /// Replay a certificate against a set system or complex.
    Verify { certificate: PathBuf, object: PathBuf },
}

impl GlobalArgs {
    fn config(&self) -> RunConfig {
        RunConfig {
            seed: self.seed,
            budget_nodes: self.budget_nodes,
            budget_ms: self.budget_ms,
            arith: self.arith,
            cap_ground: self.cap_ground,
            cap_vertices: self.cap_vertices,
            out: self.out.clone(),
            require_exact: self.require_exact,
            timings: self.timings,
        }
    }
}

fn emit<T: Serialize>(value: &T, out: Option<&Path>) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(value).map_err(anyhow::Error::from)?;
    text.push('\n');
    match out {
        Some(p) => std::fs::write(p, text)
            .with_context(|| format!("cannot write {}", p.display()))
            .map_err(Failure::Input),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| Failure::Input(e.into()))
        }
    }
}

fn read_json(path: &Path) -> CliResult<Value> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    Ok(serde_json::from_str(&text).with_context(|| format!("invalid JSON in {}", path.display()))?)
}

fn system(path: &Path) -> CliResult<SetSystem> {
    match load_object(path)? {
        Object::System(s) => Ok(s),
        Object::Complex(..) => Err(anyhow!("{} is a complex, expected a set system", path.display()).into()),
    }
}

fn complex(path: &Path) -> CliResult<(SimplicialComplex, Vec<String>)> {
    match load_object(path)? {
        Object::Complex(k, notes) => Ok((k, notes)),
        Object::System(_) => Err(anyhow!("{} is a set system, expected a complex", path.display()).into()),
    }
}

fn require(cfg: &RunConfig, exact: bool, what: &str) -> CliResult<()> {
    if cfg.require_exact && !exact {
        return Err(Failure::Budget(format!("{what} is not exact")));
    }
    Ok(())
}

fn run(cli: Cli) -> CliResult<()> {
    let cfg = cli.global.config();
    let out = cfg.out.as_deref();
    match cli.command {
        Command::Analyze { path } => {
            let object = load_object(&path)?;
            emit(&analyze_object(&object, &cfg)?, out)
        }
        Command::Generate { construction } => emit(&generate(&construction, cfg.seed)?, out),
        Command::Nerve { path } => {
            let s = system(&path)?;
            let k = nerve(&s)?;
            let mut v = serde_json::to_value(k.to_json_value()).map_err(anyhow::Error::from)?;
            v["provenance"] = json!(format!("nerve of {}", path.display()));
            emit(&v, out)
        }
        Command::Homology { path, cross_check } => {
            let (k, notes) = complex(&path)?;
            let mode = cfg.arithmetic();
            let profile = reduced_betti_with_budget(&k, mode, cfg.budget());
            require(&cfg, profile.is_some(), "homology")?;
            let euler = reduced_euler_characteristic(&k);
            let warning = if cross_check {
                let p = match mode {
                    ArithmeticMode::PrimeField(p) => p,
                    ArithmeticMode::ExactRational => helly_core::linalg::DEFAULT_PRIME,
                };
                torsion_warning(&k, p)
            } else {
                None
            };
            let good = profile
                .as_ref()
                .and_then(|p| (0..p.reduced_betti.len()).rev().find(|&d| is_d_good(p, d)));
            emit(
                &json!({
                    "profile": profile,
                    "reduced_euler_characteristic": euler,
                    "good_dimension": good,
                    "torsion_warning": warning,
                    "notes": notes,
                }),
                out,
            )
        }
        Command::Collapse { path, d, strict } => {
            let (k, _) = complex(&path)?;
            let rules = CollapseRules { d, strict };
            let r = is_d_collapsible(&k, rules, cfg.budget());
            require(&cfg, r.status != helly_core::CollapseStatus::BudgetExhausted, "collapsibility")?;
            emit(
                &json!({
                    "d": d,
                    "strict": strict,
                    "status": r.status,
                    "obstruction": r.obstruction,
                    "nodes": r.nodes,
                    "certificate": collapse_cert(&k, rules, &r),
                }),
                out,
            )
        }
        Command::Leray { path, d } => {
            let (k, _) = complex(&path)?;
            let opts = LerayOptions {
                exhaustive_cap: cfg.cap_vertices,
                seed: cfg.seed,
            };
            match d {
                Some(d) => {
                    let v = leray_check_with(&k, d, cfg.budget(), opts);
                    require(&cfg, v.status != helly_core::LerayStatus::BudgetExhausted, "Leray check")?;
                    let cert = v.witness.as_ref().map(|w| leray_cert(&k, d, w));
                    emit(
                        &json!({
                            "d": d,
                            "status": v.status,
                            "exhaustive": v.exhaustive,
                            "subsets_checked": v.subsets_checked,
                            "certificate": cert,
                        }),
                        out,
                    )
                }
                None => {
                    let l = leray_number_with(&k, cfg.budget(), opts);
                    require(&cfg, l.exact, "Leray number")?;
                    let cert = l.witness.as_ref().map(|w| leray_cert(&k, w.dimension, w));
                    emit(
                        &json!({
                            "leray_number": l.value,
                            "exact": l.exact,
                            "subsets_checked": l.subsets_checked,
                            "certificate": cert,
                        }),
                        out,
                    )
                }
            }
        }
        Command::Dichotomy { system: sp, instance } => {
            let s = system(&sp)?;
            let raw = read_json(&instance)?;
            let families: Vec<Vec<String>> = serde_json::from_value(raw["families"].clone())
                .context("instance needs a \"families\" array of member-name arrays")?;
            let inst = instance_from_labels(&s, &families)?;
            let outcome = colorful_transversal_dichotomy(&s, &inst)?;
            let cert = match &outcome {
                DichotomyOutcome::Transversal(choice) => transversal_cert(&s, &inst, choice),
                DichotomyOutcome::Witness(w) => intersection_cert(&s, w),
            };
            let arm = if outcome.is_transversal() { "transversal" } else { "witness" };
            emit(&json!({ "arm": arm, "certificate": cert }), out)
        }
        Command::CheckTheorems { systems, instances, fixture } => {
            let sizes = SuiteSizes {
                theorem_systems: systems,
                dichotomy_instances: instances,
                ..SuiteSizes::default()
            };
            let fixture: Option<Fixture> = match fixture {
                Some(p) => Some(
                    serde_json::from_value(read_json(&p)?)
                        .with_context(|| format!("malformed fixture {}", p.display()))?,
                ),
                None => None,
            };
            let report = check_theorems(cfg.seed, &sizes, fixture.as_ref())?;
            emit(&report, out)?;
            if report.ok() {
                Ok(())
            } else {
                let failed: Vec<String> = report
                    .suites
                    .iter()
                    .filter(|s| !s.violations.is_empty())
                    .map(|s| format!("{}: {}", s.name, s.violations[0]))
                    .collect();
                Err(Failure::Invariant(failed.join("; ")))
            }
        }
        Command::Question1 { samples, max_size } => emit(&question1(&cfg, samples, max_size)?, out),
        Command::Verify { certificate, object } => {
            let raw = read_json(&certificate)?;
            // accept a bare certificate or any output carrying one
            let body = match raw.get("certificate") {
                Some(c) if !raw.get("kind").is_some() => c.clone(),
                _ => raw,
            };
            let cert: Certificate = serde_json::from_value(body)
                .with_context(|| format!("{} is not a certificate", certificate.display()))?;
            let object = load_object(&object)?;
            let verdict = verify_certificate(&cert, &object)?;
            emit(&verdict, out)?;
            if verdict.ok {
                Ok(())
            } else {
                Err(Failure::Invariant(verdict.violations.join("; ")))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("helly: {f}");
            ExitCode::from(f.exit_code() as u8)
        }
    }
}
