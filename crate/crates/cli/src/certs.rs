//! Label-based certificates and their independent replay.
//!
//! Certificates name points, members and vertices by label so they stay
//! meaningful outside the process that produced them.

use std::path::Path;

use anyhow::{anyhow, bail, Context};
use helly_core::complex::face_from_vertices;
use helly_core::search::ColorfulHellyResult;
use helly_core::topology::{CollapseOutcome, LerayWitness};
use helly_core::{
    find_empty_transversal, verify_collapse_sequence, verify_comatching,
    verify_comatching_with_intersection, verify_complex_comatching, verify_leray_witness,
    CollapseRules, CollapseSequence, CollapseStep, ColorfulInstance, Comatching,
    ComatchingWithIntersection, ComplexComatching, SetSystem, SimplicialComplex,
    SubfamilySelection, Verdict,
};
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelPair {
    pub point: String,
    pub member: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelStep {
    pub free_face: Vec<String>,
    pub maximal_face: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    Comatching {
        pairs: Vec<LabelPair>,
    },
    ComatchingWithIntersection {
        pairs: Vec<LabelPair>,
        common_point: String,
    },
    /// One member per family whose intersection is empty.
    Transversal {
        families: Vec<Vec<String>>,
        choice: Vec<String>,
    },
    /// Families with no empty colorful transversal.
    RefutingInstance {
        families: Vec<Vec<String>>,
    },
    ComplexComatching {
        vertices: Vec<String>,
        witness_facets: Vec<Vec<String>>,
    },
    Collapse {
        d: usize,
        strict: bool,
        steps: Vec<LabelStep>,
    },
    LerayWitness {
        d: usize,
        vertices: Vec<String>,
        dimension: usize,
        betti: u64,
    },
}

impl Certificate {
    pub fn needs_complex(&self) -> bool {
        matches!(
            self,
            Certificate::ComplexComatching { .. }
                | Certificate::Collapse { .. }
                | Certificate::LerayWitness { .. }
        )
    }
}

/// A parsed input file.
#[derive(Debug, Clone)]
pub enum Object {
    System(SetSystem),
    /// The complex plus the loader's canonicalization notes.
    Complex(SimplicialComplex, Vec<String>),
}

/// Parses a set system (`ground`/`members`) or a complex
/// (`vertices`/`facets`) from JSON text.
pub fn parse_object(text: &str) -> anyhow::Result<Object> {
    let value: Value = serde_json::from_str(text).context("invalid JSON")?;
    let obj = value
        .as_object()
        .ok_or_else(|| anyhow!("expected a JSON object at the top level"))?;
    if obj.contains_key("ground") || obj.contains_key("members") {
        Ok(Object::System(SetSystem::from_json_str(text)?))
    } else if obj.contains_key("vertices") || obj.contains_key("facets") {
        let (k, notes) = SimplicialComplex::from_json_str(text)?;
        Ok(Object::Complex(k, notes))
    } else {
        bail!("object has neither ground/members (set system) nor vertices/facets (complex)")
    }
}

pub fn load_object(path: &Path) -> anyhow::Result<Object> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    parse_object(&text).with_context(|| format!("in {}", path.display()))
}

fn point(s: &SetSystem, label: &str) -> anyhow::Result<usize> {
    s.point_index(label)
        .ok_or_else(|| anyhow!("unknown point label {label:?}"))
}

fn member(s: &SetSystem, name: &str) -> anyhow::Result<usize> {
    s.member_index(name)
        .ok_or_else(|| anyhow!("unknown member name {name:?}"))
}

fn vertex(k: &SimplicialComplex, label: &str) -> anyhow::Result<usize> {
    k.vertex_index(label)
        .ok_or_else(|| anyhow!("unknown vertex label {label:?}"))
}

fn vertices(k: &SimplicialComplex, labels: &[String]) -> anyhow::Result<Vec<usize>> {
    labels.iter().map(|l| vertex(k, l)).collect()
}

fn selection(s: &SetSystem, names: &[String]) -> anyhow::Result<SubfamilySelection> {
    Ok(SubfamilySelection::new(
        names.iter().map(|n| member(s, n)).collect::<anyhow::Result<Vec<_>>>()?,
    ))
}

pub fn instance_from_labels(s: &SetSystem, families: &[Vec<String>]) -> anyhow::Result<ColorfulInstance> {
    Ok(ColorfulInstance::new(
        families.iter().map(|f| selection(s, f)).collect::<anyhow::Result<_>>()?,
    ))
}

pub fn instance_labels(s: &SetSystem, inst: &ColorfulInstance) -> Vec<Vec<String>> {
    inst.families
        .iter()
        .map(|f| f.indices().iter().map(|&j| s.member_name(j).to_string()).collect())
        .collect()
}

fn pairs_from_labels(s: &SetSystem, pairs: &[LabelPair]) -> anyhow::Result<Comatching> {
    Ok(Comatching {
        pairs: pairs
            .iter()
            .map(|p| Ok((point(s, &p.point)?, member(s, &p.member)?)))
            .collect::<anyhow::Result<_>>()?,
    })
}

fn label_pairs(s: &SetSystem, c: &Comatching) -> Vec<LabelPair> {
    c.pairs
        .iter()
        .map(|&(x, f)| LabelPair {
            point: s.ground()[x].clone(),
            member: s.member_name(f).to_string(),
        })
        .collect()
}

pub fn comatching_cert(s: &SetSystem, c: &Comatching) -> Certificate {
    Certificate::Comatching {
        pairs: label_pairs(s, c),
    }
}

pub fn intersection_cert(s: &SetSystem, c: &ComatchingWithIntersection) -> Certificate {
    Certificate::ComatchingWithIntersection {
        pairs: label_pairs(s, &c.base),
        common_point: s.ground()[c.common_point].clone(),
    }
}

pub fn refuting_cert(s: &SetSystem, r: &ColorfulHellyResult) -> Option<Certificate> {
    r.refuting_instance
        .as_ref()
        .map(|inst| Certificate::RefutingInstance {
            families: instance_labels(s, inst),
        })
}

pub fn transversal_cert(s: &SetSystem, inst: &ColorfulInstance, choice: &[usize]) -> Certificate {
    Certificate::Transversal {
        families: instance_labels(s, inst),
        choice: choice.iter().map(|&j| s.member_name(j).to_string()).collect(),
    }
}

pub fn complex_comatching_cert(k: &SimplicialComplex, c: &ComplexComatching) -> Certificate {
    Certificate::ComplexComatching {
        vertices: c.vertices.iter().map(|&v| k.vertices()[v].clone()).collect(),
        witness_facets: c
            .witnesses
            .iter()
            .map(|&f| k.face_labels(k.facets()[f]))
            .collect(),
    }
}

fn labels_of(k: &SimplicialComplex, vs: &[usize]) -> Vec<String> {
    vs.iter().map(|&v| k.vertices()[v].clone()).collect()
}

pub fn collapse_cert(k: &SimplicialComplex, rules: CollapseRules, out: &CollapseOutcome) -> Option<Certificate> {
    out.sequence.as_ref().map(|seq| Certificate::Collapse {
        d: rules.d,
        strict: rules.strict,
        steps: seq
            .steps
            .iter()
            .map(|st| LabelStep {
                free_face: labels_of(k, &st.free_face),
                maximal_face: labels_of(k, &st.maximal_face),
            })
            .collect(),
    })
}

pub fn leray_cert(k: &SimplicialComplex, d: usize, w: &LerayWitness) -> Certificate {
    Certificate::LerayWitness {
        d,
        vertices: labels_of(k, &w.vertices),
        dimension: w.dimension,
        betti: w.betti,
    }
}

/// Replays a certificate against the object it claims to certify.
/// Label and shape mismatches are errors; a failed check is a verdict.
pub fn verify_certificate(cert: &Certificate, object: &Object) -> anyhow::Result<Verdict> {
    match (cert, object) {
        (Certificate::Comatching { pairs }, Object::System(s)) => {
            Ok(verify_comatching(s, &pairs_from_labels(s, pairs)?)?)
        }
        (Certificate::ComatchingWithIntersection { pairs, common_point }, Object::System(s)) => {
            let c = ComatchingWithIntersection {
                base: pairs_from_labels(s, pairs)?,
                common_point: point(s, common_point)?,
            };
            Ok(verify_comatching_with_intersection(s, &c)?)
        }
        (Certificate::Transversal { families, choice }, Object::System(s)) => {
            let inst = instance_from_labels(s, families)?;
            let choice: Vec<usize> = choice.iter().map(|n| member(s, n)).collect::<anyhow::Result<_>>()?;
            let mut out = Vec::new();
            if let Err(e) = inst.validate(s) {
                out.push(format!("instance: {e}"));
            }
            if choice.len() != inst.len() {
                out.push(format!("{} choices for {} families", choice.len(), inst.len()));
            }
            for (i, (f, fam)) in choice.iter().zip(&inst.families).enumerate() {
                if !fam.indices().contains(f) {
                    out.push(format!("position {i}: {} is not in its family", s.member_name(*f)));
                }
            }
            let inter = helly_core::intersect_subfamily(s, &SubfamilySelection::new(choice.iter().copied()))?;
            if !inter.is_empty() {
                let pts: Vec<&str> = inter.iter().map(|x| s.ground()[x].as_str()).collect();
                out.push(format!("chosen members share points {pts:?}"));
            }
            Ok(Verdict::from_violations(out))
        }
        (Certificate::RefutingInstance { families }, Object::System(s)) => {
            let inst = instance_from_labels(s, families)?;
            if let Err(e) = inst.validate(s) {
                return Ok(Verdict::from_violations(vec![format!("instance: {e}")]));
            }
            Ok(match find_empty_transversal(s, &inst)? {
                None => Verdict::pass(),
                Some(choice) => {
                    let names: Vec<&str> = choice.iter().map(|&j| s.member_name(j)).collect();
                    Verdict::from_violations(vec![format!(
                        "instance has the empty transversal {names:?}"
                    )])
                }
            })
        }
        (Certificate::ComplexComatching { vertices: vs, witness_facets }, Object::Complex(k, _)) => {
            let vs = vertices(k, vs)?;
            let mut witnesses = Vec::with_capacity(witness_facets.len());
            for (i, f) in witness_facets.iter().enumerate() {
                let mask = face_from_vertices(vertices(k, f)?);
                match k.facets().iter().position(|&g| g == mask) {
                    Some(j) => witnesses.push(j),
                    None => {
                        return Ok(Verdict::from_violations(vec![format!(
                            "witness {i} {f:?} is not a facet"
                        )]))
                    }
                }
            }
            Ok(verify_complex_comatching(
                k,
                &ComplexComatching {
                    vertices: vs,
                    witnesses,
                },
            )?)
        }
        (Certificate::Collapse { d, strict, steps }, Object::Complex(k, _)) => {
            let seq = CollapseSequence {
                steps: steps
                    .iter()
                    .map(|st| {
                        Ok(CollapseStep {
                            free_face: vertices(k, &st.free_face)?,
                            maximal_face: vertices(k, &st.maximal_face)?,
                        })
                    })
                    .collect::<anyhow::Result<_>>()?,
            };
            let rules = CollapseRules { d: *d, strict: *strict };
            Ok(verify_collapse_sequence(k, rules, &seq)?)
        }
        (Certificate::LerayWitness { d, vertices: vs, dimension, betti }, Object::Complex(k, _)) => {
            let mut vs = vertices(k, vs)?;
            vs.sort_unstable();
            let w = LerayWitness {
                vertices: vs,
                dimension: *dimension,
                betti: *betti,
            };
            Ok(verify_leray_witness(k, *d, &w)?)
        }
        (c, _) => bail!(
            "certificate needs a {} but the object is not one",
            if c.needs_complex() { "simplicial complex" } else { "set system" }
        ),
    }
}
