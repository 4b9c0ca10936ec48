//! Finite set systems and verification of comatching certificates.
//!
//! A [`SetSystem`] is a ground set of labelled points together with an
//! indexed family of subsets. Members are indexed rather than deduplicated, so
//! the same subset may appear under several names.

use std::collections::{BTreeSet, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{check_index, Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Member {
    pub name: String,
    pub elements: BitSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetSystem {
    ground: Vec<String>,
    members: Vec<Member>,
    /// `columns[x]` = members containing point `x`.
    columns: Vec<BitSet>,
}

impl SetSystem {
    /// Builds a system from ground labels and `(name, element indices)` pairs.
    pub fn new(ground: Vec<String>, members: Vec<(String, Vec<usize>)>) -> Result<Self> {
        let mut seen = HashSet::new();
        for label in &ground {
            if !seen.insert(label.as_str()) {
                return Err(Error::Invalid(format!("duplicate ground label {label:?}")));
            }
        }
        let mut names = HashSet::new();
        let mut built = Vec::with_capacity(members.len());
        for (name, elements) in members {
            if !names.insert(name.clone()) {
                return Err(Error::Invalid(format!("duplicate member name {name:?}")));
            }
            for &e in &elements {
                check_index("ground", e, ground.len())?;
            }
            built.push(Member {
                name,
                elements: BitSet::from_indices(ground.len(), elements),
            });
        }
        Ok(Self::from_members(ground, built))
    }

    /// Builds a system from labels, naming elements by their ground label.
    pub fn from_labels<S: AsRef<str>>(ground: &[S], members: &[(&str, &[S])]) -> Result<Self> {
        let ground: Vec<String> = ground.iter().map(|s| s.as_ref().to_string()).collect();
        let index: HashMap<&str, usize> = ground
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect();
        let mut out = Vec::new();
        for (name, elems) in members {
            let mut idx = Vec::new();
            for e in elems.iter() {
                let e = e.as_ref();
                idx.push(*index.get(e).ok_or_else(|| {
                    Error::Invalid(format!("member {name:?}: unknown element {e:?}"))
                })?);
            }
            out.push((name.to_string(), idx));
        }
        Self::new(ground, out)
    }

    fn from_members(ground: Vec<String>, members: Vec<Member>) -> Self {
        let mut columns = vec![BitSet::new(members.len()); ground.len()];
        for (j, m) in members.iter().enumerate() {
            for x in &m.elements {
                columns[x].insert(j);
            }
        }
        Self {
            ground,
            members,
            columns,
        }
    }

    pub fn ground(&self) -> &[String] {
        &self.ground
    }

    pub fn ground_len(&self) -> usize {
        self.ground.len()
    }

    pub fn members(&self) -> &[Member] {
        &self.members
    }

    pub fn member_count(&self) -> usize {
        self.members.len()
    }

    pub fn member(&self, j: usize) -> &BitSet {
        &self.members[j].elements
    }

    pub fn member_name(&self, j: usize) -> &str {
        &self.members[j].name
    }

    /// Members containing point `x`.
    pub fn point_members(&self, x: usize) -> &BitSet {
        &self.columns[x]
    }

    pub fn full_ground(&self) -> BitSet {
        BitSet::full(self.ground.len())
    }

    pub fn point_index(&self, label: &str) -> Option<usize> {
        self.ground.iter().position(|l| l == label)
    }

    pub fn member_index(&self, name: &str) -> Option<usize> {
        self.members.iter().position(|m| m.name == name)
    }

    /// Members that contain no point at all.
    pub fn uncovered_members(&self) -> Vec<usize> {
        (0..self.members.len())
            .filter(|&j| self.members[j].elements.is_empty())
            .collect()
    }

    /// Restriction to the members containing point `x` (ground unchanged).
    pub fn members_through(&self, x: usize) -> SetSystem {
        let kept = self
            .columns[x]
            .iter()
            .map(|j| self.members[j].clone())
            .collect();
        Self::from_members(self.ground.clone(), kept)
    }

    /// Sub-system on a subset of member indices, in the given order.
    pub fn select_members(&self, indices: &[usize]) -> Result<SetSystem> {
        let mut kept = Vec::with_capacity(indices.len());
        for &j in indices {
            check_index("member", j, self.members.len())?;
            kept.push(self.members[j].clone());
        }
        let mut names = HashSet::new();
        if !kept.iter().all(|m| names.insert(m.name.clone())) {
            return Err(Error::Invalid("member selected twice".into()));
        }
        Ok(Self::from_members(self.ground.clone(), kept))
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let raw: SetSystemJson = serde_json::from_str(text)?;
        raw.into_system()
    }

    /// Canonical JSON: ground sorted, member order preserved, elements listed
    /// in ground order.
    pub fn to_json_value(&self) -> SetSystemJson {
        let mut ground = self.ground.clone();
        ground.sort();
        let rank: HashMap<&str, usize> = ground
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect();
        let members = self
            .members
            .iter()
            .map(|m| {
                let mut elems: Vec<&String> =
                    m.elements.iter().map(|x| &self.ground[x]).collect();
                elems.sort_by_key(|l| rank[l.as_str()]);
                MemberJson {
                    name: m.name.clone(),
                    elements: elems.into_iter().cloned().collect(),
                }
            })
            .collect();
        SetSystemJson {
            ground,
            members,
            provenance: None,
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("serializable")
    }
}

/// On-disk set-system format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetSystemJson {
    pub ground: Vec<String>,
    pub members: Vec<MemberJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MemberJson {
    pub name: String,
    pub elements: Vec<String>,
}

impl SetSystemJson {
    pub fn into_system(self) -> Result<SetSystem> {
        let mut index = HashMap::new();
        for (i, label) in self.ground.iter().enumerate() {
            if index.insert(label.clone(), i).is_some() {
                return Err(Error::Invalid(format!(
                    "ground[{i}]: duplicate label {label:?}"
                )));
            }
        }
        let mut members = Vec::with_capacity(self.members.len());
        for (j, m) in self.members.into_iter().enumerate() {
            let mut elems = BTreeSet::new();
            for (k, e) in m.elements.iter().enumerate() {
                let &x = index.get(e).ok_or_else(|| {
                    Error::Invalid(format!("members[{j}].elements[{k}]: unknown label {e:?}"))
                })?;
                if !elems.insert(x) {
                    return Err(Error::Invalid(format!(
                        "members[{j}].elements[{k}]: repeated label {e:?}"
                    )));
                }
            }
            members.push((m.name, elems.into_iter().collect()));
        }
        SetSystem::new(self.ground, members).map_err(|e| match e {
            Error::Invalid(msg) => Error::Invalid(format!("members: {msg}")),
            other => other,
        })
    }
}

/// Result of checking a certificate. `ok` holds exactly when there are no
/// violations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub ok: bool,
    pub violations: Vec<String>,
}

impl Verdict {
    pub fn from_violations(violations: Vec<String>) -> Self {
        Self {
            ok: violations.is_empty(),
            violations,
        }
    }

    pub fn pass() -> Self {
        Self::from_violations(Vec::new())
    }
}

/// A comatching: pairs `(point, member)` with `point_i ∈ member_j` iff `i ≠ j`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Comatching {
    pub pairs: Vec<(usize, usize)>,
}

impl Comatching {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.pairs.iter().map(|&(_, f)| f)
    }
}

/// A comatching plus a point lying in every matched member.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComatchingWithIntersection {
    pub base: Comatching,
    pub common_point: usize,
}

/// A subfamily given by member indices (sorted, distinct).
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SubfamilySelection(Vec<usize>);

impl SubfamilySelection {
    pub fn new<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        let set: BTreeSet<usize> = indices.into_iter().collect();
        Self(set.into_iter().collect())
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn validate(&self, system: &SetSystem) -> Result<()> {
        for &j in &self.0 {
            check_index("member", j, system.member_count())?;
        }
        Ok(())
    }
}

/// Intersection of the selected members; the whole ground set for an empty
/// selection.
pub fn intersect_subfamily(system: &SetSystem, sel: &SubfamilySelection) -> Result<BitSet> {
    sel.validate(system)?;
    let mut acc = system.full_ground();
    for &j in sel.indices() {
        acc.intersect_with(system.member(j));
    }
    Ok(acc)
}

fn check_pairs(system: &SetSystem, c: &Comatching) -> Result<()> {
    for &(x, f) in &c.pairs {
        check_index("ground", x, system.ground_len())?;
        check_index("member", f, system.member_count())?;
    }
    Ok(())
}

fn comatching_violations(system: &SetSystem, c: &Comatching) -> Vec<String> {
    let mut out = Vec::new();
    let mut points = HashMap::new();
    let mut members = HashMap::new();
    for (i, &(x, f)) in c.pairs.iter().enumerate() {
        if let Some(prev) = points.insert(x, i) {
            out.push(format!("point {x} repeated in pairs {prev} and {i}"));
        }
        if let Some(prev) = members.insert(f, i) {
            out.push(format!("member {f} repeated in pairs {prev} and {i}"));
        }
    }
    for (i, &(x, _)) in c.pairs.iter().enumerate() {
        for (j, &(_, f)) in c.pairs.iter().enumerate() {
            let inside = system.member(f).contains(x);
            if i == j && inside {
                out.push(format!("pair {i}: point {x} lies in its own member {f}"));
            } else if i != j && !inside {
                out.push(format!(
                    "pairs {i},{j}: point {x} missing from member {f}"
                ));
            }
        }
    }
    out
}

/// Checks the comatching incidence pattern against `system`.
pub fn verify_comatching(system: &SetSystem, c: &Comatching) -> Result<Verdict> {
    check_pairs(system, c)?;
    Ok(Verdict::from_violations(comatching_violations(system, c)))
}

pub fn verify_comatching_with_intersection(
    system: &SetSystem,
    c: &ComatchingWithIntersection,
) -> Result<Verdict> {
    check_pairs(system, &c.base)?;
    check_index("ground", c.common_point, system.ground_len())?;
    let mut out = comatching_violations(system, &c.base);
    let p = c.common_point;
    for (i, &(x, f)) in c.base.pairs.iter().enumerate() {
        if !system.member(f).contains(p) {
            out.push(format!("common point {p} missing from member {f} (pair {i})"));
        }
        if x == p {
            out.push(format!("common point {p} coincides with matched point of pair {i}"));
        }
    }
    Ok(Verdict::from_violations(out))
}

/// Edges `(point, member)` of the bipartite complement: `point ∉ member`.
pub fn complement_incidence(system: &SetSystem) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for (j, m) in system.members().iter().enumerate() {
        for x in 0..system.ground_len() {
            if !m.elements.contains(x) {
                edges.push((x, j));
            }
        }
    }
    edges
}
