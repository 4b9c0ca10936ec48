//! Abstract simplicial complexes stored by their facets.
//!
//! Faces are bitmasks over vertex indices, so a complex has at most
//! [`MAX_VERTICES`] vertices. Faces other than facets are enumerated on
//! demand.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::budget::{Meter, SearchBudget};
use crate::error::{check_index, Error, Result};
use crate::system::{SetSystem, Verdict};

pub type Face = u64;

pub const MAX_VERTICES: usize = 64;

pub fn face_size(face: Face) -> usize {
    face.count_ones() as usize
}

pub fn face_vertices(face: Face) -> impl Iterator<Item = usize> {
    let mut rest = face;
    std::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(v)
        }
    })
}

pub fn face_from_vertices<I: IntoIterator<Item = usize>>(vertices: I) -> Face {
    vertices.into_iter().fold(0, |acc, v| acc | (1 << v))
}

/// Lexicographic order on sorted vertex tuples.
pub fn lex_cmp(a: Face, b: Face) -> Ordering {
    let (mut a, mut b) = (a, b);
    loop {
        match (a == 0, b == 0) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            _ => {}
        }
        let (x, y) = (a.trailing_zeros(), b.trailing_zeros());
        if x != y {
            return x.cmp(&y);
        }
        a &= a - 1;
        b &= b - 1;
    }
}

/// Inclusion-maximal faces of `faces` (nonempty), deduplicated and sorted.
pub fn maximal_faces(mut faces: Vec<Face>) -> Vec<Face> {
    faces.retain(|&f| f != 0);
    faces.sort_unstable_by_key(|&f| std::cmp::Reverse(face_size(f)));
    faces.dedup();
    let mut out: Vec<Face> = Vec::with_capacity(faces.len());
    for f in faces {
        if !out.iter().any(|&g| f & g == f) {
            out.push(f);
        }
    }
    out.sort_unstable_by(|&a, &b| lex_cmp(a, b));
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<String>,
    facets: Vec<Face>,
}

impl SimplicialComplex {
    /// Validates and canonicalizes; the returned notes describe what changed.
    pub fn new(vertices: Vec<String>, facets: Vec<Vec<usize>>) -> Result<(Self, Vec<String>)> {
        if vertices.len() > MAX_VERTICES {
            return Err(Error::CapExceeded(format!(
                "{} vertices (at most {MAX_VERTICES})",
                vertices.len()
            )));
        }
        let mut seen = HashSet::new();
        for v in &vertices {
            if !seen.insert(v.as_str()) {
                return Err(Error::Invalid(format!("duplicate vertex label {v:?}")));
            }
        }
        let mut notes = Vec::new();
        let mut masks = Vec::with_capacity(facets.len());
        for (i, facet) in facets.iter().enumerate() {
            let mut mask = 0;
            for &v in facet {
                check_index("vertex", v, vertices.len())?;
                if mask & (1 << v) != 0 {
                    notes.push(format!("facets[{i}]: dropped repeated vertex {:?}", vertices[v]));
                }
                mask |= 1 << v;
            }
            if mask == 0 {
                notes.push(format!("facets[{i}]: dropped empty facet"));
            } else {
                masks.push(mask);
            }
        }
        let before = masks.len();
        let canonical = maximal_faces(masks.clone());
        if canonical.len() != before {
            notes.push(format!(
                "removed {} duplicate or dominated facets",
                before - canonical.len()
            ));
        } else if canonical != masks {
            notes.push("reordered facets".into());
        }
        let covered = canonical.iter().fold(0, |acc, f| acc | f);
        for (v, label) in vertices.iter().enumerate() {
            if covered & (1 << v) == 0 {
                return Err(Error::Invalid(format!(
                    "vertex {label:?} lies in no facet (list isolated vertices as singleton facets)"
                )));
            }
        }
        let complex = Self {
            vertices,
            facets: canonical,
        };
        for v in complex.isolated_vertices() {
            notes.push(format!("isolated vertex {:?}", complex.vertices[v]));
        }
        Ok((complex, notes))
    }

    /// Builds from masks, canonicalizing silently. Uncovered vertices are
    /// turned into isolated vertices.
    pub fn from_masks(vertices: Vec<String>, facets: Vec<Face>) -> Result<Self> {
        if vertices.len() > MAX_VERTICES {
            return Err(Error::CapExceeded(format!(
                "{} vertices (at most {MAX_VERTICES})",
                vertices.len()
            )));
        }
        let n = vertices.len();
        let limit = if n == MAX_VERTICES { u64::MAX } else { (1u64 << n) - 1 };
        if facets.iter().any(|&f| f & !limit != 0) {
            return Err(Error::Invalid("facet uses a vertex outside the vertex list".into()));
        }
        let mut facets = facets;
        let covered = facets.iter().fold(0, |acc, f| acc | f);
        facets.extend((0..n).filter(|v| covered & (1 << v) == 0).map(|v| 1u64 << v));
        Ok(Self {
            vertices,
            facets: maximal_faces(facets),
        })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn vertex_mask(&self) -> Face {
        if self.vertices.len() == MAX_VERTICES {
            u64::MAX
        } else {
            (1 << self.vertices.len()) - 1
        }
    }

    /// Dimension; `-1` for the complex with no vertices.
    pub fn dim(&self) -> isize {
        self.facets
            .iter()
            .map(|&f| face_size(f) as isize - 1)
            .max()
            .unwrap_or(-1)
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    /// Vertices that form a facet on their own.
    pub fn isolated_vertices(&self) -> Vec<usize> {
        self.facets
            .iter()
            .filter(|&&f| face_size(f) == 1)
            .map(|&f| f.trailing_zeros() as usize)
            .collect()
    }

    pub fn contains_face(&self, face: Face) -> bool {
        face == 0 || self.facets.iter().any(|&f| face & f == face)
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    pub fn face_labels(&self, face: Face) -> Vec<String> {
        face_vertices(face).map(|v| self.vertices[v].clone()).collect()
    }

    /// Every face (including the empty one), grouped by cardinality and
    /// lexicographically sorted within each group.
    pub fn faces_by_size(&self) -> Vec<Vec<Face>> {
        let top = self.facets.iter().map(|&f| face_size(f)).max().unwrap_or(0);
        let mut seen: HashSet<Face> = HashSet::new();
        for &facet in &self.facets {
            // all submasks of the facet
            let mut sub = facet;
            loop {
                seen.insert(sub);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & facet;
            }
        }
        if seen.is_empty() {
            seen.insert(0);
        }
        let mut groups = vec![Vec::new(); top + 1];
        for f in seen {
            groups[face_size(f)].push(f);
        }
        for g in &mut groups {
            g.sort_unstable_by(|&a, &b| lex_cmp(a, b));
        }
        groups
    }

    /// Number of faces per dimension, starting at dimension `-1`.
    pub fn f_vector(&self) -> Vec<usize> {
        self.faces_by_size().iter().map(Vec::len).collect()
    }

    pub fn from_json_str(text: &str) -> Result<(Self, Vec<String>)> {
        let raw: ComplexJson = serde_json::from_str(text)?;
        raw.into_complex()
    }

    pub fn to_json_value(&self) -> ComplexJson {
        ComplexJson {
            vertices: self.vertices.clone(),
            facets: self.facets.iter().map(|&f| self.face_labels(f)).collect(),
            provenance: None,
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("serializable")
    }
}

/// On-disk complex format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexJson {
    pub vertices: Vec<String>,
    pub facets: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
}

impl ComplexJson {
    pub fn into_complex(self) -> Result<(SimplicialComplex, Vec<String>)> {
        let index: HashMap<&str, usize> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), i))
            .collect();
        let mut facets = Vec::with_capacity(self.facets.len());
        for (i, facet) in self.facets.iter().enumerate() {
            let mut idx = Vec::with_capacity(facet.len());
            for (k, label) in facet.iter().enumerate() {
                idx.push(*index.get(label.as_str()).ok_or_else(|| {
                    Error::Invalid(format!("facets[{i}][{k}]: unknown vertex {label:?}"))
                })?);
            }
            facets.push(idx);
        }
        SimplicialComplex::new(self.vertices, facets)
    }
}

/// Nerve: one vertex per member, faces are subfamilies with a common point.
/// Members containing no point become isolated vertices.
pub fn nerve(system: &SetSystem) -> Result<SimplicialComplex> {
    if system.member_count() > MAX_VERTICES {
        return Err(Error::CapExceeded(format!(
            "nerve of {} members (at most {MAX_VERTICES})",
            system.member_count()
        )));
    }
    let facets = (0..system.ground_len())
        .map(|x| face_from_vertices(system.point_members(x).iter()))
        .collect();
    let names = system.members().iter().map(|m| m.name.clone()).collect();
    SimplicialComplex::from_masks(names, facets)
}

/// A set `M` of vertices such that every `v ∈ M` has a facet meeting `M`
/// in exactly `M ∖ {v}`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexComatching {
    pub vertices: Vec<usize>,
    /// Facet index (into `facets()`) witnessing each vertex.
    pub witnesses: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexComatchingResult {
    pub tau: usize,
    pub certificate: ComplexComatching,
    pub exact: bool,
}

fn comatching_witnesses(complex: &SimplicialComplex, set: Face) -> Option<Vec<usize>> {
    face_vertices(set)
        .map(|v| {
            let target = set & !(1 << v);
            complex.facets.iter().position(|&f| f & set == target)
        })
        .collect()
}

pub fn verify_complex_comatching(
    complex: &SimplicialComplex,
    c: &ComplexComatching,
) -> Result<Verdict> {
    if c.vertices.len() != c.witnesses.len() {
        return Err(Error::Invalid("one witness facet per vertex required".into()));
    }
    let mut set: Face = 0;
    let mut out = Vec::new();
    for &v in &c.vertices {
        check_index("vertex", v, complex.vertex_count())?;
        if set & (1 << v) != 0 {
            out.push(format!("vertex {v} repeated"));
        }
        set |= 1 << v;
    }
    for (&v, &w) in c.vertices.iter().zip(&c.witnesses) {
        check_index("facet", w, complex.facets.len())?;
        if complex.facets[w] & set != set & !(1 << v) {
            out.push(format!("facet {w} does not meet the set in all but vertex {v}"));
        }
    }
    Ok(Verdict::from_violations(out))
}

struct ComplexComatchingSearch<'a> {
    complex: &'a SimplicialComplex,
    meter: Meter,
    best: Face,
}

impl ComplexComatchingSearch<'_> {
    // comatchings are closed under taking subsets, so growing one vertex at a
    // time in increasing order reaches all of them
    fn dfs(&mut self, current: Face, start: usize) {
        if !self.meter.tick() {
            return;
        }
        if face_size(current) > face_size(self.best) {
            self.best = current;
        }
        let candidates: Vec<usize> = (start..self.complex.vertex_count())
            .filter(|&u| comatching_witnesses(self.complex, current | (1 << u)).is_some())
            .collect();
        for (k, &u) in candidates.iter().enumerate() {
            if face_size(current) + candidates.len() - k <= face_size(self.best) {
                return;
            }
            self.dfs(current | (1 << u), u + 1);
            if self.meter.exhausted() {
                return;
            }
        }
    }
}

pub fn complex_comatching_number(
    complex: &SimplicialComplex,
    budget: SearchBudget,
) -> ComplexComatchingResult {
    let mut search = ComplexComatchingSearch {
        complex,
        meter: budget.meter(),
        best: 0,
    };
    search.dfs(0, 0);
    let vertices: Vec<usize> = face_vertices(search.best).collect();
    let witnesses = comatching_witnesses(complex, search.best).expect("search keeps comatchings");
    ComplexComatchingResult {
        tau: vertices.len(),
        certificate: ComplexComatching {
            vertices,
            witnesses,
        },
        exact: !search.meter.exhausted(),
    }
}

/// Label used for the ground element standing for a facet.
pub fn facet_label(complex: &SimplicialComplex, facet: Face) -> String {
    format!("[{}]", complex.face_labels(facet).join(","))
}

/// Set system whose nerve is the complex: ground = vertices ⊔ facets and
/// member `F_v = {v} ∪ {facets containing v}`.
pub fn complex_to_set_system(complex: &SimplicialComplex) -> Result<SetSystem> {
    if let Some(&v) = complex.isolated_vertices().first() {
        return Err(Error::Invalid(format!(
            "vertex {:?} is isolated; the conversion needs a complex without isolated vertices",
            complex.vertices[v]
        )));
    }
    let n = complex.vertex_count();
    let mut ground = complex.vertices.clone();
    ground.extend(complex.facets.iter().map(|&f| facet_label(complex, f)));
    let members = (0..n)
        .map(|v| {
            let mut elems = vec![v];
            elems.extend(
                complex
                    .facets
                    .iter()
                    .enumerate()
                    .filter(|(_, &f)| f & (1 << v) != 0)
                    .map(|(i, _)| n + i),
            );
            (complex.vertices[v].clone(), elems)
        })
        .collect();
    SetSystem::new(ground, members)
}

/// Join on the disjoint union of vertex sets; labels are prefixed `a:` and
/// `b:` by side.
pub fn join(k: &SimplicialComplex, l: &SimplicialComplex) -> Result<SimplicialComplex> {
    let (n, m) = (k.vertex_count(), l.vertex_count());
    if n + m > MAX_VERTICES {
        return Err(Error::CapExceeded(format!(
            "join has {} vertices (at most {MAX_VERTICES})",
            n + m
        )));
    }
    let mut vertices: Vec<String> = k.vertices.iter().map(|v| format!("a:{v}")).collect();
    vertices.extend(l.vertices.iter().map(|v| format!("b:{v}")));
    // a complex without facets still has the empty face
    let left: Vec<Face> = if k.is_empty() { vec![0] } else { k.facets.clone() };
    let right: Vec<Face> = if l.is_empty() { vec![0] } else { l.facets.clone() };
    let mut facets = Vec::with_capacity(left.len() * right.len());
    for &f in &left {
        for &g in &right {
            facets.push(f | (g << n));
        }
    }
    SimplicialComplex::from_masks(vertices, facets)
}

/// Subcomplex of faces contained in `subset`; vertices keep their labels and
/// relative order.
pub fn induced_subcomplex(complex: &SimplicialComplex, subset: &[usize]) -> Result<SimplicialComplex> {
    let mut mask: Face = 0;
    for &v in subset {
        check_index("vertex", v, complex.vertex_count())?;
        mask |= 1 << v;
    }
    Ok(restrict_to_mask(complex, mask))
}

pub(crate) fn restrict_to_mask(complex: &SimplicialComplex, mask: Face) -> SimplicialComplex {
    let kept: Vec<usize> = face_vertices(mask).collect();
    let vertices = kept.iter().map(|&v| complex.vertices[v].clone()).collect();
    let facets = complex
        .facets
        .iter()
        .map(|&f| compress(f & mask, &kept))
        .collect();
    SimplicialComplex::from_masks(vertices, facets).expect("subset of a valid complex")
}

/// Renumbers the bits of `face` (all within `kept`) to positions in `kept`.
fn compress(face: Face, kept: &[usize]) -> Face {
    kept.iter()
        .enumerate()
        .filter(|(_, &v)| face & (1 << v) != 0)
        .fold(0, |acc, (i, _)| acc | (1 << i))
}

/// Faces of dimension `i` in lexicographic order; `i = -1` gives the empty
/// face.
pub fn faces_of_dim(complex: &SimplicialComplex, i: isize) -> Vec<Face> {
    if i < -1 {
        return Vec::new();
    }
    let size = (i + 1) as usize;
    complex.faces_by_size().into_iter().nth(size).unwrap_or_default()
}

/// Whether the facets coincide once vertices are matched by label.
pub fn isomorphic_by_labels(a: &SimplicialComplex, b: &SimplicialComplex) -> bool {
    if a.vertex_count() != b.vertex_count() {
        return false;
    }
    let map: Option<Vec<usize>> = a.vertices.iter().map(|v| b.vertex_index(v)).collect();
    match map {
        Some(map) => same_under(a, b, &map),
        None => false,
    }
}

fn same_under(a: &SimplicialComplex, b: &SimplicialComplex, map: &[usize]) -> bool {
    let mut image: Vec<Face> = a
        .facets
        .iter()
        .map(|&f| face_vertices(f).fold(0, |acc, v| acc | (1 << map[v])))
        .collect();
    image.sort_unstable();
    let mut target = b.facets.clone();
    target.sort_unstable();
    image == target
}

/// Searches for a vertex bijection `a → b` carrying facets onto facets.
/// Returns `Ok(None)` when none exists and `Err` when the budget runs out.
pub fn find_isomorphism(
    a: &SimplicialComplex,
    b: &SimplicialComplex,
    budget: SearchBudget,
) -> Result<Option<Vec<usize>>> {
    if a.vertex_count() != b.vertex_count() || a.facets.len() != b.facets.len() {
        return Ok(None);
    }
    // vertex signature: sorted sizes of the facets through it
    let signature = |c: &SimplicialComplex, v: usize| {
        let mut s: Vec<usize> = c
            .facets
            .iter()
            .filter(|&&f| f & (1 << v) != 0)
            .map(|&f| face_size(f))
            .collect();
        s.sort_unstable();
        s
    };
    let n = a.vertex_count();
    let sig_a: Vec<_> = (0..n).map(|v| signature(a, v)).collect();
    let sig_b: Vec<_> = (0..n).map(|v| signature(b, v)).collect();
    let mut sorted_a = sig_a.clone();
    let mut sorted_b = sig_b.clone();
    sorted_a.sort();
    sorted_b.sort();
    if sorted_a != sorted_b {
        return Ok(None);
    }
    let facet_set_b: HashSet<Face> = b.facets.iter().copied().collect();
    let mut meter = budget.meter();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];

    fn consistent(a: &SimplicialComplex, facets_b: &HashSet<Face>, map: &[usize], upto: usize) -> bool {
        // every facet of a whose vertices are all mapped must map into some facet of b
        let mapped: Face = (0..=upto).fold(0, |acc, v| acc | (1 << v));
        a.facets.iter().all(|&f| {
            let part = f & mapped;
            let image = face_vertices(part).fold(0u64, |acc, v| acc | (1 << map[v]));
            if part == f {
                facets_b.contains(&image)
            } else {
                facets_b.iter().any(|&g| image & g == image)
            }
        })
    }

    fn rec(
        v: usize,
        a: &SimplicialComplex,
        facets_b: &HashSet<Face>,
        sig_a: &[Vec<usize>],
        sig_b: &[Vec<usize>],
        map: &mut [usize],
        used: &mut [bool],
        meter: &mut Meter,
    ) -> Option<bool> {
        if v == map.len() {
            return Some(true);
        }
        for w in 0..map.len() {
            if used[w] || sig_a[v] != sig_b[w] {
                continue;
            }
            if !meter.tick() {
                return None;
            }
            map[v] = w;
            used[w] = true;
            if consistent(a, facets_b, map, v) {
                match rec(v + 1, a, facets_b, sig_a, sig_b, map, used, meter) {
                    Some(true) => return Some(true),
                    None => return None,
                    Some(false) => {}
                }
            }
            used[w] = false;
        }
        map[v] = usize::MAX;
        Some(false)
    }

    match rec(0, a, &facet_set_b, &sig_a, &sig_b, &mut map, &mut used, &mut meter) {
        Some(true) => {
            debug_assert!(same_under(a, b, &map));
            Ok(Some(map))
        }
        Some(false) => Ok(None),
        None => Err(Error::CapExceeded("isomorphism search budget exhausted".into())),
    }
}
