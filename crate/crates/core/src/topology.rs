//! Reduced simplicial homology, goodness, the join Künneth identity,
//! d-collapsibility and the d-Leray property.
//!
//! Homology is taken with rational coefficients; Betti numbers over the reals
//! coincide with rational ones for integer boundary matrices.

use std::collections::{HashMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::budget::{Meter, SearchBudget};
use crate::complex::{
    face_size, face_vertices, induced_subcomplex, join, lex_cmp, maximal_faces, Face,
    SimplicialComplex,
};
use crate::error::{check_index, Error, Result};
use crate::linalg::{rank_exact, rank_mod_prime, SparseMatrix, DEFAULT_PRIME};
use crate::system::Verdict;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ArithmeticMode {
    ExactRational,
    PrimeField(u64),
}

impl ArithmeticMode {
    pub fn prime() -> Self {
        ArithmeticMode::PrimeField(DEFAULT_PRIME)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyProfile {
    /// `reduced_betti[i]` for `i = 0..=dim`.
    pub reduced_betti: Vec<u64>,
    pub arithmetic_mode: ArithmeticMode,
    pub exact: bool,
    /// Set for the complex without vertices, whose profile is empty.
    pub empty_complex: bool,
}

impl HomologyProfile {
    pub fn betti(&self, i: usize) -> u64 {
        self.reduced_betti.get(i).copied().unwrap_or(0)
    }

    pub fn is_acyclic(&self) -> bool {
        self.reduced_betti.iter().all(|&b| b == 0)
    }

    /// Betti numbers from dimension -1 (1 only for the empty complex).
    fn extended(&self) -> Vec<u64> {
        let mut out = vec![u64::from(self.empty_complex)];
        out.extend(&self.reduced_betti);
        out
    }
}

fn index_of(faces: &[Face]) -> HashMap<Face, usize> {
    faces.iter().enumerate().map(|(i, &f)| (f, i)).collect()
}

/// Boundary from faces of size `k` (columns) to faces of size `k - 1`
/// (rows). Signs alternate over the sorted vertex tuple.
fn boundary_between(cols: &[Face], rows: &[Face], row_index: &HashMap<Face, usize>) -> SparseMatrix {
    let mut m = SparseMatrix::zeros(rows.len(), cols.len());
    for (c, &face) in cols.iter().enumerate() {
        let mut entries: Vec<(usize, i64)> = face_vertices(face)
            .enumerate()
            .map(|(k, v)| {
                let sign = if k % 2 == 0 { 1 } else { -1 };
                (row_index[&(face & !(1 << v))], sign)
            })
            .collect();
        if face == 0 {
            entries.clear();
        }
        entries.sort_unstable();
        m.columns[c] = entries;
    }
    m
}

/// Boundary matrix `∂_i` from `i`-faces to `(i-1)`-faces of the augmented
/// chain complex (the empty face spans degree -1).
pub fn boundary_matrix(complex: &SimplicialComplex, i: isize) -> SparseMatrix {
    let groups = complex.faces_by_size();
    let faces = |dim: isize| -> Vec<Face> {
        if dim < -1 {
            Vec::new()
        } else {
            groups.get((dim + 1) as usize).cloned().unwrap_or_default()
        }
    };
    let cols = faces(i);
    let rows = faces(i - 1);
    boundary_between(&cols, &rows, &index_of(&rows))
}

fn rank_in(m: &SparseMatrix, mode: ArithmeticMode, meter: &mut Meter) -> Option<usize> {
    match mode {
        ArithmeticMode::ExactRational => rank_exact(m, meter),
        ArithmeticMode::PrimeField(p) => rank_mod_prime(m, p, meter),
    }
}

/// Reduced Betti numbers `b̃_i` for `i >= from` given faces grouped by size.
/// Entries below `from` are reported as zero.
fn betti_from_groups(
    groups: &[Vec<Face>],
    from: usize,
    mode: ArithmeticMode,
    meter: &mut Meter,
) -> Option<Vec<u64>> {
    // groups[s] = faces of size s = dimension s - 1
    let top = groups.len() - 1;
    if top == 0 {
        return Some(Vec::new());
    }
    // ranks[s] = rank of the boundary from size s to size s - 1
    let mut ranks = vec![0usize; top + 2];
    for s in (from + 1).max(1)..=top {
        let m = boundary_between(&groups[s], &groups[s - 1], &index_of(&groups[s - 1]));
        ranks[s] = rank_in(&m, mode, meter)?;
    }
    let mut betti = vec![0u64; top];
    for i in from..top {
        let s = i + 1;
        betti[i] = (groups[s].len() - ranks[s] - ranks[s + 1]) as u64;
    }
    Some(betti)
}

pub fn reduced_betti(complex: &SimplicialComplex, mode: ArithmeticMode) -> HomologyProfile {
    reduced_betti_with_budget(complex, mode, SearchBudget::UNBOUNDED)
        .expect("unbounded budget cannot run out")
}

/// `None` when the elimination exceeds the budget (one node per pivot).
pub fn reduced_betti_with_budget(
    complex: &SimplicialComplex,
    mode: ArithmeticMode,
    budget: SearchBudget,
) -> Option<HomologyProfile> {
    let mut meter = budget.meter();
    let groups = complex.faces_by_size();
    let betti = betti_from_groups(&groups, 0, mode, &mut meter)?;
    Some(HomologyProfile {
        reduced_betti: betti,
        arithmetic_mode: mode,
        exact: mode == ArithmeticMode::ExactRational,
        empty_complex: complex.is_empty(),
    })
}

/// Compares prime-field and rational profiles; a mismatch signals torsion
/// whose order the prime divides.
pub fn torsion_warning(complex: &SimplicialComplex, p: u64) -> Option<String> {
    let exact = reduced_betti(complex, ArithmeticMode::ExactRational);
    let modp = reduced_betti(complex, ArithmeticMode::PrimeField(p));
    (exact.reduced_betti != modp.reduced_betti).then(|| {
        format!(
            "Betti numbers mod {p} {:?} differ from rational {:?}",
            modp.reduced_betti, exact.reduced_betti
        )
    })
}

/// Reduced Euler characteristic from the face counts: `Σ (-1)^i f_i - 1`
/// over `i >= 0`.
pub fn reduced_euler_characteristic(complex: &SimplicialComplex) -> i64 {
    complex
        .f_vector()
        .iter()
        .enumerate()
        .map(|(s, &n)| if s % 2 == 1 { n as i64 } else { -(n as i64) })
        .sum()
}

/// `b̃_d ≠ 0` and `b̃_i = 0` for all `i > d`.
pub fn is_d_good(profile: &HomologyProfile, d: usize) -> bool {
    profile.betti(d) != 0 && profile.reduced_betti.iter().skip(d + 1).all(|&b| b == 0)
}

/// Betti numbers of `K * L` predicted from the factors:
/// `b̃_k(K*L) = Σ_{i+j=k-1} b̃_i(K) b̃_j(L)`, indices from -1.
pub fn kunneth_join_betti(k: &HomologyProfile, l: &HomologyProfile) -> Vec<u64> {
    let (a, b) = (k.extended(), l.extended());
    let mut conv = vec![0u64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            conv[i + j] += x * y;
        }
    }
    // conv[s] is b̃_{s-1}; drop degree -1 and trailing zeros past the join's dim
    conv.remove(0);
    conv
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KunnethStatus {
    Agrees,
    Disagrees,
    BudgetExhausted,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KunnethCheck {
    pub status: KunnethStatus,
    pub predicted: Vec<u64>,
    pub direct: Option<Vec<u64>>,
    pub verdict: Verdict,
}

/// Checks the join Künneth identity by computing `K * L` directly.
pub fn kunneth_betti_check(
    k: &SimplicialComplex,
    l: &SimplicialComplex,
    budget: SearchBudget,
) -> Result<KunnethCheck> {
    let pk = reduced_betti(k, ArithmeticMode::ExactRational);
    let pl = reduced_betti(l, ArithmeticMode::ExactRational);
    let mut predicted = kunneth_join_betti(&pk, &pl);
    let joined = join(k, l)?;
    let len = (joined.dim() + 1).max(0) as usize;
    predicted.resize(len.max(predicted.len()), 0);
    let Some(direct) = reduced_betti_with_budget(&joined, ArithmeticMode::ExactRational, budget)
    else {
        return Ok(KunnethCheck {
            status: KunnethStatus::BudgetExhausted,
            predicted,
            direct: None,
            verdict: Verdict::from_violations(vec!["join homology exceeded the budget".into()]),
        });
    };
    let mut direct_b = direct.reduced_betti;
    direct_b.resize(predicted.len(), 0);
    let violations: Vec<String> = predicted
        .iter()
        .zip(&direct_b)
        .enumerate()
        .filter(|(_, (p, d))| p != d)
        .map(|(i, (p, d))| format!("b̃_{i}: identity predicts {p}, join has {d}"))
        .collect();
    Ok(KunnethCheck {
        status: if violations.is_empty() {
            KunnethStatus::Agrees
        } else {
            KunnethStatus::Disagrees
        },
        predicted,
        direct: Some(direct_b),
        verdict: Verdict::from_violations(violations),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CollapseStatus {
    Proved,
    Refuted,
    BudgetExhausted,
}

/// One d-collapse: remove every face containing `free_face`, whose unique
/// maximal coface is `maximal_face`. Faces are vertex index lists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollapseStep {
    pub free_face: Vec<usize>,
    pub maximal_face: Vec<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollapseSequence {
    pub steps: Vec<CollapseStep>,
}

/// Which free faces a d-collapse may remove.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollapseRules {
    pub d: usize,
    /// Only faces of size exactly `d` when set; otherwise size at most `d`.
    pub strict: bool,
}

impl CollapseRules {
    pub fn new(d: usize) -> Self {
        Self { d, strict: false }
    }

    fn allows(&self, size: usize) -> bool {
        if self.strict {
            size == self.d
        } else {
            size <= self.d
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollapseOutcome {
    pub status: CollapseStatus,
    pub sequence: Option<CollapseSequence>,
    /// Set when refuted without search because some `b̃_i`, `i >= d`, is
    /// nonzero (d-collapses never change those).
    pub obstruction: Option<String>,
    pub nodes: u64,
}

fn is_terminal(facets: &[Face], d: usize) -> bool {
    facets.iter().all(|&f| face_size(f) < d)
}

/// Free faces allowed by the rules, lexicographically sorted, each with its
/// unique maximal coface.
fn free_faces(facets: &[Face], rules: CollapseRules) -> Vec<(Face, Face)> {
    let mut out = Vec::new();
    for &t in facets {
        let mut sub = t;
        loop {
            if rules.allows(face_size(sub))
                && facets.iter().filter(|&&g| g & sub == sub).count() == 1
            {
                out.push((sub, t));
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & t;
        }
    }
    out.sort_unstable_by(|a, b| lex_cmp(a.0, b.0));
    out
}

fn apply_collapse(facets: &[Face], free: Face, maximal: Face) -> Vec<Face> {
    let mut next: Vec<Face> = facets.iter().copied().filter(|&f| f != maximal).collect();
    next.extend(face_vertices(free).map(|v| maximal & !(1 << v)));
    maximal_faces(next)
}

struct CollapseSearch {
    rules: CollapseRules,
    meter: Meter,
    visited: HashSet<Vec<Face>>,
    path: Vec<(Face, Face)>,
}

impl CollapseSearch {
    /// `Some(true)` on success, `Some(false)` when exhausted below this state,
    /// `None` when the budget ran out.
    fn dfs(&mut self, facets: Vec<Face>) -> Option<bool> {
        if is_terminal(&facets, self.rules.d) {
            return Some(true);
        }
        if !self.meter.tick() {
            return None;
        }
        if !self.visited.insert(facets.clone()) {
            return Some(false);
        }
        for (free, maximal) in free_faces(&facets, self.rules) {
            self.path.push((free, maximal));
            match self.dfs(apply_collapse(&facets, free, maximal)) {
                Some(true) => return Some(true),
                None => return None,
                Some(false) => {}
            }
            self.path.pop();
        }
        Some(false)
    }
}

fn to_indices(face: Face) -> Vec<usize> {
    face_vertices(face).collect()
}

/// Depth-first search over d-collapse sequences with memoized states.
pub fn is_d_collapsible(
    complex: &SimplicialComplex,
    rules: CollapseRules,
    budget: SearchBudget,
) -> CollapseOutcome {
    let profile = reduced_betti(complex, ArithmeticMode::ExactRational);
    if let Some((i, b)) = profile
        .reduced_betti
        .iter()
        .enumerate()
        .skip(rules.d)
        .find(|(_, &b)| b != 0)
    {
        return CollapseOutcome {
            status: CollapseStatus::Refuted,
            sequence: None,
            obstruction: Some(format!("reduced Betti number b̃_{i} = {b} with {i} >= d")),
            nodes: 0,
        };
    }
    let mut search = CollapseSearch {
        rules,
        meter: budget.meter(),
        visited: HashSet::new(),
        path: Vec::new(),
    };
    let result = search.dfs(complex.facets().to_vec());
    let nodes = search.meter.nodes();
    match result {
        Some(true) => CollapseOutcome {
            status: CollapseStatus::Proved,
            sequence: Some(CollapseSequence {
                steps: search
                    .path
                    .iter()
                    .map(|&(s, t)| CollapseStep {
                        free_face: to_indices(s),
                        maximal_face: to_indices(t),
                    })
                    .collect(),
            }),
            obstruction: None,
            nodes,
        },
        Some(false) => CollapseOutcome {
            status: CollapseStatus::Refuted,
            sequence: None,
            obstruction: None,
            nodes,
        },
        None => CollapseOutcome {
            status: CollapseStatus::BudgetExhausted,
            sequence: None,
            obstruction: None,
            nodes,
        },
    }
}

/// Replays a collapse sequence from scratch.
pub fn verify_collapse_sequence(
    complex: &SimplicialComplex,
    rules: CollapseRules,
    seq: &CollapseSequence,
) -> Result<Verdict> {
    let mut facets = complex.facets().to_vec();
    let mut out = Vec::new();
    for (k, step) in seq.steps.iter().enumerate() {
        for &v in step.free_face.iter().chain(&step.maximal_face) {
            check_index("vertex", v, complex.vertex_count())?;
        }
        let free = step.free_face.iter().fold(0u64, |a, &v| a | (1 << v));
        let maximal = step.maximal_face.iter().fold(0u64, |a, &v| a | (1 << v));
        if !rules.allows(face_size(free)) {
            out.push(format!("step {k}: free face has size {}", face_size(free)));
        }
        if free & maximal != free {
            out.push(format!("step {k}: free face not inside its maximal face"));
        }
        if !facets.contains(&maximal) {
            out.push(format!("step {k}: maximal face is not a current facet"));
        }
        let cofaces = facets.iter().filter(|&&g| g & free == free).count();
        if cofaces != 1 {
            out.push(format!("step {k}: face lies in {cofaces} facets, not exactly one"));
        }
        if !out.is_empty() {
            return Ok(Verdict::from_violations(out));
        }
        facets = apply_collapse(&facets, free, maximal);
    }
    if !is_terminal(&facets, rules.d) {
        out.push(format!(
            "sequence ends with a face of size >= {}",
            rules.d
        ));
    }
    Ok(Verdict::from_violations(out))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LerayStatus {
    Holds,
    Fails,
    BudgetExhausted,
}

/// Induced subcomplex on `vertices` with `b̃_dimension ≠ 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LerayWitness {
    pub vertices: Vec<usize>,
    pub dimension: usize,
    pub betti: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LerayVerdict {
    pub d: usize,
    pub status: LerayStatus,
    pub witness: Option<LerayWitness>,
    /// Whether every vertex subset was examined (as opposed to sampled).
    pub exhaustive: bool,
    pub subsets_checked: u64,
}

/// Largest vertex count for the exhaustive subset scan.
pub const LERAY_EXHAUSTIVE_CAP: usize = 24;

/// Sampling-mode draws when the budget gives no node limit.
pub const DEFAULT_LERAY_SAMPLES: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LerayOptions {
    pub exhaustive_cap: usize,
    pub seed: u64,
}

impl Default for LerayOptions {
    fn default() -> Self {
        Self {
            exhaustive_cap: LERAY_EXHAUSTIVE_CAP,
            seed: 0,
        }
    }
}

/// Faces of the complex grouped by size, filtered to a vertex mask.
struct InducedFaces {
    groups: Vec<Vec<Face>>,
}

impl InducedFaces {
    fn new(complex: &SimplicialComplex) -> Self {
        Self {
            groups: complex.faces_by_size(),
        }
    }

    fn restrict(&self, mask: Face) -> Vec<Vec<Face>> {
        let mut out: Vec<Vec<Face>> = self
            .groups
            .iter()
            .map(|g| g.iter().copied().filter(|&f| f & mask == f).collect())
            .collect();
        while out.len() > 1 && out.last().is_some_and(Vec::is_empty) {
            out.pop();
        }
        out
    }

    /// First `(i, b̃_i)` with `i >= from` and `b̃_i ≠ 0`, highest `i` first.
    fn top_nonvanishing(&self, mask: Face, from: usize, meter: &mut Meter) -> Option<Option<(usize, u64)>> {
        let groups = self.restrict(mask);
        // b̃_i needs faces of size i + 1
        if groups.len() < from + 2 {
            return Some(None);
        }
        let betti = betti_from_groups(&groups, from, ArithmeticMode::ExactRational, meter)?;
        Some(
            betti
                .iter()
                .enumerate()
                .skip(from)
                .rev()
                .find(|(_, &b)| b != 0)
                .map(|(i, &b)| (i, b)),
        )
    }
}

/// Subsets of `0..n` ordered by decreasing size (Gosper's hack per size).
fn subsets_by_decreasing_size(n: usize) -> impl Iterator<Item = Face> {
    (0..=n).rev().flat_map(move |k| {
        let limit: u64 = 1 << n;
        let mut next = if k == 0 { Some(0u64) } else { Some((1u64 << k) - 1) };
        std::iter::from_fn(move || {
            let cur = next?;
            if k == 0 {
                next = None;
                return Some(cur);
            }
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            let succ = (((r ^ cur) >> 2) / c) | r;
            next = (succ < limit).then_some(succ);
            Some(cur)
        })
    })
}

pub fn leray_check(complex: &SimplicialComplex, d: usize, budget: SearchBudget) -> LerayVerdict {
    leray_check_with(complex, d, budget, LerayOptions::default())
}

/// Checks that every induced subcomplex has `b̃_i = 0` for all `i >= d`.
///
/// Up to `exhaustive_cap` vertices every subset is scanned, largest first;
/// beyond that random subsets are sampled, which can only find failures.
pub fn leray_check_with(
    complex: &SimplicialComplex,
    d: usize,
    budget: SearchBudget,
    options: LerayOptions,
) -> LerayVerdict {
    let n = complex.vertex_count();
    let faces = InducedFaces::new(complex);
    let mut meter = budget.meter();
    let mut checked = 0u64;
    let exhaustive = n <= options.exhaustive_cap;
    let mut visit = |mask: Face, meter: &mut Meter| -> Option<Option<LerayWitness>> {
        checked += 1;
        let hit = faces.top_nonvanishing(mask, d, meter)?;
        Some(hit.map(|(i, b)| LerayWitness {
            vertices: face_vertices(mask).collect(),
            dimension: i,
            betti: b,
        }))
    };
    let verdict = |status, witness, checked| LerayVerdict {
        d,
        status,
        witness,
        exhaustive,
        subsets_checked: checked,
    };
    if exhaustive {
        for mask in subsets_by_decreasing_size(n) {
            if !meter.tick() {
                return verdict(LerayStatus::BudgetExhausted, None, checked);
            }
            match visit(mask, &mut meter) {
                None => return verdict(LerayStatus::BudgetExhausted, None, checked),
                Some(Some(w)) => return verdict(LerayStatus::Fails, Some(w), checked),
                Some(None) => {}
            }
        }
        verdict(LerayStatus::Holds, None, checked)
    } else {
        let samples = budget.max_nodes.unwrap_or(DEFAULT_LERAY_SAMPLES);
        let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
        // the full vertex set first, then uniform subsets
        for k in 0..samples {
            if !meter.tick() {
                break;
            }
            let mask = if k == 0 {
                complex.vertex_mask()
            } else {
                rng.random::<u64>() & complex.vertex_mask()
            };
            match visit(mask, &mut meter) {
                None => break,
                Some(Some(w)) => return verdict(LerayStatus::Fails, Some(w), checked),
                Some(None) => {}
            }
        }
        verdict(LerayStatus::BudgetExhausted, None, checked)
    }
}

/// Recomputes the witness's homology from the public constructors.
pub fn verify_leray_witness(
    complex: &SimplicialComplex,
    d: usize,
    witness: &LerayWitness,
) -> Result<Verdict> {
    let sub = induced_subcomplex(complex, &witness.vertices)?;
    let profile = reduced_betti(&sub, ArithmeticMode::ExactRational);
    let mut out = Vec::new();
    if witness.dimension < d {
        out.push(format!("dimension {} is below d = {d}", witness.dimension));
    }
    let b = profile.betti(witness.dimension);
    if b == 0 {
        out.push(format!("b̃_{} of the induced subcomplex is 0", witness.dimension));
    } else if b != witness.betti {
        out.push(format!(
            "b̃_{} is {b}, witness claims {}",
            witness.dimension, witness.betti
        ));
    }
    Ok(Verdict::from_violations(out))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LerayNumber {
    /// Least `d` for which the complex is d-Leray (a lower bound when not
    /// exact).
    pub value: usize,
    pub exact: bool,
    /// Induced subcomplex realizing `value - 1`, when `value > 0`.
    pub witness: Option<LerayWitness>,
    pub subsets_checked: u64,
}

pub fn leray_number(complex: &SimplicialComplex, budget: SearchBudget) -> LerayNumber {
    leray_number_with(complex, budget, LerayOptions::default())
}

/// One more than the highest nonvanishing reduced homology over all induced
/// subcomplexes. Each subset only needs dimensions above the current best.
pub fn leray_number_with(
    complex: &SimplicialComplex,
    budget: SearchBudget,
    options: LerayOptions,
) -> LerayNumber {
    let n = complex.vertex_count();
    let faces = InducedFaces::new(complex);
    let mut meter = budget.meter();
    let exhaustive = n <= options.exhaustive_cap;
    let mut best: Option<LerayWitness> = None;
    let mut checked = 0u64;
    let mut completed = true;
    let mut consider = |mask: Face, best: &mut Option<LerayWitness>, meter: &mut Meter| -> bool {
        checked += 1;
        let from = best.as_ref().map_or(0, |w| w.dimension + 1);
        match faces.top_nonvanishing(mask, from, meter) {
            None => false,
            Some(Some((i, b))) => {
                *best = Some(LerayWitness {
                    vertices: face_vertices(mask).collect(),
                    dimension: i,
                    betti: b,
                });
                true
            }
            Some(None) => true,
        }
    };
    if exhaustive {
        for mask in subsets_by_decreasing_size(n) {
            if !meter.tick() || !consider(mask, &mut best, &mut meter) {
                completed = false;
                break;
            }
        }
    } else {
        completed = false;
        let samples = budget.max_nodes.unwrap_or(DEFAULT_LERAY_SAMPLES);
        let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
        for k in 0..samples {
            let mask = if k == 0 {
                complex.vertex_mask()
            } else {
                rng.random::<u64>() & complex.vertex_mask()
            };
            if !meter.tick() || !consider(mask, &mut best, &mut meter) {
                break;
            }
        }
    }
    LerayNumber {
        value: best.as_ref().map_or(0, |w| w.dimension + 1),
        exact: completed,
        witness: best,
        subsets_checked: checked,
    }
}

/// Checks `d` against the exhaustive cap before any scan, for callers that
/// require exact answers.
pub fn require_exhaustive(complex: &SimplicialComplex, options: LerayOptions) -> Result<()> {
    if complex.vertex_count() > options.exhaustive_cap {
        return Err(Error::CapExceeded(format!(
            "{} vertices exceed the exhaustive Leray cap {}",
            complex.vertex_count(),
            options.exhaustive_cap
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{gen_cycle_complex, gen_simplex, gen_torus_grid_complex};

    fn exact(k: &SimplicialComplex) -> Vec<u64> {
        reduced_betti(k, ArithmeticMode::ExactRational).reduced_betti
    }

    #[test]
    fn boundary_examples() {
        let c3 = gen_cycle_complex(3).unwrap();
        let d1 = boundary_matrix(&c3, 1);
        assert_eq!((d1.rows, d1.cols), (3, 3));
        let mut meter = SearchBudget::UNBOUNDED.meter();
        assert_eq!(rank_exact(&d1, &mut meter), Some(2));
        let d0 = boundary_matrix(&c3, 0);
        assert_eq!(d0.to_dense(), vec![vec![1, 1, 1]]);
        let dm1 = boundary_matrix(&c3, -1);
        assert_eq!((dm1.rows, dm1.cols), (0, 1));
        let tet = gen_simplex(4).unwrap();
        for i in -1..4 {
            let composed = boundary_matrix(&tet, i).multiply_dense(&boundary_matrix(&tet, i + 1));
            assert!(composed.iter().flatten().all(|&v| v == 0), "dim {i}");
        }
    }

    #[test]
    fn betti_examples() {
        assert_eq!(exact(&gen_simplex(4).unwrap()), vec![0, 0, 0, 0]);
        assert_eq!(exact(&gen_cycle_complex(3).unwrap()), vec![0, 1]);
        let torus = gen_torus_grid_complex(4, 2).unwrap();
        assert_eq!(exact(&torus), vec![0, 2, 1, 0]);
        let c3 = gen_cycle_complex(3).unwrap();
        assert_eq!(exact(&join(&c3, &c3).unwrap()), vec![0, 0, 0, 1]);
        let two_points =
            SimplicialComplex::from_masks(vec!["a".into(), "b".into()], vec![1, 2]).unwrap();
        assert_eq!(exact(&two_points), vec![1]);
        let empty = SimplicialComplex::from_masks(vec![], vec![]).unwrap();
        let p = reduced_betti(&empty, ArithmeticMode::ExactRational);
        assert!(p.reduced_betti.is_empty() && p.empty_complex);
    }

    #[test]
    fn prime_mode_matches_and_is_flagged() {
        let torus = gen_torus_grid_complex(4, 2).unwrap();
        let p = reduced_betti(&torus, ArithmeticMode::prime());
        assert!(!p.exact);
        assert_eq!(p.reduced_betti, vec![0, 2, 1, 0]);
        assert!(torsion_warning(&torus, DEFAULT_PRIME).is_none());
    }

    #[test]
    fn euler_characteristic_matches_betti() {
        let torus = gen_torus_grid_complex(4, 2).unwrap();
        let alt: i64 = exact(&torus)
            .iter()
            .enumerate()
            .map(|(i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum();
        assert_eq!(alt, reduced_euler_characteristic(&torus));
    }

    #[test]
    fn goodness_examples() {
        let torus = gen_torus_grid_complex(4, 2).unwrap();
        let p = reduced_betti(&torus, ArithmeticMode::ExactRational);
        assert!(is_d_good(&p, 2));
        assert!(!is_d_good(&p, 1));
        let s = reduced_betti(&gen_simplex(3).unwrap(), ArithmeticMode::ExactRational);
        assert!((0..4).all(|d| !is_d_good(&s, d)));
    }

    #[test]
    fn kunneth_examples() {
        let c3 = gen_cycle_complex(3).unwrap();
        let r = kunneth_betti_check(&c3, &c3, SearchBudget::UNBOUNDED).unwrap();
        assert_eq!(r.status, KunnethStatus::Agrees);
        assert_eq!(r.predicted, vec![0, 0, 0, 1]);
        let point = gen_simplex(1).unwrap();
        let r = kunneth_betti_check(&c3, &point, SearchBudget::UNBOUNDED).unwrap();
        assert_eq!(r.status, KunnethStatus::Agrees);
        assert!(r.predicted.iter().all(|&b| b == 0));
    }

    #[test]
    fn collapse_examples() {
        for n in 1..5 {
            let s = gen_simplex(n).unwrap();
            let out = is_d_collapsible(&s, CollapseRules::new(1), SearchBudget::UNBOUNDED);
            assert_eq!(out.status, CollapseStatus::Proved, "simplex {n}");
            let seq = out.sequence.unwrap();
            assert!(verify_collapse_sequence(&s, CollapseRules::new(1), &seq).unwrap().ok);
        }
        let c3 = gen_cycle_complex(3).unwrap();
        let one = is_d_collapsible(&c3, CollapseRules::new(1), SearchBudget::UNBOUNDED);
        assert_eq!(one.status, CollapseStatus::Refuted);
        let two = is_d_collapsible(&c3, CollapseRules::new(2), SearchBudget::UNBOUNDED);
        assert_eq!(two.status, CollapseStatus::Proved);
        let torus = gen_torus_grid_complex(4, 2).unwrap();
        let t = is_d_collapsible(&torus, CollapseRules::new(2), SearchBudget::nodes(10_000));
        assert_ne!(t.status, CollapseStatus::Proved);
    }

    #[test]
    fn collapse_search_without_homological_shortcut() {
        // a 4-cycle has b̃_1 = 1, so d = 1 is refuted by the obstruction;
        // a path of three edges is acyclic but needs the search
        let path = SimplicialComplex::from_masks(
            (0..4).map(|i| i.to_string()).collect(),
            vec![0b0011, 0b0110, 0b1100],
        )
        .unwrap();
        let out = is_d_collapsible(&path, CollapseRules::new(1), SearchBudget::UNBOUNDED);
        assert_eq!(out.status, CollapseStatus::Proved);
        assert!(out.obstruction.is_none());
        let strict = is_d_collapsible(
            &path,
            CollapseRules { d: 1, strict: true },
            SearchBudget::UNBOUNDED,
        );
        assert_eq!(strict.status, CollapseStatus::Proved);
    }

    #[test]
    fn tampered_collapse_sequence_fails() {
        let tri = gen_simplex(3).unwrap();
        let out = is_d_collapsible(&tri, CollapseRules::new(1), SearchBudget::UNBOUNDED);
        let mut seq = out.sequence.unwrap();
        seq.steps.pop();
        assert!(!verify_collapse_sequence(&tri, CollapseRules::new(1), &seq).unwrap().ok);
    }

    #[test]
    fn leray_examples() {
        let s = gen_simplex(4).unwrap();
        assert_eq!(leray_check(&s, 1, SearchBudget::UNBOUNDED).status, LerayStatus::Holds);
        let c3 = gen_cycle_complex(3).unwrap();
        assert_eq!(leray_check(&c3, 2, SearchBudget::UNBOUNDED).status, LerayStatus::Holds);
        let v = leray_check(&c3, 1, SearchBudget::UNBOUNDED);
        assert_eq!(v.status, LerayStatus::Fails);
        let w = v.witness.unwrap();
        assert_eq!((w.vertices.len(), w.dimension), (3, 1));
        assert!(verify_leray_witness(&c3, 1, &w).unwrap().ok);
    }

    #[test]
    fn torus_leray() {
        let torus = gen_torus_grid_complex(4, 2).unwrap();
        let v = leray_check(&torus, 2, SearchBudget::UNBOUNDED);
        assert_eq!(v.status, LerayStatus::Fails);
        let w = v.witness.unwrap();
        assert_eq!((w.vertices.len(), w.dimension, w.betti), (16, 2, 1));
        assert!(verify_leray_witness(&torus, 2, &w).unwrap().ok);
    }

    #[test]
    fn leray_number_examples() {
        assert_eq!(leray_number(&gen_simplex(3).unwrap(), SearchBudget::UNBOUNDED).value, 0);
        let c3 = leray_number(&gen_cycle_complex(3).unwrap(), SearchBudget::UNBOUNDED);
        assert_eq!((c3.value, c3.exact), (2, true));
    }

    #[test]
    fn subset_order_is_by_decreasing_size() {
        let all: Vec<Face> = subsets_by_decreasing_size(4).collect();
        assert_eq!(all.len(), 16);
        assert_eq!(all[0], 0b1111);
        assert_eq!(*all.last().unwrap(), 0);
        assert!(all.windows(2).all(|w| face_size(w[0]) >= face_size(w[1])));
    }
}
