//! Exact computation of the comatching numbers, the Helly number and the
//! colorful Helly number of a finite set system, with certificates.
//!
//! The colorful Helly number is computed over instances whose families are
//! inclusion-minimal empty subfamilies, with repetition across positions.
//! Growing a family can only help a transversal reach an empty intersection,
//! and every admissible family contains a minimal empty subfamily, so this
//! restriction loses nothing. Families of finite systems are finite, so
//! dropping the finiteness requirement on the families changes nothing here.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::budget::{Meter, SearchBudget};
use crate::error::{Error, Result};
use crate::system::{
    intersect_subfamily, verify_comatching_with_intersection, Comatching,
    ComatchingWithIntersection, SetSystem, SubfamilySelection, Verdict,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComatchingResult {
    pub tau: usize,
    pub certificate: Comatching,
    /// `false` when the budget ran out; `tau` is then only a lower bound.
    pub exact: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionComatchingResult {
    pub tau_prime: usize,
    /// Absent only when the ground set is empty.
    pub certificate: Option<ComatchingWithIntersection>,
    pub exact: bool,
}

struct ComatchingSearch<'a> {
    system: &'a SetSystem,
    meter: Meter,
    current: Vec<(usize, usize)>,
    best: Vec<(usize, usize)>,
}

impl ComatchingSearch<'_> {
    /// `common` is the intersection of the chosen members, `required` the set
    /// of chosen points; members are taken in increasing index order.
    fn dfs(&mut self, allowed: &BitSet, start: usize, common: &BitSet, required: &BitSet) {
        if !self.meter.tick() {
            return;
        }
        if self.current.len() > self.best.len() {
            self.best = self.current.clone();
        }
        let mut candidates = Vec::new();
        let mut reachable = BitSet::new(self.system.ground_len());
        for j in allowed.iter().filter(|&j| j >= start) {
            let member = self.system.member(j);
            if !required.is_subset(member) {
                continue;
            }
            let free = common.difference(member);
            if free.is_empty() {
                continue;
            }
            reachable.union_with(&free);
            candidates.push((j, free));
        }
        let bound = self.current.len() + candidates.len().min(reachable.len());
        if bound <= self.best.len() {
            return;
        }
        for (idx, (j, free)) in candidates.iter().enumerate() {
            if self.current.len() + candidates.len() - idx <= self.best.len() {
                return;
            }
            let next_common = common.intersection(self.system.member(*j));
            for x in free {
                let mut next_required = required.clone();
                next_required.insert(x);
                self.current.push((x, *j));
                self.dfs(allowed, j + 1, &next_common, &next_required);
                self.current.pop();
                if self.meter.exhausted() {
                    return;
                }
            }
        }
    }
}

/// Largest comatching, found by branch-and-bound over `(point, member)` pairs.
pub fn comatching_number(system: &SetSystem, budget: SearchBudget) -> ComatchingResult {
    let mut search = ComatchingSearch {
        system,
        meter: budget.meter(),
        current: Vec::new(),
        best: Vec::new(),
    };
    let all = BitSet::full(system.member_count());
    let required = BitSet::new(system.ground_len());
    search.dfs(&all, 0, &system.full_ground(), &required);
    ComatchingResult {
        tau: search.best.len(),
        certificate: Comatching { pairs: search.best },
        exact: !search.meter.exhausted(),
    }
}

/// Largest comatching with intersection.
///
/// For a common point `c`, every matched member contains `c`, so the problem
/// reduces to an ordinary comatching among the members through `c`.
pub fn comatching_with_intersection_number(
    system: &SetSystem,
    budget: SearchBudget,
) -> IntersectionComatchingResult {
    let mut search = ComatchingSearch {
        system,
        meter: budget.meter(),
        current: Vec::new(),
        best: Vec::new(),
    };
    let mut best: Option<ComatchingWithIntersection> = None;
    let required = BitSet::new(system.ground_len());
    for c in 0..system.ground_len() {
        let through = system.point_members(c);
        let best_len = best.as_ref().map_or(0, |b| b.base.len());
        if best.is_some() && through.len() <= best_len {
            continue;
        }
        // seed with the incumbent so the bound prunes against it
        search.best = best
            .as_ref()
            .map(|b| b.base.pairs.clone())
            .unwrap_or_default();
        search.dfs(through, 0, &system.full_ground(), &required);
        if best.is_none() || search.best.len() > best_len {
            best = Some(ComatchingWithIntersection {
                base: Comatching {
                    pairs: search.best.clone(),
                },
                common_point: c,
            });
        }
        if search.meter.exhausted() {
            break;
        }
    }
    IntersectionComatchingResult {
        tau_prime: best.as_ref().map_or(0, |b| b.base.len()),
        certificate: best,
        exact: !search.meter.exhausted(),
    }
}

/// All inclusion-minimal subfamilies with empty intersection, in
/// lexicographic order of their sorted index lists.
pub fn minimal_empty_subfamilies(system: &SetSystem) -> Vec<SubfamilySelection> {
    let n = system.member_count();
    // suffix[j] = intersection of members j.., used to skip branches that can
    // never become empty
    let mut suffix = vec![system.full_ground(); n + 1];
    for j in (0..n).rev() {
        suffix[j] = suffix[j + 1].intersection(system.member(j));
    }
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    minimal_rec(system, &suffix, 0, &system.full_ground(), &mut chosen, &mut out);
    out.sort();
    out
}

fn minimal_rec(
    system: &SetSystem,
    suffix: &[BitSet],
    start: usize,
    inter: &BitSet,
    chosen: &mut Vec<usize>,
    out: &mut Vec<SubfamilySelection>,
) {
    if inter.intersects(&suffix[start]) {
        return;
    }
    for j in start..system.member_count() {
        let next = inter.intersection(system.member(j));
        if next.is_empty() {
            // chosen itself intersects; check the other maximal proper subsets
            let minimal = (0..chosen.len()).all(|skip| {
                let mut acc = system.member(j).clone();
                for (k, &m) in chosen.iter().enumerate() {
                    if k != skip {
                        acc.intersect_with(system.member(m));
                    }
                }
                !acc.is_empty()
            });
            if minimal {
                out.push(SubfamilySelection::new(
                    chosen.iter().copied().chain(std::iter::once(j)),
                ));
            }
        } else {
            chosen.push(j);
            minimal_rec(system, suffix, j + 1, &next, chosen, out);
            chosen.pop();
        }
    }
}

/// Helly number: the largest minimal empty subfamily, or 1 when every
/// subfamily intersects.
pub fn helly_number(system: &SetSystem) -> usize {
    minimal_empty_subfamilies(system)
        .iter()
        .map(SubfamilySelection::len)
        .max()
        .unwrap_or(1)
}

/// Subfamilies `F_1..F_N` (one per position) each with empty intersection.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColorfulInstance {
    pub families: Vec<SubfamilySelection>,
}

impl ColorfulInstance {
    pub fn new(families: Vec<SubfamilySelection>) -> Self {
        Self { families }
    }

    pub fn len(&self) -> usize {
        self.families.len()
    }

    pub fn is_empty(&self) -> bool {
        self.families.is_empty()
    }

    pub fn validate(&self, system: &SetSystem) -> Result<()> {
        for (i, fam) in self.families.iter().enumerate() {
            if fam.is_empty() {
                return Err(Error::Invalid(format!("family {i} is empty")));
            }
            if !intersect_subfamily(system, fam)?.is_empty() {
                return Err(Error::Invalid(format!(
                    "family {i} has a nonempty intersection"
                )));
            }
        }
        Ok(())
    }
}

/// Either an empty colorful transversal or a comatching-with-intersection of
/// size equal to the number of positions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DichotomyOutcome {
    /// One member index per position; their intersection is empty.
    Transversal(Vec<usize>),
    Witness(ComatchingWithIntersection),
}

impl DichotomyOutcome {
    pub fn is_transversal(&self) -> bool {
        matches!(self, DichotomyOutcome::Transversal(_))
    }
}

/// Walks transversals towards an empty intersection, or stops at a
/// comatching-with-intersection witness.
///
/// While the current intersection `I` is nonempty, look for a position `i`
/// whose set contains the intersection of the others; swapping it for a
/// member of its family that avoids some `x ∈ I` strictly shrinks `I`. If no
/// such position exists, each position yields a point in the other sets but
/// not its own, and any point of `I` is a common point.
pub fn colorful_transversal_dichotomy(
    system: &SetSystem,
    inst: &ColorfulInstance,
) -> Result<DichotomyOutcome> {
    inst.validate(system)?;
    let n = inst.len();
    let mut choice: Vec<usize> = inst.families.iter().map(|f| f.indices()[0]).collect();
    loop {
        // prefix[i] = ∩ of choices < i, suffix[i] = ∩ of choices >= i
        let mut prefix = vec![system.full_ground(); n + 1];
        for i in 0..n {
            prefix[i + 1] = prefix[i].intersection(system.member(choice[i]));
        }
        let mut suffix = vec![system.full_ground(); n + 1];
        for i in (0..n).rev() {
            suffix[i] = suffix[i + 1].intersection(system.member(choice[i]));
        }
        let inter = &prefix[n];
        let Some(x) = inter.first() else {
            return Ok(DichotomyOutcome::Transversal(choice));
        };
        let others: Vec<BitSet> = (0..n)
            .map(|i| prefix[i].intersection(&suffix[i + 1]))
            .collect();
        match (0..n).find(|&i| others[i].is_subset(system.member(choice[i]))) {
            Some(i) => {
                let replacement = inst.families[i]
                    .indices()
                    .iter()
                    .copied()
                    .find(|&f| !system.member(f).contains(x))
                    .ok_or_else(|| {
                        Error::Inconsistent(format!("family {i} has no member avoiding {x}"))
                    })?;
                choice[i] = replacement;
            }
            None => {
                let pairs = (0..n)
                    .map(|i| {
                        let point = others[i]
                            .difference(system.member(choice[i]))
                            .first()
                            .expect("position is not dominated");
                        (point, choice[i])
                    })
                    .collect();
                return Ok(DichotomyOutcome::Witness(ComatchingWithIntersection {
                    base: Comatching { pairs },
                    common_point: x,
                }));
            }
        }
    }
}

/// Re-checks either arm of a dichotomy outcome against its instance.
pub fn verify_dichotomy_outcome(
    system: &SetSystem,
    inst: &ColorfulInstance,
    outcome: &DichotomyOutcome,
) -> Result<Verdict> {
    let mut out = Vec::new();
    match outcome {
        DichotomyOutcome::Transversal(choice) => {
            if choice.len() != inst.len() {
                out.push(format!(
                    "transversal has {} entries for {} positions",
                    choice.len(),
                    inst.len()
                ));
            }
            for (i, (&f, fam)) in choice.iter().zip(&inst.families).enumerate() {
                if !fam.indices().contains(&f) {
                    out.push(format!("position {i}: member {f} not in its family"));
                }
            }
            let sel = SubfamilySelection::new(choice.iter().copied());
            if !intersect_subfamily(system, &sel)?.is_empty() {
                out.push("transversal has a nonempty intersection".into());
            }
        }
        DichotomyOutcome::Witness(w) => {
            if w.base.len() != inst.len() {
                out.push(format!(
                    "witness has size {} for {} positions",
                    w.base.len(),
                    inst.len()
                ));
            }
            for (i, ((_, f), fam)) in w.base.pairs.iter().zip(&inst.families).enumerate() {
                if !fam.indices().contains(f) {
                    out.push(format!("position {i}: member {f} not in its family"));
                }
            }
            out.extend(verify_comatching_with_intersection(system, w)?.violations);
        }
    }
    Ok(Verdict::from_violations(out))
}

/// Exhaustive search for an empty colorful transversal.
pub fn find_empty_transversal(
    system: &SetSystem,
    inst: &ColorfulInstance,
) -> Result<Option<Vec<usize>>> {
    for fam in &inst.families {
        fam.validate(system)?;
    }
    fn rec(
        system: &SetSystem,
        inst: &ColorfulInstance,
        pos: usize,
        inter: &BitSet,
        choice: &mut Vec<usize>,
    ) -> bool {
        if pos == inst.len() {
            return inter.is_empty();
        }
        for &f in inst.families[pos].indices() {
            choice.push(f);
            if rec(system, inst, pos + 1, &inter.intersection(system.member(f)), choice) {
                return true;
            }
            choice.pop();
        }
        false
    }
    let mut choice = Vec::new();
    Ok(rec(system, inst, 0, &system.full_ground(), &mut choice).then_some(choice))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColorfulHellyResult {
    pub eta: usize,
    /// `false` when the budget ran out; `eta` is then a verified lower bound.
    pub exact: bool,
    /// An `(eta - 1)`-position instance with no empty transversal.
    pub refuting_instance: Option<ColorfulInstance>,
    pub nodes: u64,
}

/// Inclusion-minimal elements, sorted, deduplicated.
fn minimal_antichain(mut sets: Vec<BitSet>) -> Vec<BitSet> {
    sets.sort_by_key(BitSet::len);
    let mut out: Vec<BitSet> = Vec::new();
    for s in sets {
        if !out.iter().any(|m| m.is_subset(&s)) {
            out.push(s);
        }
    }
    out.sort();
    out
}

struct Prefix {
    /// Indices into the minimal-empty list, non-decreasing.
    families: Vec<usize>,
    /// Minimal intersections reachable by transversals of the prefix.
    reachable: Vec<BitSet>,
}

/// Colorful Helly number by ascending the number of positions.
///
/// Level `N` holds the refuting `N`-instances (sorted multisets of minimal
/// empty subfamilies with no empty transversal). Dropping a position from a
/// refuting instance leaves a refuting instance, so level `N + 1` only
/// extends level `N`. Each candidate is first run through the dichotomy;
/// only when it produces a witness is the exact reachable-intersection check
/// needed.
pub fn colorful_helly_number(system: &SetSystem, budget: SearchBudget) -> ColorfulHellyResult {
    let mins = minimal_empty_subfamilies(system);
    let mut meter = budget.meter();
    if mins.is_empty() {
        return ColorfulHellyResult {
            eta: 1,
            exact: true,
            refuting_instance: None,
            nodes: 0,
        };
    }
    let to_instance = |fams: &[usize]| {
        ColorfulInstance::new(fams.iter().map(|&k| mins[k].clone()).collect())
    };
    let mut level = vec![Prefix {
        families: Vec::new(),
        reachable: vec![system.full_ground()],
    }];
    let mut depth = 0;
    loop {
        // state -> prefix with the smallest last index; the latter's
        // extensions include every extension of the others
        let mut next: HashMap<Vec<BitSet>, Prefix> = HashMap::new();
        for prefix in &level {
            let start = prefix.families.last().copied().unwrap_or(0);
            for k in start..mins.len() {
                if !meter.tick() {
                    return ColorfulHellyResult {
                        eta: depth + 1,
                        exact: false,
                        refuting_instance: (depth > 0)
                            .then(|| to_instance(&level[0].families)),
                        nodes: meter.nodes(),
                    };
                }
                let mut families = prefix.families.clone();
                families.push(k);
                let inst = to_instance(&families);
                match colorful_transversal_dichotomy(system, &inst) {
                    Ok(DichotomyOutcome::Transversal(_)) => continue,
                    Ok(DichotomyOutcome::Witness(_)) => {}
                    Err(e) => unreachable!("minimal empty subfamilies form valid instances: {e}"),
                }
                let mut products = Vec::new();
                let mut empty = false;
                'outer: for r in &prefix.reachable {
                    for &f in mins[k].indices() {
                        let p = r.intersection(system.member(f));
                        if p.is_empty() {
                            empty = true;
                            break 'outer;
                        }
                        products.push(p);
                    }
                }
                if empty {
                    continue;
                }
                let reachable = minimal_antichain(products);
                match next.get(&reachable) {
                    Some(existing) if existing.families.last() <= families.last() => {}
                    _ => {
                        next.insert(reachable.clone(), Prefix { families, reachable });
                    }
                }
            }
        }
        if next.is_empty() {
            return ColorfulHellyResult {
                eta: depth + 1,
                exact: true,
                refuting_instance: (depth > 0).then(|| to_instance(&level[0].families)),
                nodes: meter.nodes(),
            };
        }
        let mut next: Vec<Prefix> = next.into_values().collect();
        next.sort_by(|a, b| a.families.cmp(&b.families));
        level = next;
        depth += 1;
    }
}

/// Counts behind the fractional Helly property for tuple size `k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FractionalHellyProfile {
    pub n: usize,
    pub k: usize,
    pub intersecting_tuples: u64,
    pub total_tuples: u64,
    pub alpha: f64,
    pub max_intersecting_subfamily: usize,
    pub beta: f64,
}

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

pub fn fractional_helly_profile(system: &SetSystem, k: usize) -> Result<FractionalHellyProfile> {
    let n = system.member_count();
    if k > n {
        return Err(Error::Invalid(format!("tuple size {k} exceeds {n} members")));
    }
    fn count(system: &SetSystem, start: usize, left: usize, inter: &BitSet) -> u64 {
        if left == 0 {
            return u64::from(!inter.is_empty());
        }
        if inter.is_empty() {
            return 0;
        }
        (start..=system.member_count() - left)
            .map(|j| count(system, j + 1, left - 1, &inter.intersection(system.member(j))))
            .sum()
    }
    let intersecting = count(system, 0, k, &system.full_ground());
    let total = binomial(n, k);
    // a largest intersecting subfamily is all members through one point
    let max_sub = (0..system.ground_len())
        .map(|x| system.point_members(x).len())
        .max()
        .unwrap_or(0);
    Ok(FractionalHellyProfile {
        n,
        k,
        intersecting_tuples: intersecting,
        total_tuples: total,
        alpha: intersecting as f64 / total as f64,
        max_intersecting_subfamily: max_sub,
        beta: if n == 0 { 1.0 } else { max_sub as f64 / n as f64 },
    })
}
