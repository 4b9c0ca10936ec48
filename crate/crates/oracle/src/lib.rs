//! Brute-force reference implementations used only by tests.
//!
//! Everything here works on plain index lists and enumerates exhaustively, so
//! it shares no code or pruning logic with `helly-core`. A set system is a
//! ground size `n` plus a list of members, each a list of point indices.

use std::collections::BTreeSet;

pub type Members = [Vec<usize>];

fn contains(members: &Members, j: usize, x: usize) -> bool {
    members[j].contains(&x)
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

/// All orderings of `items` (Heap's algorithm).
pub fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    fn heap(k: usize, a: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(a.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, a, out);
            if k.is_multiple_of(2) {
                a.swap(i, k - 1);
            } else {
                a.swap(0, k - 1);
            }
        }
    }
    let mut out = Vec::new();
    heap(items.len(), &mut items.to_vec(), &mut out);
    out
}

/// Whether points `xs[i]` and members `fs[i]` satisfy `x_i ∈ F_j ⇔ i ≠ j`.
pub fn is_comatching(members: &Members, xs: &[usize], fs: &[usize]) -> bool {
    xs.len() == fs.len()
        && (0..xs.len())
            .all(|i| (0..fs.len()).all(|j| contains(members, fs[j], xs[i]) == (i != j)))
}

/// Largest comatching, found by trying every pairing of a point subset
/// with a member subset.
pub fn tau(n: usize, members: &Members) -> usize {
    (1..=n.min(members.len()))
        .rev()
        .find(|&k| exists_comatching(n, members, k, None))
        .unwrap_or(0)
}

fn exists_comatching(n: usize, members: &Members, k: usize, common: Option<usize>) -> bool {
    let fsets = combinations(members.len(), k);
    let xsets = combinations(n, k);
    fsets.iter().any(|fs| {
        if let Some(c) = common {
            if !fs.iter().all(|&j| contains(members, j, c)) {
                return false;
            }
        }
        xsets.iter().any(|xs| {
            permutations(xs)
                .iter()
                .any(|p| is_comatching(members, p, fs))
        })
    })
}

/// Largest comatching whose members share a common point.
pub fn tau_prime(n: usize, members: &Members) -> usize {
    (1..=n.min(members.len()))
        .rev()
        .find(|&k| (0..n).any(|c| exists_comatching(n, members, k, Some(c))))
        .unwrap_or(0)
}

/// Points common to the selected members (the whole ground when empty).
pub fn intersection(n: usize, members: &Members, sel: &[usize]) -> Vec<usize> {
    (0..n)
        .filter(|&x| sel.iter().all(|&j| contains(members, j, x)))
        .collect()
}

/// Inclusion-minimal nonempty subfamilies with empty intersection, each
/// sorted, listed in sorted order.
pub fn minimal_empty_subfamilies(n: usize, members: &Members) -> Vec<Vec<usize>> {
    let m = members.len();
    let mut out = BTreeSet::new();
    for mask in 1u64..(1 << m) {
        let sel: Vec<usize> = (0..m).filter(|&j| mask >> j & 1 == 1).collect();
        if !intersection(n, members, &sel).is_empty() {
            continue;
        }
        let minimal = sel.iter().all(|&drop| {
            let rest: Vec<usize> = sel.iter().copied().filter(|&j| j != drop).collect();
            !intersection(n, members, &rest).is_empty()
        });
        if minimal {
            out.insert(sel);
        }
    }
    out.into_iter().collect()
}

/// Least `h` such that every `h`-wise intersecting subfamily intersects,
/// checked over all subfamilies directly.
pub fn helly_number(n: usize, members: &Members) -> usize {
    let m = members.len();
    // smallest h such that every subfamily whose h-subsets all intersect
    // itself intersects
    (1..=m.max(1))
        .find(|&h| {
            (1u64..(1 << m)).all(|mask| {
                let sel: Vec<usize> = (0..m).filter(|&j| mask >> j & 1 == 1).collect();
                let locally = combinations(sel.len(), h.min(sel.len())).iter().all(|c| {
                    let sub: Vec<usize> = c.iter().map(|&i| sel[i]).collect();
                    !intersection(n, members, &sub).is_empty()
                });
                !locally || !intersection(n, members, &sel).is_empty()
            })
        })
        .unwrap_or(1)
}

/// Whether some choice of one member per family has empty intersection.
pub fn has_empty_transversal(n: usize, members: &Members, families: &[Vec<usize>]) -> bool {
    fn rec(
        n: usize,
        members: &Members,
        families: &[Vec<usize>],
        chosen: &mut Vec<usize>,
    ) -> bool {
        if chosen.len() == families.len() {
            return intersection(n, members, chosen).is_empty();
        }
        for &j in &families[chosen.len()] {
            chosen.push(j);
            if rec(n, members, families, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    rec(n, members, families, &mut Vec::new())
}

/// Colorful Helly number by plain enumeration of nondecreasing tuples over
/// every subfamily with empty intersection. Only for tiny systems.
pub fn eta(n: usize, members: &Members) -> usize {
    let m = members.len();
    let empties: Vec<Vec<usize>> = (1u64..(1 << m))
        .map(|mask| (0..m).filter(|&j| mask >> j & 1 == 1).collect::<Vec<_>>())
        .filter(|sel| intersection(n, members, sel).is_empty())
        .collect();
    if empties.is_empty() {
        return 1;
    }
    let mut size = 1;
    loop {
        let mut refuted = false;
        let mut idx = vec![0usize; size];
        'tuples: loop {
            let families: Vec<Vec<usize>> = idx.iter().map(|&i| empties[i].clone()).collect();
            if !has_empty_transversal(n, members, &families) {
                refuted = true;
                break 'tuples;
            }
            // next nondecreasing index tuple
            let mut p = size;
            loop {
                if p == 0 {
                    break 'tuples;
                }
                p -= 1;
                if idx[p] + 1 < empties.len() {
                    idx[p] += 1;
                    for q in p + 1..size {
                        idx[q] = idx[p];
                    }
                    break;
                }
            }
        }
        if !refuted {
            return size;
        }
        size += 1;
    }
}

/// Non-incidences `(point, member)` ordered by member, then point.
pub fn complement_edges(n: usize, members: &Members) -> Vec<(usize, usize)> {
    (0..members.len())
        .flat_map(|j| (0..n).filter(move |&x| !contains(members, j, x)).map(move |x| (x, j)))
        .collect()
}

/// Induced matching check against an explicit edge list.
pub fn is_induced_matching(edges: &[(usize, usize)], pairs: &[(usize, usize)]) -> bool {
    let has = |e: (usize, usize)| edges.contains(&e);
    let mut xs: Vec<usize> = pairs.iter().map(|p| p.0).collect();
    let mut fs: Vec<usize> = pairs.iter().map(|p| p.1).collect();
    xs.sort_unstable();
    fs.sort_unstable();
    xs.dedup();
    fs.dedup();
    xs.len() == pairs.len()
        && fs.len() == pairs.len()
        && pairs.iter().enumerate().all(|(i, &(x, _))| {
            pairs
                .iter()
                .enumerate()
                .all(|(j, &(_, f))| has((x, f)) == (i == j))
        })
}

/// Largest induced matching in a bipartite edge list, by subset enumeration.
pub fn max_induced_matching(edges: &[(usize, usize)]) -> usize {
    let e = edges.len();
    assert!(e <= 25, "edge list too large for subset enumeration");
    (0u32..(1 << e))
        .filter_map(|mask| {
            let pairs: Vec<(usize, usize)> =
                (0..e).filter(|&i| mask >> i & 1 == 1).map(|i| edges[i]).collect();
            is_induced_matching(edges, &pairs).then_some(pairs.len())
        })
        .max()
        .unwrap_or(0)
}

/// Largest vertex set `M` such that each `v ∈ M` has a facet meeting `M`
/// in exactly `M ∖ {v}`, by enumerating all vertex subsets.
pub fn complex_comatching_number(vertex_count: usize, facets: &[Vec<usize>]) -> usize {
    (0u64..(1 << vertex_count))
        .filter(|&mask| {
            (0..vertex_count).filter(|&v| mask >> v & 1 == 1).all(|v| {
                facets.iter().any(|f| {
                    let fm = f.iter().fold(0u64, |a, &u| a | 1 << u);
                    fm & mask == mask & !(1 << v)
                })
            })
        })
        .map(|mask| mask.count_ones() as usize)
        .max()
        .unwrap_or(0)
}
