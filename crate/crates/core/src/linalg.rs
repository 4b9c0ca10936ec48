//! Exact rank computations.
//!
//! Integer matrices are reduced by sparse elimination that only pivots on
//! entries `±1`, which keeps every row operation unimodular and all entries
//! integral. Whatever is left once no unit pivot remains is handed to
//! fraction-free (Bareiss) elimination over big integers. The prime-field
//! path runs the same sparse engine modulo `p`.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::budget::Meter;

/// Default modulus for prime-field ranks: 2^31 - 1.
pub const DEFAULT_PRIME: u64 = 2_147_483_647;

/// Column-oriented sparse integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    /// `columns[c]` lists `(row, value)` with nonzero values, rows ascending.
    pub columns: Vec<Vec<(usize, i64)>>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            columns: vec![Vec::new(); cols],
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0; self.cols]; self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for &(r, v) in col {
                out[r][c] = v;
            }
        }
        out
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    /// `self * other` (dense result), for chain-complex identities in tests
    /// and verifiers.
    pub fn multiply_dense(&self, other: &SparseMatrix) -> Vec<Vec<i64>> {
        assert_eq!(self.cols, other.rows);
        let mut out = vec![vec![0i64; other.cols]; self.rows];
        for (c, col) in other.columns.iter().enumerate() {
            for &(k, b) in col {
                for &(r, a) in &self.columns[k] {
                    out[r][c] += a * b;
                }
            }
        }
        out
    }

    /// Row-major copy (rows as sorted `(col, value)` lists).
    fn row_lists(&self) -> Vec<Vec<(u32, i64)>> {
        let mut rows = vec![Vec::new(); self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for &(r, v) in col {
                rows[r].push((c as u32, v));
            }
        }
        rows
    }
}

trait Coefficients {
    fn is_pivot(&self, v: i64) -> bool;
    /// Factor `f` with `a - f * pivot = 0`.
    fn factor(&self, a: i64, pivot: i64) -> i64;
    /// `x - f * y`, or `None` on overflow.
    fn sub_mul(&self, x: i64, f: i64, y: i64) -> Option<i64>;
}

struct UnitPivots;

impl Coefficients for UnitPivots {
    fn is_pivot(&self, v: i64) -> bool {
        v == 1 || v == -1
    }
    fn factor(&self, a: i64, pivot: i64) -> i64 {
        a * pivot
    }
    fn sub_mul(&self, x: i64, f: i64, y: i64) -> Option<i64> {
        f.checked_mul(y).and_then(|p| x.checked_sub(p))
    }
}

struct PrimeField(u64);

impl PrimeField {
    fn reduce(&self, v: i64) -> i64 {
        v.rem_euclid(self.0 as i64)
    }
    fn inverse(&self, v: i64) -> i64 {
        // Fermat: v^(p-2)
        let p = self.0 as u128;
        let (mut base, mut exp, mut acc) = (self.reduce(v) as u128, p - 2, 1u128);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            exp >>= 1;
        }
        acc as i64
    }
}

impl Coefficients for PrimeField {
    fn is_pivot(&self, v: i64) -> bool {
        self.reduce(v) != 0
    }
    fn factor(&self, a: i64, pivot: i64) -> i64 {
        let p = self.0 as i128;
        ((self.reduce(a) as i128 * self.inverse(pivot) as i128) % p) as i64
    }
    fn sub_mul(&self, x: i64, f: i64, y: i64) -> Option<i64> {
        let p = self.0 as i128;
        Some((x as i128 - f as i128 * y as i128).rem_euclid(p) as i64)
    }
}

enum SparseOutcome {
    /// Rank found by pivots, plus rows that never offered a pivot.
    Done { rank: usize, residual: Vec<Vec<(u32, i64)>> },
    Overflow,
    Exhausted,
}

fn sparse_eliminate<C: Coefficients>(
    mut rows: Vec<Vec<(u32, i64)>>,
    cols: usize,
    coeffs: &C,
    meter: &mut Meter,
) -> SparseOutcome {
    let mut col_rows: Vec<Vec<u32>> = vec![Vec::new(); cols];
    for (r, row) in rows.iter().enumerate() {
        for &(c, _) in row {
            col_rows[c as usize].push(r as u32);
        }
    }
    let mut active = vec![true; rows.len()];
    let mut heap: BinaryHeap<Reverse<(usize, u32)>> = rows
        .iter()
        .enumerate()
        .map(|(r, row)| Reverse((row.len(), r as u32)))
        .collect();
    let mut rank = 0;
    while let Some(Reverse((len, r))) = heap.pop() {
        let r = r as usize;
        if !active[r] || rows[r].len() != len {
            continue;
        }
        if rows[r].is_empty() {
            active[r] = false;
            continue;
        }
        // among pivot-capable entries, pick the sparsest column
        let Some(&(pc, pv)) = rows[r]
            .iter()
            .filter(|(_, v)| coeffs.is_pivot(*v))
            .min_by_key(|(c, _)| col_rows[*c as usize].len())
        else {
            // stays active: later eliminations may create a pivot
            continue;
        };
        if !meter.tick() {
            return SparseOutcome::Exhausted;
        }
        active[r] = false;
        rank += 1;
        let pivot_row = std::mem::take(&mut rows[r]);
        let targets = std::mem::take(&mut col_rows[pc as usize]);
        for t in targets {
            let t = t as usize;
            if !active[t] {
                continue;
            }
            let Ok(pos) = rows[t].binary_search_by_key(&pc, |&(c, _)| c) else {
                continue;
            };
            let f = coeffs.factor(rows[t][pos].1, pv);
            let old = std::mem::take(&mut rows[t]);
            let mut merged = Vec::with_capacity(old.len() + pivot_row.len());
            let (mut i, mut j) = (0, 0);
            while i < old.len() || j < pivot_row.len() {
                let take_old = j >= pivot_row.len() || (i < old.len() && old[i].0 < pivot_row[j].0);
                let take_piv = i >= old.len() || (j < pivot_row.len() && pivot_row[j].0 < old[i].0);
                if take_old {
                    merged.push(old[i]);
                    i += 1;
                } else if take_piv {
                    let Some(v) = coeffs.sub_mul(0, f, pivot_row[j].1) else {
                        return SparseOutcome::Overflow;
                    };
                    if v != 0 {
                        col_rows[pivot_row[j].0 as usize].push(t as u32);
                        merged.push((pivot_row[j].0, v));
                    }
                    j += 1;
                } else {
                    let Some(v) = coeffs.sub_mul(old[i].1, f, pivot_row[j].1) else {
                        return SparseOutcome::Overflow;
                    };
                    if v != 0 {
                        merged.push((old[i].0, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
            heap.push(Reverse((merged.len(), t as u32)));
            rows[t] = merged;
        }
    }
    let residual = rows
        .into_iter()
        .zip(active)
        .filter(|(row, a)| *a && !row.is_empty())
        .map(|(row, _)| row)
        .collect();
    SparseOutcome::Done { rank, residual }
}

/// Fraction-free Gaussian elimination; returns the rank.
pub fn bareiss_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for r in rank + 1..rows {
            for k in c + 1..cols {
                let v = (&m[rank][c] * &m[r][k] - &m[r][c] * &m[rank][k]) / &prev;
                m[r][k] = v;
            }
            m[r][c] = BigInt::zero();
        }
        prev = m[rank][c].clone();
        rank += 1;
    }
    rank
}

fn residual_to_dense(residual: &[Vec<(u32, i64)>]) -> Vec<Vec<BigInt>> {
    let mut used: Vec<u32> = residual.iter().flatten().map(|&(c, _)| c).collect();
    used.sort_unstable();
    used.dedup();
    residual
        .iter()
        .map(|row| {
            let mut dense = vec![BigInt::zero(); used.len()];
            for &(c, v) in row {
                let k = used.binary_search(&c).expect("collected above");
                dense[k] = BigInt::from(v);
            }
            dense
        })
        .collect()
}

/// Exact rank over the rationals, or `None` if the meter runs out.
pub fn rank_exact(m: &SparseMatrix, meter: &mut Meter) -> Option<usize> {
    match sparse_eliminate(m.row_lists(), m.cols, &UnitPivots, meter) {
        SparseOutcome::Done { rank, residual } => {
            if residual.is_empty() {
                Some(rank)
            } else {
                Some(rank + bareiss_rank(residual_to_dense(&residual)))
            }
        }
        SparseOutcome::Exhausted => None,
        SparseOutcome::Overflow => {
            let dense = m
                .to_dense()
                .into_iter()
                .map(|row| row.into_iter().map(BigInt::from).collect())
                .collect();
            Some(bareiss_rank(dense))
        }
    }
}

/// Rank over `Z/pZ`. Bounded above by the rational rank.
pub fn rank_mod_prime(m: &SparseMatrix, p: u64, meter: &mut Meter) -> Option<usize> {
    let field = PrimeField(p);
    let rows = m
        .row_lists()
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|(c, v)| (c, field.reduce(v)))
                .filter(|&(_, v)| v != 0)
                .collect()
        })
        .collect();
    match sparse_eliminate(rows, m.cols, &field, meter) {
        SparseOutcome::Done { rank, residual } => {
            debug_assert!(residual.is_empty(), "every nonzero is a pivot mod p");
            Some(rank)
        }
        SparseOutcome::Exhausted => None,
        SparseOutcome::Overflow => unreachable!("modular arithmetic cannot overflow"),
    }
}

/// Reduced row echelon form over the rationals; returns pivot columns.
pub fn rref(m: &mut [Vec<BigRational>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for k in c..cols {
            m[r][k] = &m[r][k] * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for k in c..cols {
                    let delta = &f * &m[r][k];
                    m[i][k] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank_rational(m: &[Vec<BigRational>]) -> usize {
    let mut copy = m.to_vec();
    rref(&mut copy).len()
}

/// Solves `a x = b`; `None` when inconsistent. Free variables are set to zero.
pub fn solve_rational(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let cols = a.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![BigRational::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[r][cols].clone();
    }
    Some(x)
}

/// Inverse of a square rational matrix, `None` if singular.
pub fn inverse_rational(a: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let n = a.len();
    let mut aug: Vec<Vec<BigRational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}
