//! Generators for the explicit extremal examples: cyclic sharpness systems,
//! Hamming balls, a planar circle configuration, polynomial comatchings and
//! torus-grid complexes with their joins.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::complex::{complex_to_set_system, join, Face, SimplicialComplex, MAX_VERTICES};
use crate::error::{Error, Result};
use crate::linalg::{inverse_rational, rank_rational, solve_rational};
use crate::system::{SetSystem, Verdict};

/// Largest ground set produced by [`gen_hamming_system`].
pub const HAMMING_GROUND_CAP: usize = 1 << 12;

/// Largest basis size accepted by [`gen_poly_comatching`].
pub const POLY_BASIS_CAP: usize = 64;

/// Cyclic example with `τ = M` and `η = M + 1`.
///
/// For `M = 2` the members are `A = {1,2}`, `B = {3,4}`, `C = {2,3}`,
/// `D = {4,1}`. For larger `M` the ground is `1..=2M`; member `F1.i` is the
/// complement of `{2i-1, 2i}` and `FM.i` the complement of `{2i, 2i+1}`
/// (indices mod `2M`).
pub fn gen_cycle_sharpness(m: usize) -> Result<SetSystem> {
    if m < 2 {
        return Err(Error::Invalid(format!("cycle sharpness needs M >= 2, got {m}")));
    }
    let n = 2 * m;
    let ground: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    // 0-based index of point p (1-based, cyclic)
    let at = |p: usize| (p - 1) % n;
    if m == 2 {
        let members = vec![
            ("A".to_string(), vec![at(1), at(2)]),
            ("B".to_string(), vec![at(3), at(4)]),
            ("C".to_string(), vec![at(2), at(3)]),
            ("D".to_string(), vec![at(4), at(1)]),
        ];
        return SetSystem::new(ground, members);
    }
    let without = |a: usize, b: usize| -> Vec<usize> {
        (0..n).filter(|&x| x != at(a) && x != at(b)).collect()
    };
    let mut members = Vec::with_capacity(n);
    for i in 1..=m {
        members.push((format!("F1.{i}"), without(2 * i - 1, 2 * i)));
    }
    for i in 1..=m {
        members.push((format!("FM.{i}"), without(2 * i, 2 * i + 1)));
    }
    SetSystem::new(ground, members)
}

fn word_label(word: &[usize], q: usize) -> String {
    if q <= 10 {
        word.iter().map(|d| char::from(b'0' + *d as u8)).collect()
    } else {
        word.iter().map(usize::to_string).collect::<Vec<_>>().join(".")
    }
}

/// Radius-`t` Hamming balls around every word of `{0..q-1}^n`, one member per
/// centre, over the ground set of all words.
pub fn gen_hamming_system(n: usize, t: usize, q: usize) -> Result<SetSystem> {
    if q < 2 {
        return Err(Error::Invalid(format!("alphabet size must be >= 2, got {q}")));
    }
    if t >= n {
        return Err(Error::Invalid(format!("radius {t} must be below length {n}")));
    }
    let size = (0..n).try_fold(1usize, |acc, _| acc.checked_mul(q));
    let size = match size {
        Some(s) if s <= HAMMING_GROUND_CAP => s,
        _ => {
            return Err(Error::CapExceeded(format!(
                "{q}^{n} words exceed the cap {HAMMING_GROUND_CAP}"
            )))
        }
    };
    let words: Vec<Vec<usize>> = (0..size)
        .map(|mut code| {
            let mut w = vec![0; n];
            for slot in w.iter_mut().rev() {
                *slot = code % q;
                code /= q;
            }
            w
        })
        .collect();
    let ground: Vec<String> = words.iter().map(|w| word_label(w, q)).collect();
    let members = words
        .iter()
        .map(|c| {
            let ball = words
                .iter()
                .enumerate()
                .filter(|(_, w)| w.iter().zip(c).filter(|(a, b)| a != b).count() <= t)
                .map(|(i, _)| i)
                .collect();
            (format!("B({})", word_label(c, q)), ball)
        })
        .collect();
    SetSystem::new(ground, members)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Circle {
    pub name: String,
    pub center: (f64, f64),
    pub radius: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanePoint {
    pub name: String,
    pub coords: (f64, f64),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeometricCircleConfig {
    pub circles: Vec<Circle>,
    pub points: Vec<PlanePoint>,
    pub tolerance: f64,
}

/// Margin, in multiples of the tolerance, that separates "off" from "on".
pub const UNAMBIGUITY_FACTOR: f64 = 10.0;

impl GeometricCircleConfig {
    /// `| ‖p − c‖ − r |` for point `i` and circle `j`.
    pub fn deviation(&self, i: usize, j: usize) -> f64 {
        let (px, py) = self.points[i].coords;
        let c = &self.circles[j];
        ((px - c.center.0).hypot(py - c.center.1) - c.radius).abs()
    }

    /// Incidence at the tolerance; errors when a deviation falls inside the
    /// ambiguous band between the tolerance and the unambiguity margin.
    pub fn incidence(&self) -> Result<Vec<Vec<bool>>> {
        let mut out = vec![vec![false; self.circles.len()]; self.points.len()];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let dev = self.deviation(i, j);
                if dev <= self.tolerance {
                    *cell = true;
                } else if dev <= UNAMBIGUITY_FACTOR * self.tolerance {
                    return Err(Error::Inconsistent(format!(
                        "point {} is {dev:e} from circle {}: ambiguous at tolerance {:e}",
                        self.points[i].name, self.circles[j].name, self.tolerance
                    )));
                }
            }
        }
        Ok(out)
    }

    /// Abstract system: ground = points, one member per circle.
    pub fn to_set_system(&self) -> Result<SetSystem> {
        let inc = self.incidence()?;
        let ground = self.points.iter().map(|p| p.name.clone()).collect();
        let members = self
            .circles
            .iter()
            .enumerate()
            .map(|(j, c)| {
                let pts = (0..self.points.len()).filter(|&i| inc[i][j]).collect();
                (c.name.clone(), pts)
            })
            .collect();
        SetSystem::new(ground, members)
    }
}

/// Unit circles centred at the vertices of an equilateral triangle inscribed
/// in the unit circle (passing through its centre), plus that circumcircle.
///
/// Points are the centre `O` and the unit-circle points at 60°, 180° and
/// 300°; each lies on exactly three circles. The pairing is
/// `O ↔ C`, `P60 ↔ S240`, `P180 ↔ S0`, `P300 ↔ S120`.
pub fn gen_circle_config() -> Result<(GeometricCircleConfig, SetSystem)> {
    let polar = |deg: f64| {
        let r = deg.to_radians();
        (r.cos(), r.sin())
    };
    let mut circles: Vec<Circle> = [0.0, 120.0, 240.0]
        .iter()
        .map(|&deg| Circle {
            name: format!("S{deg}"),
            center: polar(deg),
            radius: 1.0,
        })
        .collect();
    circles.push(Circle {
        name: "C".into(),
        center: (0.0, 0.0),
        radius: 1.0,
    });
    let mut points = vec![PlanePoint {
        name: "O".into(),
        coords: (0.0, 0.0),
    }];
    points.extend([60.0, 180.0, 300.0].iter().map(|&deg| PlanePoint {
        name: format!("P{deg}"),
        coords: polar(deg),
    }));
    let config = GeometricCircleConfig {
        circles,
        points,
        tolerance: 1e-9,
    };
    let system = config.to_set_system()?;
    Ok((config, system))
}

fn ratio_to_string(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn parse_ratio(s: &str) -> Result<BigRational> {
    let bad = || Error::Invalid(format!("malformed rational {s:?}"));
    let parse_int = |t: &str| t.trim().parse::<BigInt>().map_err(|_| bad());
    match s.split_once('/') {
        None => Ok(BigRational::from_integer(parse_int(s)?)),
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(parse_int(n)?, d))
        }
    }
}

/// A rational serialized as `"p/q"` or `"p"`.
#[derive(Clone, PartialEq, Eq)]
pub struct Rational(pub BigRational);

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&ratio_to_string(&self.0))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&ratio_to_string(&self.0))
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_ratio(&s).map(Rational).map_err(serde::de::Error::custom)
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational(BigRational::from_integer(v.into()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub exponents: Vec<u32>,
    pub coefficient: Rational,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Polynomial {
    pub terms: Vec<Term>,
}

impl Polynomial {
    pub fn evaluate(&self, point: &[BigRational]) -> BigRational {
        self.terms
            .iter()
            .map(|t| monomial_value(&t.exponents, point) * &t.coefficient.0)
            .fold(BigRational::zero(), |a, b| a + b)
    }
}

fn monomial_value(exponents: &[u32], point: &[BigRational]) -> BigRational {
    exponents
        .iter()
        .zip(point)
        .fold(BigRational::one(), |acc, (&e, x)| acc * num_traits::pow(x.clone(), e as usize))
}

/// Polynomials `f_i` and points `x_j` with `f_i(x_j) = 0` exactly when
/// `i ≠ j`, in `num_vars` variables of degree at most `degree`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialComatching {
    pub num_vars: usize,
    pub degree: u32,
    pub polynomials: Vec<Polynomial>,
    pub points: Vec<Vec<Rational>>,
    pub common_point: Option<Vec<Rational>>,
}

/// Exponent vectors of total degree at most `degree`, graded then
/// lexicographic.
pub fn monomial_basis(num_vars: usize, degree: u32) -> Vec<Vec<u32>> {
    fn rec(prefix: &mut Vec<u32>, left: usize, budget: u32, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            out.push(prefix.clone());
            return;
        }
        for e in (0..=budget).rev() {
            prefix.push(e);
            rec(prefix, left - 1, budget - e, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), num_vars, degree, &mut out);
    out.sort_by(|a, b| {
        let (da, db) = (a.iter().sum::<u32>(), b.iter().sum::<u32>());
        da.cmp(&db).then_with(|| b.cmp(a))
    });
    out
}

/// `C(degree + num_vars, num_vars)`, saturating.
pub fn basis_dimension(num_vars: usize, degree: u32) -> usize {
    let n = degree as usize + num_vars;
    let k = num_vars.min(degree as usize);
    (0..k).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Largest number of point samples tried before giving up.
pub const POLY_RESAMPLE_LIMIT: usize = 1000;

/// Samples `C(D+d, d)` distinct points from `{1..9}^d` until the monomial
/// evaluation matrix is invertible, then takes `f_i` as the Lagrange
/// interpolants (columns of its inverse).
pub fn gen_poly_comatching(num_vars: usize, degree: u32, seed: u64) -> Result<PolynomialComatching> {
    if num_vars == 0 {
        return Err(Error::Invalid("need at least one variable".into()));
    }
    let m = basis_dimension(num_vars, degree);
    if m > POLY_BASIS_CAP {
        return Err(Error::CapExceeded(format!(
            "basis of size {m} exceeds the cap {POLY_BASIS_CAP}"
        )));
    }
    let basis = monomial_basis(num_vars, degree);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..POLY_RESAMPLE_LIMIT {
        let mut points: Vec<Vec<i64>> = Vec::with_capacity(m);
        while points.len() < m {
            let p: Vec<i64> = (0..num_vars).map(|_| rng.random_range(1..=9)).collect();
            if !points.contains(&p) {
                points.push(p);
            }
        }
        let points: Vec<Vec<BigRational>> = points
            .iter()
            .map(|p| p.iter().map(|&v| BigRational::from_integer(v.into())).collect())
            .collect();
        let eval: Vec<Vec<BigRational>> = points
            .iter()
            .map(|p| basis.iter().map(|e| monomial_value(e, p)).collect())
            .collect();
        let Some(inv) = inverse_rational(&eval) else {
            continue;
        };
        let polynomials = (0..m)
            .map(|i| Polynomial {
                terms: basis
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| !inv[*k][i].is_zero())
                    .map(|(k, e)| Term {
                        exponents: e.clone(),
                        coefficient: Rational(inv[k][i].clone()),
                    })
                    .collect(),
            })
            .collect();
        return Ok(PolynomialComatching {
            num_vars,
            degree,
            polynomials,
            points: points
                .into_iter()
                .map(|p| p.into_iter().map(Rational).collect())
                .collect(),
            common_point: None,
        });
    }
    Err(Error::CapExceeded(format!(
        "no invertible evaluation matrix after {POLY_RESAMPLE_LIMIT} samples"
    )))
}

/// Coefficient vectors of the polynomials in the monomial basis.
fn coefficient_rows(pc: &PolynomialComatching, basis: &[Vec<u32>]) -> Result<Vec<Vec<BigRational>>> {
    let mut rows = Vec::with_capacity(pc.polynomials.len());
    for (i, f) in pc.polynomials.iter().enumerate() {
        let mut row = vec![BigRational::zero(); basis.len()];
        for t in &f.terms {
            if t.exponents.len() != pc.num_vars {
                return Err(Error::Invalid(format!(
                    "polynomial {i}: exponent vector of length {} in {} variables",
                    t.exponents.len(),
                    pc.num_vars
                )));
            }
            let k = basis.iter().position(|e| *e == t.exponents).ok_or_else(|| {
                Error::Invalid(format!(
                    "polynomial {i}: monomial {:?} exceeds degree {}",
                    t.exponents, pc.degree
                ))
            })?;
            row[k] += &t.coefficient.0;
        }
        rows.push(row);
    }
    Ok(rows)
}

fn check_point(pc: &PolynomialComatching, what: &str, p: &[Rational]) -> Result<Vec<BigRational>> {
    if p.len() != pc.num_vars {
        return Err(Error::Invalid(format!(
            "{what} has {} coordinates, expected {}",
            p.len(),
            pc.num_vars
        )));
    }
    Ok(p.iter().map(|r| r.0.clone()).collect())
}

/// Checks the zero pattern, linear independence, and, at full basis size,
/// that `1` lies in the span, which rules out any common zero.
pub fn verify_poly_comatching(pc: &PolynomialComatching) -> Result<Verdict> {
    let basis = monomial_basis(pc.num_vars, pc.degree);
    let rows = coefficient_rows(pc, &basis)?;
    let points = pc
        .points
        .iter()
        .enumerate()
        .map(|(j, p)| check_point(pc, &format!("point {j}"), p))
        .collect::<Result<Vec<_>>>()?;
    let mut out = Vec::new();
    let m = rows.len();
    if m > basis.len() {
        out.push(format!("{m} polynomials exceed the basis dimension {}", basis.len()));
    }
    if points.len() != m {
        out.push(format!("{m} polynomials but {} points", points.len()));
    }
    for (i, f) in pc.polynomials.iter().enumerate() {
        for (j, x) in points.iter().enumerate() {
            let zero = f.evaluate(x).is_zero();
            if zero != (i != j) {
                out.push(if zero {
                    format!("f_{i} vanishes at its own point x_{j}")
                } else {
                    format!("f_{i}(x_{j}) is nonzero")
                });
            }
        }
    }
    let rank = rank_rational(&rows);
    if rank < m {
        out.push(format!("polynomials are linearly dependent (rank {rank} < {m})"));
    }
    if let Some(cp) = &pc.common_point {
        let a = check_point(pc, "common point", cp)?;
        if m == basis.len() && rank == m {
            // transpose: columns are polynomials, solve Σ c_i f_i = 1
            let cols: Vec<Vec<BigRational>> = (0..basis.len())
                .map(|k| rows.iter().map(|r| r[k].clone()).collect())
                .collect();
            let mut one = vec![BigRational::zero(); basis.len()];
            one[0] = BigRational::one();
            if let Some(c) = solve_rational(&cols, &one) {
                let coeffs: Vec<String> = c.iter().map(ratio_to_string).collect();
                out.push(format!(
                    "common point impossible: 1 = Σ c_i f_i with c = [{}], so some f_i is nonzero at every point",
                    coeffs.join(", ")
                ));
            }
        }
        for (i, f) in pc.polynomials.iter().enumerate() {
            if !f.evaluate(&a).is_zero() {
                out.push(format!("f_{i} is nonzero at the common point"));
            }
        }
    }
    Ok(Verdict::from_violations(out))
}

/// Cells of a `k × k` torus grid, labelled `1..=k²` row by row, with one
/// facet per `s × s` block of cells (wrapping around).
pub fn gen_torus_grid_complex(k: usize, s: usize) -> Result<SimplicialComplex> {
    if s == 0 || k < 2 * s {
        return Err(Error::Invalid(format!("torus grid needs k >= 2s >= 2, got k={k}, s={s}")));
    }
    if k * k > MAX_VERTICES {
        return Err(Error::CapExceeded(format!(
            "{} cells exceed {MAX_VERTICES} vertices",
            k * k
        )));
    }
    let vertices = (1..=k * k).map(|i| i.to_string()).collect();
    let mut facets: Vec<Face> = Vec::with_capacity(k * k);
    for r in 0..k {
        for c in 0..k {
            let mut f: Face = 0;
            for dr in 0..s {
                for dc in 0..s {
                    f |= 1 << (((r + dr) % k) * k + (c + dc) % k);
                }
            }
            facets.push(f);
        }
    }
    SimplicialComplex::from_masks(vertices, facets)
}

/// The torus grid complex converted into a set system.
pub fn gen_torus_grid_system(k: usize, s: usize) -> Result<SetSystem> {
    complex_to_set_system(&gen_torus_grid_complex(k, s)?)
}

/// `d`-fold join of the `4 × 4` torus grid complex.
pub fn gen_good_join_complex(d: usize) -> Result<SimplicialComplex> {
    if d == 0 {
        return Err(Error::Invalid("join needs at least one factor".into()));
    }
    if 16 * d > MAX_VERTICES {
        return Err(Error::CapExceeded(format!(
            "{} vertices exceed {MAX_VERTICES}",
            16 * d
        )));
    }
    let torus = gen_torus_grid_complex(4, 2)?;
    let mut out = torus.clone();
    for _ in 1..d {
        out = join(&out, &torus)?;
    }
    Ok(out)
}

/// Full simplex on `n` vertices labelled `0..n`.
pub fn gen_simplex(n: usize) -> Result<SimplicialComplex> {
    if n > MAX_VERTICES {
        return Err(Error::CapExceeded(format!("{n} vertices exceed {MAX_VERTICES}")));
    }
    let vertices = (0..n).map(|i| i.to_string()).collect();
    let facets = if n == 0 {
        Vec::new()
    } else {
        vec![Face::MAX >> (64 - n)]
    };
    SimplicialComplex::from_masks(vertices, facets)
}

/// Cycle graph on `n >= 3` vertices labelled `0..n`.
pub fn gen_cycle_complex(n: usize) -> Result<SimplicialComplex> {
    if !(3..=MAX_VERTICES).contains(&n) {
        return Err(Error::Invalid(format!("cycle needs 3..={MAX_VERTICES} vertices, got {n}")));
    }
    let vertices = (0..n).map(|i| i.to_string()).collect();
    let facets = (0..n).map(|i| (1 << i) | (1 << ((i + 1) % n))).collect();
    SimplicialComplex::from_masks(vertices, facets)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::face_size;

    fn member_labels(s: &SetSystem, j: usize) -> Vec<String> {
        s.member(j).iter().map(|x| s.ground()[x].clone()).collect()
    }

    #[test]
    fn cycle_sharpness_shapes() {
        let s = gen_cycle_sharpness(2).unwrap();
        let sets: Vec<Vec<String>> = (0..4).map(|j| member_labels(&s, j)).collect();
        assert_eq!(sets, vec![vec!["1", "2"], vec!["3", "4"], vec!["2", "3"], vec!["1", "4"]]);
        let s3 = gen_cycle_sharpness(3).unwrap();
        assert_eq!((s3.ground_len(), s3.member_count()), (6, 6));
        assert!(s3.members().iter().all(|m| m.elements.len() == 4));
        assert_eq!(member_labels(&s3, 5), vec!["2", "3", "4", "5"]);
        assert!(gen_cycle_sharpness(1).is_err());
    }

    #[test]
    fn hamming_shapes() {
        let s = gen_hamming_system(2, 0, 2).unwrap();
        assert_eq!(s.member_count(), 4);
        assert!(s.members().iter().all(|m| m.elements.len() == 1));
        let s = gen_hamming_system(4, 1, 2).unwrap();
        assert_eq!(s.member_count(), 16);
        assert!(s.members().iter().all(|m| m.elements.len() == 5));
        assert_eq!(s.ground()[5], "0101");
        assert!(gen_hamming_system(13, 1, 2).is_err());
        assert!(gen_hamming_system(2, 2, 2).is_err());
    }

    #[test]
    fn circle_pattern() {
        let (cfg, s) = gen_circle_config().unwrap();
        let inc = cfg.incidence().unwrap();
        // point i misses exactly circle partner[i]
        let partner = [3, 2, 0, 1];
        for (i, row) in inc.iter().enumerate() {
            for (j, &on) in row.iter().enumerate() {
                assert_eq!(on, j != partner[i], "point {i} circle {j}");
            }
        }
        assert_eq!(s.ground(), &["O", "P60", "P180", "P300"]);
        assert_eq!(s.member_name(3), "C");
    }

    #[test]
    fn circle_perturbation_breaks_incidence() {
        let (cfg, _) = gen_circle_config().unwrap();
        let base = cfg.incidence().unwrap();
        for i in 0..cfg.points.len() {
            for (dx, dy) in [(1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0)] {
                let mut moved = cfg.clone();
                let step = 100.0 * cfg.tolerance;
                moved.points[i].coords.0 += dx * step;
                moved.points[i].coords.1 += dy * step;
                // an ambiguous reading is also a detection
                if let Ok(inc) = moved.incidence() {
                    assert_ne!(inc, base, "point {i} moved by ({dx},{dy})");
                }
            }
        }
    }

    #[test]
    fn monomial_basis_sizes() {
        assert_eq!(monomial_basis(1, 1), vec![vec![0], vec![1]]);
        assert_eq!(monomial_basis(2, 2).len(), 6);
        assert_eq!(monomial_basis(2, 1), vec![vec![0, 0], vec![1, 0], vec![0, 1]]);
        assert_eq!(basis_dimension(2, 2), 6);
        assert_eq!(basis_dimension(3, 4), 35);
    }

    #[test]
    fn poly_comatchings_verify() {
        for (d, deg) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
            let pc = gen_poly_comatching(d, deg, 7).unwrap();
            assert_eq!(pc.polynomials.len(), basis_dimension(d, deg));
            let v = verify_poly_comatching(&pc).unwrap();
            assert!(v.ok, "{d},{deg}: {:?}", v.violations);
        }
    }

    #[test]
    fn smallest_poly_example_by_hand() {
        // f1 = x - 1, f2 = x - 2 at x1 = 2, x2 = 1
        let lin = |c: i64| Polynomial {
            terms: vec![
                Term { exponents: vec![0], coefficient: Rational::from(-c) },
                Term { exponents: vec![1], coefficient: Rational::from(1) },
            ],
        };
        let mut pc = PolynomialComatching {
            num_vars: 1,
            degree: 1,
            polynomials: vec![lin(1), lin(2)],
            points: vec![vec![Rational::from(2)], vec![Rational::from(1)]],
            common_point: None,
        };
        assert!(verify_poly_comatching(&pc).unwrap().ok);
        pc.common_point = Some(vec![Rational::from(5)]);
        let v = verify_poly_comatching(&pc).unwrap();
        assert!(v.violations.iter().any(|m| m.contains("1 = Σ c_i f_i")));
        pc.common_point = None;
        pc.polynomials[1] = pc.polynomials[0].clone();
        let v = verify_poly_comatching(&pc).unwrap();
        assert!(v.violations.iter().any(|m| m.contains("dependent")));
    }

    #[test]
    fn poly_coefficient_mutations_are_caught() {
        let pc = gen_poly_comatching(2, 1, 3).unwrap();
        for i in 0..pc.polynomials.len() {
            for t in 0..pc.polynomials[i].terms.len() {
                let mut bad = pc.clone();
                bad.polynomials[i].terms[t].coefficient.0 += BigRational::one();
                assert!(!verify_poly_comatching(&bad).unwrap().ok, "poly {i} term {t}");
            }
        }
    }

    #[test]
    fn malformed_exponents_are_errors() {
        let mut pc = gen_poly_comatching(1, 1, 0).unwrap();
        pc.polynomials[0].terms[0].exponents = vec![0, 0];
        assert!(verify_poly_comatching(&pc).is_err());
        pc.polynomials[0].terms[0].exponents = vec![3];
        assert!(verify_poly_comatching(&pc).is_err());
    }

    #[test]
    fn rational_json_round_trip() {
        let pc = gen_poly_comatching(2, 2, 1).unwrap();
        let text = serde_json::to_string(&pc).unwrap();
        let back: PolynomialComatching = serde_json::from_str(&text).unwrap();
        assert_eq!(back, pc);
    }

    #[test]
    fn torus_grid_shape() {
        let t = gen_torus_grid_complex(4, 2).unwrap();
        assert_eq!(t.vertex_count(), 16);
        assert_eq!(t.facets().len(), 16);
        assert!(t.facets().iter().all(|&f| face_size(f) == 4));
        assert!(gen_torus_grid_complex(3, 2).is_err());
    }

    #[test]
    fn good_join_shape() {
        assert_eq!(gen_good_join_complex(1).unwrap(), gen_torus_grid_complex(4, 2).unwrap());
        let j = gen_good_join_complex(2).unwrap();
        assert_eq!(j.vertex_count(), 32);
        assert_eq!(j.facets().len(), 256);
        assert!(j.facets().iter().all(|&f| face_size(f) == 8));
    }
}
