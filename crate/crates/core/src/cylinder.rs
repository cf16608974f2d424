//! Genus-0 generating functions with two boundaries (the cylinder), for
//! permutations and for set partitions, with second-order cumulants
//! `κ_{i,j}` attached to the cylinder-spanning cycle or block.
//!
//! Writing `B = (X(y1) − X(y2))/(y1 − y2)` and
//! `E = (B² − X′(y1)X′(y2))/(y1 − y2)²` (both exact quotients),
//!
//! `W_perm,2 = (X(y1,y2) + 1/(y1−y2)²)/(X′(y1)X′(y2)) − 1/(X(y1)−X(y2))²
//!           = (X(y1,y2) + E/B²) / (X′(y1)X′(y2))`,
//!
//! which is free of diagonal poles by construction. The partition series
//! replaces `X(y1,y2)` by `X(y1,y2) + Σ_{i,j≥1} (1−ij) κ_{i+j} y1^{i−1} y2^{j−1}`.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::algebra::{BivariateLaurent, KappaPolynomial, LaurentSeries, Rational, Var};
use crate::combinatorics::genus::{is_transitive, GenusScratch};
use crate::combinatorics::Kind;
use crate::error::{Error, Result};
use crate::genfun_perm::{check_generator, power_below};

/// Default largest `i + j` for the annular enumeration oracle.
pub const DEFAULT_ANNULAR_LIMIT: usize = 8;

/// Values of the first-order cumulants `κ_1 … κ_K` and of the second-order
/// cumulants `κ_{i,j}` (stored once per unordered pair, `i ≤ j`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivariateCumulantSpec {
    first: Vec<KappaPolynomial>,
    second: BTreeMap<(u32, u32), KappaPolynomial>,
}

impl BivariateCumulantSpec {
    /// Indeterminates `κ_1 … κ_{k1}` and `κ_{i,j}` for all `i + j ≤ k2`.
    pub fn generic(k1: u32, k2: u32) -> Self {
        let first = (1..=k1).map(KappaPolynomial::kappa).collect();
        let mut second = BTreeMap::new();
        for i in 1..k2 {
            for j in i..=k2.saturating_sub(i) {
                second.insert((i, j), KappaPolynomial::kappa2(i, j));
            }
        }
        Self { first, second }
    }

    pub fn new(first: Vec<KappaPolynomial>, second: BTreeMap<(u32, u32), KappaPolynomial>) -> Result<Self> {
        if second.keys().any(|&(i, j)| i == 0 || i > j) {
            return Err(Error::InvalidInput("second-order keys must satisfy 1 <= i <= j".into()));
        }
        Ok(Self { first, second })
    }

    /// All second-order cumulants set to zero.
    pub fn without_second_order(&self) -> Self {
        Self { first: self.first.clone(), second: BTreeMap::new() }
    }

    pub fn first(&self) -> &[KappaPolynomial] {
        &self.first
    }

    pub fn second(&self) -> &BTreeMap<(u32, u32), KappaPolynomial> {
        &self.second
    }

    /// `X(y) = 1/y + Σ κ_i y^{i−1}`.
    pub fn x(&self) -> LaurentSeries {
        LaurentSeries::generator_from_values(self.first.iter().cloned())
    }

    /// `X(y1,y2) = Σ κ_{i,j} y1^{i−1} y2^{j−1}`.
    pub fn x2(&self) -> BivariateLaurent {
        let mut terms = Vec::new();
        for (&(i, j), v) in &self.second {
            terms.push(((i as i64 - 1, j as i64 - 1), v.clone()));
            if i != j {
                terms.push(((j as i64 - 1, i as i64 - 1), v.clone()));
            }
        }
        BivariateLaurent::exact(terms)
    }
}

/// `κ_{i,j} ↦ κ_{i,j} + (1 − ij) κ_{i+j}` for every pair with `i + j ≤ K`.
pub fn substitute_overcount(spec: &BivariateCumulantSpec) -> BivariateCumulantSpec {
    let k = spec.first.len() as u32;
    let mut second = spec.second.clone();
    for i in 1..k {
        for j in i..=k - i {
            let c = Rational::from_integer(BigInt::from(1 - (i * j) as i64));
            let add = spec.first[(i + j - 1) as usize].scale(&c);
            let slot = second.entry((i, j)).or_default();
            *slot += &add;
        }
    }
    second.retain(|_, v| !v.is_zero());
    BivariateCumulantSpec { first: spec.first.clone(), second }
}

/// The same substitution on a polynomial in the cumulants.
pub fn substitute_overcount_poly(p: &KappaPolynomial) -> KappaPolynomial {
    p.substitute(&KappaPolynomial::kappa, &|i, j| {
        let c = Rational::from_integer(BigInt::from(1 - (i * j) as i64));
        KappaPolynomial::kappa2(i, j) + KappaPolynomial::kappa(i + j).scale(&c)
    })
}

/// `B = (X(y1) − X(y2))/(y1 − y2)`, exact.
fn divided_difference(x: &LaurentSeries) -> Result<BivariateLaurent> {
    let d = BivariateLaurent::lift(x, Var::Y1).sub(&BivariateLaurent::lift(x, Var::Y2));
    d.exact_div_diff(1)
}

/// `(1/(y1y2)) (1 − y1∂_{y1} y2∂_{y2}) (y1y2·B + 1)`, which equals
/// `Σ_{i,j≥1} (1 − ij) κ_{i+j} y1^{i−1} y2^{j−1}` for an exact generator.
pub fn overcount_series(x: &LaurentSeries) -> Result<BivariateLaurent> {
    check_generator(x)?;
    let f = divided_difference(x)?.shift(1, 1).add(&BivariateLaurent::one());
    let g = f.sub(&f.euler(Var::Y1).euler(Var::Y2));
    Ok(g.shift(-1, -1))
}

/// `W_perm,2(X(y1), X(y2))` known on the box `y1 < t1`, `y2 < t2`.
pub fn w2_perm(x: &LaurentSeries, x2: &BivariateLaurent, t1: i64, t2: i64) -> Result<BivariateLaurent> {
    check_generator(x)?;
    if !x.is_exact() || !x2.is_exact() {
        return Err(Error::InvalidInput("cylinder series need exact generators".into()));
    }
    let b = divided_difference(x)?;
    let b2 = b.mul(&b);
    let xp = x.diff();
    let xpxp = BivariateLaurent::lift(&xp, Var::Y1).mul(&BivariateLaurent::lift(&xp, Var::Y2));
    let e = b2.sub(&xpxp).exact_div_diff(2)?;
    let (e1, e2) = (e.min_degree(Var::Y1).unwrap_or(0), e.min_degree(Var::Y2).unwrap_or(0));
    // W = R1 R2 S with R = 1/X′ = O(y²): S is needed below (t − 2).
    let inv_b2 = b2.reciprocal(t1 - 2 - e1, t2 - 2 - e2)?;
    let s = x2.add(&e.mul(&inv_b2));
    let (s1, s2) = (s.min_degree(Var::Y1).unwrap_or(0), s.min_degree(Var::Y2).unwrap_or(0));
    let r1 = BivariateLaurent::lift(&xp.reciprocal(t1 - s1)?, Var::Y1);
    let r2 = BivariateLaurent::lift(&xp.reciprocal(t2 - s2)?, Var::Y2);
    let w = r1.mul(&r2).mul(&s);
    let ok = w.trunc1().is_none_or(|t| t >= t1) && w.trunc2().is_none_or(|t| t >= t2);
    if !ok {
        return Err(Error::TruncationTooLow(format!(
            "cylinder series known below ({:?}, {:?}), ({t1}, {t2}) requested",
            w.trunc1(),
            w.trunc2()
        )));
    }
    Ok(w.truncate(Some(t1), Some(t2)))
}

/// `W_par,2(X(y1), X(y2))`: the permutation series plus
/// `overcount_series(X) / (X′(y1) X′(y2))`.
pub fn w2_part(x: &LaurentSeries, x2: &BivariateLaurent, t1: i64, t2: i64) -> Result<BivariateLaurent> {
    w2_perm(x, &x2.add(&overcount_series(x)?), t1, t2)
}

pub fn w2(kind: Kind, spec: &BivariateCumulantSpec, t1: i64, t2: i64) -> Result<BivariateLaurent> {
    match kind {
        Kind::Permutation => w2_perm(&spec.x(), &spec.x2(), t1, t2),
        Kind::Partition => w2_part(&spec.x(), &spec.x2(), t1, t2),
    }
}

/// `Res_{y1} Res_{y2} W(y1,y2) X(y1)^i X′(y1) X(y2)^j X′(y2)`, taking the
/// residue in `inner` first.
pub fn double_residue(w: &BivariateLaurent, x: &LaurentSeries, i: usize, j: usize, inner: Var) -> Result<KappaPolynomial> {
    if w.is_empty() {
        return Ok(KappaPolynomial::zero());
    }
    let (inner_n, outer_n) = match inner {
        Var::Y1 => (i, j),
        Var::Y2 => (j, i),
    };
    let weight = |n: usize, min: i64| -> LaurentSeries {
        power_below(x, n, -min + 2).mul(&x.diff()).truncate(-min)
    };
    let p_inner = weight(inner_n, w.min_degree(inner).unwrap());
    let r = w.mul(&BivariateLaurent::lift(&p_inner, inner)).residue_in(inner)?;
    if r.is_zero() && r.is_exact() {
        return Ok(KappaPolynomial::zero());
    }
    let p_outer = weight(outer_n, r.min_deg());
    r.mul(&p_outer).residue()
}

/// `α^{(0)}_{i,j}` (permutations) or `m^{(0)}_{i,j}` (partitions).
pub fn m2_coefficient(kind: Kind, i: usize, j: usize) -> Result<KappaPolynomial> {
    if i == 0 || j == 0 {
        return Err(Error::InvalidInput("cylinder moments need i, j >= 1".into()));
    }
    let n = (i + j) as u32;
    m2_for_spec(kind, &BivariateCumulantSpec::generic(n, n), i, j)
}

/// Cylinder moment for an arbitrary choice of cumulants.
pub fn m2_for_spec(kind: Kind, spec: &BivariateCumulantSpec, i: usize, j: usize) -> Result<KappaPolynomial> {
    let w = w2(kind, spec, i as i64 + 2, j as i64 + 2)?;
    double_residue(&w, &spec.x(), i, j, Var::Y2)
}

/// Brute-force κ-only part of the cylinder moment: all `σ ∈ S_{i+j}` with
/// `⟨σ, τ⟩` transitive and genus 0, `τ = (1…i)(i+1…i+j)`; for partitions the
/// cycle sets are deduplicated as block sets.
pub fn annular_oracle(i: usize, j: usize, kind: Kind, limit: usize) -> Result<KappaPolynomial> {
    let n = i + j;
    if i == 0 || j == 0 {
        return Err(Error::InvalidInput("annular oracle needs i, j >= 1".into()));
    }
    if n > limit {
        return Err(Error::OracleLimitExceeded { what: "annular configuration", n, limit });
    }
    let tau: Vec<usize> = (0..n).map(|x| if x < i { (x + 1) % i } else { i + (x - i + 1) % j }).collect();
    type Found = (BTreeMap<Vec<u32>, u64>, HashSet<Vec<usize>>);
    let shard = |first: usize| -> Result<Found> {
        let mut images: Vec<usize> = std::iter::once(first).chain((0..n).filter(|&x| x != first)).collect();
        let mut scratch = GenusScratch::new(n);
        let mut types: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
        let mut blocks: HashSet<Vec<usize>> = HashSet::new();
        loop {
            if is_transitive(&images, &tau) && scratch.pair_genus(&images, &tau, 2)? == 0 {
                match kind {
                    Kind::Permutation => {
                        let mut ty = cycle_lengths(&images);
                        ty.sort_unstable();
                        *types.entry(ty).or_insert(0) += 1;
                    }
                    Kind::Partition => {
                        blocks.insert(block_labels(&images));
                    }
                }
            }
            if !next_permutation(&mut images[1..]) {
                break;
            }
        }
        Ok((types, blocks))
    };
    let (types, blocks) = (0..n).into_par_iter().map(shard).try_reduce(
        || (BTreeMap::new(), HashSet::new()),
        |(mut ta, mut ba), (tb, bb)| {
            for (k, v) in tb {
                *ta.entry(k).or_insert(0) += v;
            }
            ba.extend(bb);
            Ok((ta, ba))
        },
    )?;
    let mut out = KappaPolynomial::zero();
    let mut add = |ty: &[u32], c: u64| {
        let m = crate::algebra::KappaMonomial::from_indices(ty.iter().copied());
        out.add_term(m, Rational::from_integer(BigInt::from(c)));
    };
    for (ty, c) in &types {
        add(ty, *c);
    }
    for labels in &blocks {
        let mut sizes: BTreeMap<usize, u32> = BTreeMap::new();
        for &l in labels {
            *sizes.entry(l).or_insert(0) += 1;
        }
        let ty: Vec<u32> = sizes.into_values().collect();
        add(&ty, 1);
    }
    Ok(out)
}

fn cycle_lengths(images: &[usize]) -> Vec<u32> {
    let mut seen = vec![false; images.len()];
    let mut out = Vec::new();
    for s in 0..images.len() {
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = images[x];
            len += 1;
        }
        if len > 0 {
            out.push(len);
        }
    }
    out
}

/// Canonical block labelling (restricted-growth string) of the cycle sets.
fn block_labels(images: &[usize]) -> Vec<usize> {
    let n = images.len();
    let mut label = vec![usize::MAX; n];
    let mut next = 0;
    for s in 0..n {
        if label[s] != usize::MAX {
            continue;
        }
        let mut x = s;
        while label[x] == usize::MAX {
            label[x] = next;
            x = images[x];
        }
        next += 1;
    }
    label
}

fn next_permutation(a: &mut [usize]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// The closed form of the overcount correction, expanded directly.
pub fn overcount_direct(x_values: &[KappaPolynomial]) -> BivariateLaurent {
    let k = x_values.len() as i64;
    let mut terms = Vec::new();
    for i in 1..k {
        for j in 1..=k - i {
            let c = Rational::from_integer(BigInt::from(1 - i * j));
            terms.push(((i - 1, j - 1), x_values[(i + j - 1) as usize].scale(&c)));
        }
    }
    BivariateLaurent::exact(terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> KappaPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn first_moments() {
        assert_eq!(m2_coefficient(Kind::Partition, 1, 1).unwrap(), p("k1_1 + k2"));
        assert_eq!(m2_coefficient(Kind::Permutation, 1, 1).unwrap(), p("k1_1 + k2"));
        assert_eq!(m2_coefficient(Kind::Partition, 1, 2).unwrap(), p("k1_2 + 2*k1*k1_1 + k3 + 2*k1*k2"));
    }

    #[test]
    fn kappa_only_sector() {
        let spec = BivariateCumulantSpec::generic(4, 4).without_second_order();
        // A spanning 3-cycle with two points on one boundary and one on the
        // other has 2·1 genus-0 cyclic orders, hence 8 rather than 4.
        assert_eq!(m2_for_spec(Kind::Permutation, &spec, 2, 2).unwrap(), p("4*k4 + 8*k1*k3 + 2*k2^2 + 4*k1^2*k2"));
        assert_eq!(annular_oracle(2, 2, Kind::Permutation, 8).unwrap(), p("4*k4 + 8*k1*k3 + 2*k2^2 + 4*k1^2*k2"));
        assert_eq!(m2_for_spec(Kind::Partition, &spec, 2, 2).unwrap(), p("k4 + 4*k1*k3 + 2*k2^2 + 4*k1^2*k2"));
    }

    #[test]
    fn oracle_small_cases() {
        assert_eq!(annular_oracle(1, 1, Kind::Partition, 8).unwrap(), p("k2"));
        assert_eq!(annular_oracle(1, 1, Kind::Permutation, 8).unwrap(), p("k2"));
        assert_eq!(annular_oracle(2, 2, Kind::Partition, 8).unwrap(), p("k4 + 4*k1*k3 + 2*k2^2 + 4*k1^2*k2"));
        assert!(matches!(annular_oracle(5, 4, Kind::Partition, 8), Err(Error::OracleLimitExceeded { .. })));
    }

    #[test]
    fn overcount_closed_form() {
        let x = LaurentSeries::kappa_generator(8);
        let vals: Vec<KappaPolynomial> = (1..=8).map(KappaPolynomial::kappa).collect();
        assert_eq!(overcount_series(&x).unwrap(), overcount_direct(&vals));
    }

    #[test]
    fn substitution_rule() {
        assert_eq!(substitute_overcount_poly(&p("k1_1")), p("k1_1"));
        assert_eq!(substitute_overcount_poly(&p("k1_2")), p("k1_2 - k3"));
        let s = substitute_overcount(&BivariateCumulantSpec::generic(3, 3));
        assert_eq!(s.second()[&(1, 2)], p("k1_2 - k3"));
        assert_eq!(s.second()[&(1, 1)], p("k1_1"));
    }

    #[test]
    fn residue_order_is_irrelevant() {
        let spec = BivariateCumulantSpec::generic(5, 5);
        let w = w2(Kind::Partition, &spec, 4, 5).unwrap();
        let a = double_residue(&w, &spec.x(), 2, 3, Var::Y2).unwrap();
        let b = double_residue(&w, &spec.x(), 2, 3, Var::Y1).unwrap();
        assert_eq!(a, b);
        assert!(!a.is_zero());
    }
}
