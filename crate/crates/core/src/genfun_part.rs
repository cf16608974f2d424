//! Generating functions of set partitions of genus 1 and 2 by block sizes,
//! coefficient extraction of `m_n^{(g)}`, and two closed-form genus-1 counts.

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::Zero;

use crate::algebra::{KappaPolynomial, LaurentSeries, Rational};
use crate::error::{Error, Result};
use crate::genfun_perm::{check_generator, dx_operator_for, extract_moment, w_per_genus};
use crate::spec::{KappaSpec, ParamPoly};

/// Extra derivative factor in a bracket term.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Factor {
    None,
    /// `X″(y)`
    Second,
    /// `X″(y)²`
    SecondSquared,
    /// `X‴(y)`
    Third,
}

/// `coefficient · y^{−y_power} · X′(y)^{−dx_power} · factor`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketTerm {
    pub coefficient: (i64, i64),
    pub y_power: u32,
    pub dx_power: u32,
    pub factor: Factor,
}

const fn bt(num: i64, den: i64, y_power: u32, dx_power: u32, factor: Factor) -> BracketTerm {
    BracketTerm { coefficient: (num, den), y_power, dx_power, factor }
}

/// Genus 1: `W = d/dX [ 1/(4y⁴X′²) + 1/(6y⁶X′³) ]`.
pub const GENUS1_BRACKET: [BracketTerm; 2] = [bt(1, 4, 4, 2, Factor::None), bt(1, 6, 6, 3, Factor::None)];

/// Genus 2: `W = d/dX [ Σ of these 15 terms ]`.
pub const GENUS2_BRACKET: [BracketTerm; 15] = [
    bt(21, 8, 8, 4, Factor::None),
    bt(74, 5, 10, 5, Factor::None),
    bt(24, 1, 12, 6, Factor::None),
    bt(12, 1, 14, 7, Factor::None),
    bt(-1, 8, 8, 6, Factor::Third),
    bt(-1, 4, 10, 7, Factor::Third),
    bt(-1, 8, 12, 8, Factor::Third),
    bt(1, 24, 6, 6, Factor::SecondSquared),
    bt(1, 1, 8, 7, Factor::SecondSquared),
    bt(19, 8, 10, 8, Factor::SecondSquared),
    bt(35, 24, 12, 9, Factor::SecondSquared),
    bt(1, 1, 7, 5, Factor::Second),
    bt(23, 3, 9, 6, Factor::Second),
    bt(29, 2, 11, 7, Factor::Second),
    bt(8, 1, 13, 8, Factor::Second),
];

/// `W^{(g)}_par(X(y))` for `g ∈ {0, 1, 2}`, known below `y^trunc`. Genus 0
/// coincides with the permutation series.
pub fn w_par_genus(g: u32, x: &LaurentSeries, trunc: i64) -> Result<LaurentSeries> {
    let bracket: &[BracketTerm] = match g {
        0 => return w_per_genus(0, x, trunc),
        1 => &GENUS1_BRACKET,
        2 => &GENUS2_BRACKET,
        _ => {
            return Err(Error::UnsupportedGenus {
                g,
                kind: "partition",
                reason: "closed partition formulas are available for genus 0, 1 and 2 only",
            })
        }
    };
    check_generator(x)?;
    let op = dx_operator_for(x, trunc)?;
    let inv = op.inverse_derivative();
    let x2 = x.nth_diff(2);
    let x3 = x.nth_diff(3);
    let x2sq = x2.mul(&x2);
    let max_q = bracket.iter().map(|t| t.dx_power).max().unwrap_or(0);
    let mut inv_pows = vec![LaurentSeries::one()];
    for q in 1..=max_q as usize {
        let next = inv_pows[q - 1].mul(inv);
        inv_pows.push(next);
    }
    let mut inner = LaurentSeries::zero();
    for t in bracket {
        let c = Rational::new(BigInt::from(t.coefficient.0), BigInt::from(t.coefficient.1));
        let mut term = inv_pows[t.dx_power as usize].shift(-(t.y_power as i64)).scale(&c);
        term = match t.factor {
            Factor::None => term,
            Factor::Second => term.mul(&x2),
            Factor::SecondSquared => term.mul(&x2sq),
            Factor::Third => term.mul(&x3),
        };
        inner = inner.add(&term);
    }
    let w = op.apply(&inner);
    if !w.is_zero() && w.min_deg() < 0 {
        return Err(Error::RegularityViolated(w.min_deg()));
    }
    match w.trunc() {
        Some(t) if t < trunc => Err(Error::TruncationTooLow(format!(
            "W_par is only known below y^{t}, y^{trunc} was requested"
        ))),
        _ => Ok(w.truncate(trunc)),
    }
}

/// `m_n^{(g)} = −Res_{y→0} W^{(g)}_par(X(y)) X(y)^n X′(y) dy` in `κ_1 … κ_n`.
pub fn m_coefficient(g: u32, n: usize, cutoff: u32) -> Result<KappaPolynomial> {
    if (cutoff as usize) < n {
        return Err(Error::CutoffTooSmall { cutoff, required: n as u32 });
    }
    if n == 0 {
        w_par_genus(g, &LaurentSeries::kappa_generator(1), 2)?;
        return Ok(if g == 0 { KappaPolynomial::one() } else { KappaPolynomial::zero() });
    }
    let x = LaurentSeries::kappa_generator(n as u32);
    let w = w_par_genus(g, &x, n as i64 + 2)?;
    extract_moment(&w, &x, n)
}

/// `m_n^{(g)}` for `n = 0 … n_max` for an arbitrary generator.
pub fn m_moments_for_generator(g: u32, x: &LaurentSeries, n_max: usize) -> Result<Vec<KappaPolynomial>> {
    let w = w_par_genus(g, x, n_max as i64 + 2)?;
    let mut out = vec![if g == 0 { KappaPolynomial::one() } else { KappaPolynomial::zero() }];
    for n in 1..=n_max {
        out.push(extract_moment(&w, x, n)?);
    }
    Ok(out)
}

/// `m_0^{(g)} … m_{n_max}^{(g)}` in `κ_1 … κ_{n_max}`.
pub fn m_coefficients(g: u32, n_max: usize, cutoff: u32) -> Result<Vec<KappaPolynomial>> {
    if (cutoff as usize) < n_max {
        return Err(Error::CutoffTooSmall { cutoff, required: n_max as u32 });
    }
    m_moments_for_generator(g, &LaurentSeries::kappa_generator(n_max.max(1) as u32), n_max)
}

/// `m_n^{(g)}` under a specialization for `n = 0 … n_max`.
pub fn specialize_partition_series(g: u32, spec: &KappaSpec, n_max: usize) -> Result<Vec<ParamPoly>> {
    let x = spec.generator(n_max.max(1) as u32);
    m_moments_for_generator(g, &x, n_max)?.iter().map(|p| spec.to_param(p)).collect()
}

/// Genus-1 partitions of `{1, …, pk}` into `k` blocks of size `p`:
/// `((p−1)²p/2) Σ_{l=0}^{k−2} C(pk,l) · C(k+1−l, 3) · (p−1)^{k−2−l}`.
///
/// Returns 0 when `p < 2` or `k < 2`, where no such partition exists.
pub fn faa_di_bruno_m1(p: u32, k: u32) -> BigInt {
    if p < 2 || k < 2 {
        return BigInt::zero();
    }
    let (pb, n) = (BigInt::from(p), BigInt::from(p * k));
    let pre = (&pb - 1u32) * (&pb - 1u32) * &pb / 2u32;
    let sum: BigInt = (0..=k - 2)
        .map(|l| {
            let tri = BigInt::from((k - 1 - l) * (k - l) * (k + 1 - l) / 6);
            binomial(n.clone(), BigInt::from(l)) * tri * (&pb - 1u32).pow(k - 2 - l)
        })
        .sum();
    pre * sum
}

/// Genus-1 partitions with exactly three blocks of pairwise distinct sizes
/// `r, p, q`: `(n/2)[p(p−1)(q+r−2) + q(q−1)(p+r−2) + r(r−1)(q+p−2) + 8(p−1)(r−1)(q−1)]`.
pub fn three_block_m1(r: u32, p: u32, q: u32) -> Result<BigInt> {
    if r == p || p == q || r == q {
        return Err(Error::NotPairwiseDistinct(r, p, q));
    }
    if r == 0 || p == 0 || q == 0 {
        return Err(Error::InvalidInput("block sizes must be positive".into()));
    }
    let (r, p, q) = (r as i64, p as i64, q as i64);
    let n = r + p + q;
    let bracket = p * (p - 1) * (q + r - 2)
        + q * (q - 1) * (p + r - 2)
        + r * (r - 1) * (q + p - 2)
        + 8 * (p - 1) * (r - 1) * (q - 1);
    Ok(BigInt::from(n) * BigInt::from(bracket) / 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genfun_perm::w_per_genus;

    #[test]
    fn example_moments() {
        assert_eq!(m_coefficient(1, 4, 4).unwrap().to_string(), "k2^2");
        assert_eq!(
            m_coefficient(1, 6, 6).unwrap().to_string(),
            "15*k1^2*k2^2 + 30*k1*k2*k3 + 10*k2^3 + 9*k2*k4 + 6*k3^2"
        );
        assert_eq!(m_coefficient(2, 7, 7).unwrap().to_string(), "7*k1*k3^2 + 14*k2^2*k3 + 7*k3*k4");
        assert!(m_coefficient(1, 3, 3).unwrap().is_zero());
        assert!(matches!(m_coefficient(3, 8, 8), Err(Error::UnsupportedGenus { .. })));
    }

    #[test]
    fn genus_one_harer_zagier_agrees_with_permutations() {
        let x = LaurentSeries::generator_from_values([KappaPolynomial::zero(), KappaPolynomial::one()]);
        let a = w_par_genus(1, &x, 16).unwrap();
        let b = w_per_genus(1, &x, 16).unwrap();
        assert!(a.agrees_with(&b));
    }

    #[test]
    fn bracket_terms_are_regular() {
        for t in GENUS1_BRACKET.iter().chain(GENUS2_BRACKET.iter()) {
            let extra = match t.factor {
                Factor::None => 0,
                Factor::Second => 3,
                Factor::SecondSquared => 6,
                Factor::Third => 4,
            };
            assert_eq!(2 * t.dx_power as i64 - t.y_power as i64 - extra, 0, "{t:?}");
        }
    }

    #[test]
    fn closed_forms() {
        assert_eq!(faa_di_bruno_m1(2, 2), BigInt::from(1));
        assert_eq!(faa_di_bruno_m1(3, 2), BigInt::from(6));
        assert_eq!(faa_di_bruno_m1(2, 3), BigInt::from(10));
        assert_eq!(faa_di_bruno_m1(1, 5), BigInt::zero());
        assert_eq!(three_block_m1(1, 2, 3).unwrap(), BigInt::from(30));
        assert_eq!(three_block_m1(1, 2, 4).unwrap(), BigInt::from(63));
        assert_eq!(three_block_m1(3, 1, 2).unwrap(), BigInt::from(30));
        assert_eq!(three_block_m1(1, 1, 2), Err(Error::NotPairwiseDistinct(1, 1, 2)));
    }
}
