//! All-genus generating function of permutations by cycle type,
//!
//! `W^{(g)}(X(y)) = Σ_{[a] ⊢ g} (−d/dX)^{2g+l−1} [ (−1/X′) Π_i X^{(2a_i)} / (4^{a_i} (2a_i+1)!) ] / sym(a)`,
//!
//! in its integer-partition form and in its `ħ`/`u` exponential form, and
//! extraction of the moments `α_n^{(g)} = −Res_{y→0} W^{(g)}(X(y)) X(y)^n X′(y) dy`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;

use crate::algebra::{DxOperator, KappaPolynomial, LaurentSeries, Rational};
use crate::combinatorics::integer_partition::factorial;
use crate::combinatorics::IntegerPartition;
use crate::error::{Error, Result};
use crate::spec::{KappaSpec, ParamPoly};

/// One summand of the genus-`g` formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanTerm {
    pub partition: IntegerPartition,
    /// Number of `−d/dX` applications, `2g + l − 1`.
    pub order: u32,
    /// `1/sym(a)`.
    pub sym_factor: Rational,
    /// `1/sym(a) · Π 1/(4^{a_i} (2a_i+1)!)`.
    pub coefficient: Rational,
    /// `[2a_1, …, 2a_l]`.
    pub derivative_orders: Vec<u32>,
}

/// The integer-partition expansion of the genus-`g` formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenusTermPlan {
    pub g: u32,
    pub terms: Vec<PlanTerm>,
}

/// `1/(4^k (2k+1)!)`, the Taylor coefficients of `sinh(t/2)/(t/2)`.
pub fn taylor_weight(k: u32) -> Rational {
    let d = BigInt::from(4u32).pow(k) * BigInt::from(factorial(2 * k as usize + 1));
    Rational::new(BigInt::one(), d)
}

impl GenusTermPlan {
    /// Empty for `g = 0` (that genus is special-cased to `y`).
    pub fn new(g: u32) -> Self {
        let terms = if g == 0 {
            Vec::new()
        } else {
            IntegerPartition::all(g as usize)
                .into_iter()
                .map(|a| {
                    let l = a.len() as u32;
                    let sym_factor = Rational::new(BigInt::one(), BigInt::from(a.sym()));
                    let coefficient =
                        a.parts().iter().fold(sym_factor.clone(), |acc, &ai| acc * taylor_weight(ai));
                    PlanTerm {
                        order: 2 * g + l - 1,
                        derivative_orders: a.parts().iter().map(|&ai| 2 * ai).collect(),
                        sym_factor,
                        coefficient,
                        partition: a,
                    }
                })
                .collect()
        };
        Self { g, terms }
    }
}

/// Checks that `X = 1/y + (power series)`.
pub(crate) fn check_generator(x: &LaurentSeries) -> Result<()> {
    let ok = x.min_deg() == -1 && x.coeff(-1).ok().and_then(|c| c.as_constant()).is_some_and(|c| c.is_one());
    if !ok {
        return Err(Error::InvalidInput(format!("generator must be 1/y + power series, got {x}")));
    }
    Ok(())
}

/// `1/X′` known below `n + 3`: enough for `W` below `n + 2`, which is what
/// the residue for `α_n` reads.
pub(crate) fn dx_operator_for(x: &LaurentSeries, out_trunc: i64) -> Result<DxOperator> {
    DxOperator::new(x, out_trunc + 1)
}

fn require_trunc(w: LaurentSeries, trunc: i64, what: &str) -> Result<LaurentSeries> {
    match w.trunc() {
        Some(t) if t < trunc => Err(Error::TruncationTooLow(format!(
            "{what} is only known below y^{t}, y^{trunc} was requested; the generator is truncated too low"
        ))),
        _ => Ok(w.truncate(trunc)),
    }
}

/// `W^{(g)}_per(X(y))` known below `y^trunc`.
///
/// The sum over the plan is evaluated in nested (Horner) form, grouping the
/// terms by their number of `d/dX` applications.
pub fn w_per_genus(g: u32, x: &LaurentSeries, trunc: i64) -> Result<LaurentSeries> {
    check_generator(x)?;
    if g == 0 {
        return Ok(LaurentSeries::monomial(1, KappaPolynomial::one()));
    }
    let op = dx_operator_for(x, trunc)?;
    let neg_inv = op.inverse_derivative().neg();
    let mut derivs: BTreeMap<u32, LaurentSeries> = BTreeMap::new();
    let mut by_order: BTreeMap<u32, LaurentSeries> = BTreeMap::new();
    for term in GenusTermPlan::new(g).terms {
        let mut f = neg_inv.scale(&term.coefficient);
        for &k in &term.derivative_orders {
            let xk = derivs.entry(k).or_insert_with(|| x.nth_diff(k));
            f = f.mul(xk);
        }
        let slot = by_order.entry(term.order).or_insert_with(LaurentSeries::zero);
        *slot = slot.add(&f);
    }
    let lo = 2 * g;
    let hi = 3 * g - 1;
    let mut acc = LaurentSeries::zero();
    for m in (lo..=hi).rev() {
        if m < hi {
            acc = op.apply(&acc).neg();
        }
        if let Some(f) = by_order.get(&m) {
            acc = acc.add(f);
        }
    }
    for _ in 0..lo {
        acc = op.apply(&acc).neg();
    }
    require_trunc(acc, trunc, "W_per")
}

/// `W^{(g)}_per(X(y))` for `g = 0 … g_max` from the exponential form:
/// with `A = Σ_{k≥1} X^{(2k)} ħ^{2k} u^{2k+1} / (4^k (2k+1)!)`, the genus-`g`
/// series is `Σ_e (−d/dX)^{e−1} [ −(1/X′) [ħ^{2g} u^e] exp(A) ]`.
pub fn w_per_hbar(g_max: u32, x: &LaurentSeries, trunc: i64) -> Result<Vec<LaurentSeries>> {
    check_generator(x)?;
    let op = dx_operator_for(x, trunc)?;
    // Polynomial in (ħ², u): key (h, e) ↦ coefficient series.
    type HU = BTreeMap<(u32, u32), LaurentSeries>;
    let mul = |a: &HU, b: &HU| -> HU {
        let mut out = HU::new();
        for (&(h1, e1), s1) in a {
            for (&(h2, e2), s2) in b {
                if h1 + h2 > g_max {
                    continue;
                }
                let p = s1.mul(s2);
                let slot = out.entry((h1 + h2, e1 + e2)).or_insert_with(LaurentSeries::zero);
                *slot = slot.add(&p);
            }
        }
        out
    };
    let a: HU = (1..=g_max).map(|k| ((k, 2 * k + 1), x.nth_diff(2 * k).scale(&taylor_weight(k)))).collect();
    let mut exp_a: HU = HU::from([((0, 0), LaurentSeries::one())]);
    let mut power = exp_a.clone();
    let mut p_fact = Rational::one();
    for p in 1..=g_max {
        power = mul(&power, &a);
        p_fact /= Rational::from_integer(BigInt::from(p));
        for (&key, s) in &power {
            let slot = exp_a.entry(key).or_insert_with(LaurentSeries::zero);
            *slot = slot.add(&s.scale(&p_fact));
        }
    }
    let neg_inv = op.inverse_derivative().neg();
    let mut out = vec![LaurentSeries::monomial(1, KappaPolynomial::one())];
    for g in 1..=g_max {
        let mut w = LaurentSeries::zero();
        for (&(h, e), s) in &exp_a {
            if h != g {
                continue;
            }
            let mut term = neg_inv.mul(s);
            for _ in 0..e - 1 {
                term = op.apply(&term).neg();
            }
            w = w.add(&term);
        }
        out.push(require_trunc(w, trunc, "W_per (exponential form)")?);
    }
    Ok(out)
}

/// `−Res_{y→0} W(X(y)) X(y)^n X′(y)`, reading only the coefficients needed.
pub fn extract_moment(w: &LaurentSeries, x: &LaurentSeries, n: usize) -> Result<KappaPolynomial> {
    if w.is_exact() && w.is_zero() {
        return Ok(KappaPolynomial::zero());
    }
    // X^n X′ is needed below degree −w.min_deg, hence X^n below −w.min_deg + 2.
    let p_trunc = -w.min_deg();
    let xn = power_below(x, n, p_trunc + 2);
    let integrand = xn.mul(&x.diff()).truncate(p_trunc).mul(w);
    Ok(-integrand.residue()?)
}

/// `x^n` known below `t`, for `x` exact with `min_deg = −1`.
pub(crate) fn power_below(x: &LaurentSeries, n: usize, t: i64) -> LaurentSeries {
    let mut acc = LaurentSeries::one().truncate(t + n as i64);
    for k in 1..=n {
        acc = acc.mul(x).truncate(t + (n - k) as i64);
    }
    acc
}

fn check_cutoff(n: usize, cutoff: u32) -> Result<()> {
    if (cutoff as usize) < n {
        return Err(Error::CutoffTooSmall { cutoff, required: n as u32 });
    }
    Ok(())
}

/// `α_n^{(g)}` as a polynomial in `κ_1 … κ_n`.
///
/// Requires `cutoff ≥ n`; cumulants of index above `n` cannot occur in a
/// weight-`n` polynomial, so the generator is built with `κ_1 … κ_n` only.
pub fn alpha_coefficient(g: u32, n: usize, cutoff: u32) -> Result<KappaPolynomial> {
    check_cutoff(n, cutoff)?;
    if n == 0 {
        return Ok(if g == 0 { KappaPolynomial::one() } else { KappaPolynomial::zero() });
    }
    let x = LaurentSeries::kappa_generator(n as u32);
    let w = w_per_genus(g, &x, n as i64 + 2)?;
    extract_moment(&w, &x, n)
}

/// `α_0^{(g)} … α_{n_max}^{(g)}`, sharing one evaluation of `W^{(g)}`.
pub fn alpha_coefficients(g: u32, n_max: usize, cutoff: u32) -> Result<Vec<KappaPolynomial>> {
    check_cutoff(n_max, cutoff)?;
    let x = LaurentSeries::kappa_generator(n_max.max(1) as u32);
    moments_for_generator(g, &x, n_max)
}

/// `α_n^{(g)}` for `n = 0 … n_max` for an arbitrary generator `X`.
pub fn moments_for_generator(g: u32, x: &LaurentSeries, n_max: usize) -> Result<Vec<KappaPolynomial>> {
    let w = w_per_genus(g, x, n_max as i64 + 2)?;
    let mut out = vec![if g == 0 { KappaPolynomial::one() } else { KappaPolynomial::zero() }];
    for n in 1..=n_max {
        out.push(extract_moment(&w, x, n)?);
    }
    Ok(out)
}

/// `α_n^{(g)}` under a specialization, for `n = 0 … n_max` (the coefficient
/// of `1/x^{n+1}` in `W^{(g)}_per(x)`).
pub fn specialize_series(g: u32, spec: &KappaSpec, n_max: usize) -> Result<Vec<ParamPoly>> {
    let x = spec.generator(n_max.max(1) as u32);
    moments_for_generator(g, &x, n_max)?.iter().map(|p| spec.to_param(p)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i64, b: i64) -> Rational {
        Rational::new(BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn plans() {
        let p1 = GenusTermPlan::new(1);
        assert_eq!(p1.terms.len(), 1);
        assert_eq!(p1.terms[0].order, 2);
        assert_eq!(p1.terms[0].coefficient, r(1, 24));
        let p2 = GenusTermPlan::new(2);
        let c: Vec<(u32, Rational)> = p2.terms.iter().map(|t| (t.order, t.coefficient.clone())).collect();
        assert_eq!(c, vec![(5, r(1, 24 * 24 * 2)), (4, r(1, 1920))]);
        let p3 = GenusTermPlan::new(3);
        let c: Vec<(u32, Rational)> = p3.terms.iter().map(|t| (t.order, t.coefficient.clone())).collect();
        assert_eq!(c, vec![(8, r(1, 24 * 24 * 24 * 6)), (7, r(1, 1920 * 24)), (6, r(1, 322560))]);
        assert!(GenusTermPlan::new(0).terms.is_empty());
    }

    #[test]
    fn genus_one_matches_direct_formula() {
        let x = LaurentSeries::kappa_generator(6);
        let w = w_per_genus(1, &x, 8).unwrap();
        let op = DxOperator::new(&x, 12).unwrap();
        let inner = op.inverse_derivative().mul(&x.nth_diff(2)).scale(&r(1, 24));
        let direct = op.apply(&op.apply(&inner)).neg();
        assert!(w.agrees_with(&direct));
        assert_eq!(w.trunc(), Some(8));
    }

    #[test]
    fn example_moments() {
        assert_eq!(alpha_coefficient(1, 4, 4).unwrap().to_string(), "4*k1*k3 + k2^2 + 5*k4");
        assert_eq!(alpha_coefficient(2, 5, 5).unwrap().to_string(), "8*k5");
        assert_eq!(
            alpha_coefficient(3, 8, 8).unwrap().to_string(),
            "1440*k1*k7 + 720*k2*k6 + 608*k3*k5 + 276*k4^2 + 3044*k8"
        );
        assert_eq!(alpha_coefficient(1, 3, 9).unwrap().to_string(), "k3");
        assert!(matches!(alpha_coefficient(1, 4, 3), Err(Error::CutoffTooSmall { .. })));
    }

    #[test]
    fn planar_moments_and_inverse() {
        let a = alpha_coefficients(0, 3, 3).unwrap();
        let s: Vec<String> = a.iter().map(|p| p.to_string()).collect();
        assert_eq!(s, vec!["1", "k1", "k1^2 + k2", "k1^3 + 3*k1*k2 + k3"]);
        // X(W^{(0)}) = X(y) as series: y is the formal inverse.
        assert_eq!(w_per_genus(0, &LaurentSeries::kappa_generator(3), 5).unwrap().to_string(), "(1)*y^1");
    }

    #[test]
    fn truncated_generator_is_rejected() {
        let x = LaurentSeries::kappa_generator(4).truncate(4);
        assert!(matches!(w_per_genus(1, &x, 20), Err(Error::TruncationTooLow(_))));
        assert!(w_per_genus(1, &x, 6).is_ok());
        assert!(w_per_genus(1, &LaurentSeries::one(), 6).is_err());
    }

    #[test]
    fn exponential_form_agrees_at_low_order() {
        let x = LaurentSeries::kappa_generator(7);
        let h = w_per_hbar(2, &x, 7).unwrap();
        assert_eq!(h.len(), 3);
        for g in 0..=2 {
            assert!(h[g].agrees_with(&w_per_genus(g as u32, &x, 7).unwrap()), "g={g}");
        }
    }
}
