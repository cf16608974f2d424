use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::series::{add_opt, min_opt};
use super::{KappaPolynomial, LaurentSeries, Rational};
use crate::error::{Error, Result};

static ZERO: KappaPolynomial = KappaPolynomial::zero();

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    Y1,
    Y2,
}

/// A Laurent series in `(y1, y2)` with cumulant-polynomial coefficients.
///
/// Truncation is tracked per variable: the coefficient of `y1^a y2^b` is
/// known iff `a < trunc1` and `b < trunc2`, where `None` means no bound in
/// that variable. Only nonzero coefficients are stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BivariateLaurent {
    terms: BTreeMap<(i64, i64), KappaPolynomial>,
    trunc1: Option<i64>,
    trunc2: Option<i64>,
}

impl BivariateLaurent {
    pub fn new(
        terms: impl IntoIterator<Item = ((i64, i64), KappaPolynomial)>,
        trunc1: Option<i64>,
        trunc2: Option<i64>,
    ) -> Self {
        let mut s = Self { terms: BTreeMap::new(), trunc1, trunc2 };
        for (d, c) in terms {
            s.add_at(d, &c);
        }
        s
    }

    pub fn exact(terms: impl IntoIterator<Item = ((i64, i64), KappaPolynomial)>) -> Self {
        Self::new(terms, None, None)
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, KappaPolynomial::one())
    }

    pub fn monomial(d1: i64, d2: i64, c: KappaPolynomial) -> Self {
        Self::exact([((d1, d2), c)])
    }

    /// `f(y1)` or `f(y2)` as a bivariate series; the other variable is exact.
    pub fn lift(f: &LaurentSeries, var: Var) -> Self {
        let terms = f.iter().map(|(d, c)| (if var == Var::Y1 { (d, 0) } else { (0, d) }, c.clone()));
        match var {
            Var::Y1 => Self::new(terms, f.trunc(), None),
            Var::Y2 => Self::new(terms, None, f.trunc()),
        }
    }

    fn in_window(&self, (d1, d2): (i64, i64)) -> bool {
        self.trunc1.is_none_or(|t| d1 < t) && self.trunc2.is_none_or(|t| d2 < t)
    }

    fn add_at(&mut self, d: (i64, i64), c: &KappaPolynomial) {
        if c.is_zero() || !self.in_window(d) {
            return;
        }
        let slot = self.terms.entry(d).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&d);
        }
    }

    pub fn trunc1(&self) -> Option<i64> {
        self.trunc1
    }

    pub fn trunc2(&self) -> Option<i64> {
        self.trunc2
    }

    pub fn is_exact(&self) -> bool {
        self.trunc1.is_none() && self.trunc2.is_none()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero terms sorted by `(deg1, deg2)`.
    pub fn iter(&self) -> impl Iterator<Item = ((i64, i64), &KappaPolynomial)> {
        self.terms.iter().map(|(&d, c)| (d, c))
    }

    pub fn coeff(&self, d1: i64, d2: i64) -> Result<&KappaPolynomial> {
        if !self.in_window((d1, d2)) {
            return Err(Error::TruncationTooLow(format!(
                "coefficient of y1^{d1} y2^{d2} requested outside the known window (y1 < {:?}, y2 < {:?})",
                self.trunc1, self.trunc2
            )));
        }
        Ok(self.terms.get(&(d1, d2)).unwrap_or(&ZERO))
    }

    /// Smallest degree present in `var`; for a zero series the truncation.
    pub fn min_degree(&self, var: Var) -> Option<i64> {
        let m = match var {
            Var::Y1 => self.terms.keys().map(|d| d.0).min(),
            Var::Y2 => self.terms.keys().map(|d| d.1).min(),
        };
        match m {
            Some(m) => Some(m),
            None => match var {
                Var::Y1 => self.trunc1,
                Var::Y2 => self.trunc2,
            },
        }
    }

    pub fn truncate(&self, t1: Option<i64>, t2: Option<i64>) -> Self {
        Self::new(self.terms.clone(), min_opt(self.trunc1, t1), min_opt(self.trunc2, t2))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = Self {
            terms: BTreeMap::new(),
            trunc1: min_opt(self.trunc1, other.trunc1),
            trunc2: min_opt(self.trunc2, other.trunc2),
        };
        for (&d, c) in self.terms.iter().chain(other.terms.iter()) {
            out.add_at(d, c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(&d, c)| (d, -c)).collect(),
            trunc1: self.trunc1,
            trunc2: self.trunc2,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.terms.iter().map(|(&d, p)| (d, p.scale(c))), self.trunc1, self.trunc2)
    }

    /// Product with per-variable truncation `min(a.t + b.min, b.t + a.min)`.
    pub fn mul(&self, other: &Self) -> Self {
        let t = |a: &Self, b: &Self, v: Var| {
            let (ta, tb) = match v {
                Var::Y1 => (a.trunc1, b.trunc1),
                Var::Y2 => (a.trunc2, b.trunc2),
            };
            min_opt(add_opt(ta, b.min_degree(v)), add_opt(tb, a.min_degree(v)))
        };
        let mut out = Self {
            terms: BTreeMap::new(),
            trunc1: t(self, other, Var::Y1),
            trunc2: t(self, other, Var::Y2),
        };
        let mut acc: BTreeMap<(i64, i64), KappaPolynomial> = BTreeMap::new();
        for (&(a1, a2), ca) in &self.terms {
            for (&(b1, b2), cb) in &other.terms {
                let d = (a1 + b1, a2 + b2);
                if out.in_window(d) {
                    acc.entry(d).or_default().add_product(ca, cb);
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        out.terms = acc;
        out
    }

    /// Multiplication by `y1^a y2^b`.
    pub fn shift(&self, a: i64, b: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(&(d1, d2), c)| ((d1 + a, d2 + b), c.clone())).collect(),
            trunc1: self.trunc1.map(|t| t + a),
            trunc2: self.trunc2.map(|t| t + b),
        }
    }

    /// `y·∂/∂y` in the given variable.
    pub fn euler(&self, var: Var) -> Self {
        Self::new(
            self.terms.iter().map(|(&(d1, d2), c)| {
                let k = if var == Var::Y1 { d1 } else { d2 };
                ((d1, d2), c.scale(&Rational::from_integer(BigInt::from(k))))
            }),
            self.trunc1,
            self.trunc2,
        )
    }

    /// Exchanges `y1` and `y2`.
    pub fn swap(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(&(a, b), c)| ((b, a), c.clone())).collect(),
            trunc1: self.trunc2,
            trunc2: self.trunc1,
        }
    }

    /// Multiplicative inverse for a series of the form `c·y1^a·y2^b·(1 + r)`
    /// with `c` a nonzero rational and `r` a power series without constant
    /// term. The result is known below `(t1, t2)`, or less when the input is
    /// truncated (relative precision is preserved per variable).
    pub fn reciprocal(&self, t1: i64, t2: i64) -> Result<Self> {
        let (m1, m2) = match (self.terms.keys().map(|d| d.0).min(), self.terms.keys().map(|d| d.1).min()) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(Error::NonInvertibleLeading("zero series".into())),
        };
        let lead = self.terms.get(&(m1, m2)).ok_or_else(|| {
            Error::NonInvertibleLeading(format!("no single leading term at y1^{m1} y2^{m2}"))
        })?;
        let c0 = lead
            .as_constant()
            .filter(|c| !c.is_zero())
            .ok_or_else(|| Error::NonInvertibleLeading(format!("leading coefficient {lead}")))?;
        let out1 = min_opt(Some(t1), self.trunc1.map(|t| t - 2 * m1)).unwrap();
        let out2 = min_opt(Some(t2), self.trunc2.map(|t| t - 2 * m2)).unwrap();
        let (l1, l2) = ((out1 + m1).max(0), (out2 + m2).max(0));
        let inv_c0 = c0.recip();
        // r[e] for e != (0,0), relative to the leading monomial.
        let rel: Vec<((i64, i64), KappaPolynomial)> = self
            .terms
            .iter()
            .filter(|(&d, _)| d != (m1, m2))
            .map(|(&(d1, d2), c)| ((d1 - m1, d2 - m2), c.scale(&inv_c0)))
            .filter(|&((e1, e2), _)| e1 < l1 && e2 < l2)
            .collect();
        let mut q: BTreeMap<(i64, i64), KappaPolynomial> = BTreeMap::new();
        if l1 > 0 && l2 > 0 {
            q.insert((0, 0), KappaPolynomial::one());
        }
        for total in 1..(l1 + l2 - 1).max(0) {
            for d1 in 0..l1 {
                let d2 = total - d1;
                if d2 < 0 || d2 >= l2 {
                    continue;
                }
                let mut acc = KappaPolynomial::zero();
                for ((e1, e2), r) in &rel {
                    if *e1 > d1 || *e2 > d2 {
                        continue;
                    }
                    if let Some(prev) = q.get(&(d1 - e1, d2 - e2)) {
                        acc.add_product(r, prev);
                    }
                }
                if !acc.is_zero() {
                    q.insert((d1, d2), -acc);
                }
            }
        }
        Ok(Self::new(
            q.into_iter().map(|((d1, d2), c)| ((d1 - m1, d2 - m2), c.scale(&inv_c0))),
            Some(out1),
            Some(out2),
        ))
    }

    /// Exact quotient by `(y1 − y2)^k`.
    ///
    /// Works one homogeneous component at a time: writing a component of
    /// total degree `D` as `y2^D·P(y1/y2)`, division by `y1 − y2` is
    /// synthetic division of `P(t)` by `t − 1`, which requires the
    /// coefficient sum of `P` to vanish. For a truncated input only the
    /// components lying entirely inside the known window are used and the
    /// quotient box is shrunk accordingly.
    pub fn exact_div_diff(&self, k: u32) -> Result<Self> {
        let mut cur = self.clone();
        for _ in 0..k {
            cur = cur.div_diff_once(k)?;
        }
        Ok(cur)
    }

    fn div_diff_once(&self, power: u32) -> Result<Self> {
        if self.terms.is_empty() {
            return Ok(self.clone());
        }
        let m1 = self.min_degree(Var::Y1).unwrap();
        let m2 = self.min_degree(Var::Y2).unwrap();
        // Components of total degree < d_max are completely known.
        let d_max = min_opt(add_opt(self.trunc1, Some(m2)), add_opt(self.trunc2, Some(m1)));
        let mut components: BTreeMap<i64, Vec<(i64, &KappaPolynomial)>> = BTreeMap::new();
        for (&(d1, d2), c) in &self.terms {
            let total = d1 + d2;
            if d_max.is_none_or(|dm| total < dm) {
                components.entry(total).or_default().push((d1, c));
            }
        }
        let mut quotient = BTreeMap::new();
        for (total, comp) in components {
            // comp is sorted by d1 (BTreeMap order); q_a = −Σ_{a' ≤ a} c_{a'}.
            let mut running = KappaPolynomial::zero();
            let mut idx = 0;
            let a_lo = comp[0].0;
            let a_hi = comp[comp.len() - 1].0;
            for a in a_lo..=a_hi {
                if idx < comp.len() && comp[idx].0 == a {
                    running += comp[idx].1;
                    idx += 1;
                }
                if a == a_hi {
                    if !running.is_zero() {
                        return Err(Error::NotDivisible { power, degree: total });
                    }
                } else if !running.is_zero() {
                    quotient.insert((a, total - 1 - a), -running.clone());
                }
            }
        }
        let (t1, t2) = match d_max {
            None => (None, None),
            Some(dm) => {
                let levels = dm - m1 - m2;
                let l1 = (levels + 1) / 2;
                let l2 = levels - l1;
                (Some(m1 + l1), Some(m2 + l2))
            }
        };
        let (t1, t2) = match (self.trunc1, self.trunc2) {
            (None, None) => (None, None),
            _ => (t1, t2),
        };
        Ok(Self::new(quotient, t1, t2))
    }

    /// Coefficient of `y^{-1}` in `var`, as a series in the other variable.
    pub fn residue_in(&self, var: Var) -> Result<LaurentSeries> {
        let (t_res, t_other) = match var {
            Var::Y1 => (self.trunc1, self.trunc2),
            Var::Y2 => (self.trunc2, self.trunc1),
        };
        if t_res.is_some_and(|t| t <= -1) {
            return Err(Error::TruncationTooLow(format!(
                "residue in {var:?} needs degree -1 but the series is only known below {}",
                t_res.unwrap()
            )));
        }
        let picked: Vec<(i64, &KappaPolynomial)> = self
            .terms
            .iter()
            .filter_map(|(&(d1, d2), c)| match var {
                Var::Y1 if d1 == -1 => Some((d2, c)),
                Var::Y2 if d2 == -1 => Some((d1, c)),
                _ => None,
            })
            .collect();
        let lo = picked.iter().map(|p| p.0).min().unwrap_or(0);
        let hi = match t_other {
            Some(t) => t,
            None => picked.iter().map(|p| p.0 + 1).max().unwrap_or(0),
        };
        let mut coeffs = vec![KappaPolynomial::zero(); (hi - lo).max(0) as usize];
        for (d, c) in picked {
            if d < hi {
                coeffs[(d - lo) as usize] = c.clone();
            }
        }
        Ok(LaurentSeries::new(lo, coeffs, t_other))
    }

    pub fn map_coeffs(&self, f: impl Fn(&KappaPolynomial) -> KappaPolynomial) -> Self {
        Self::new(self.terms.iter().map(|(&d, c)| (d, f(c))), self.trunc1, self.trunc2)
    }

    /// Equality on the window both series know.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let t1 = min_opt(self.trunc1, other.trunc1);
        let t2 = min_opt(self.trunc2, other.trunc2);
        let a = self.truncate(t1, t2);
        let b = other.truncate(t1, t2);
        a.terms == b.terms
    }
}

impl std::ops::Add for &BivariateLaurent {
    type Output = BivariateLaurent;
    fn add(self, rhs: &BivariateLaurent) -> BivariateLaurent {
        BivariateLaurent::add(self, rhs)
    }
}

impl fmt::Display for BivariateLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            write!(f, "0")?;
        }
        for (k, ((d1, d2), c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*y1^{d1}*y2^{d2}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one() -> KappaPolynomial {
        KappaPolynomial::one()
    }

    fn int(n: i64) -> KappaPolynomial {
        KappaPolynomial::integer(n)
    }

    #[test]
    fn divide_square_of_difference() {
        let num = BivariateLaurent::exact([((2, 0), one()), ((1, 1), int(-2)), ((0, 2), one())]);
        assert_eq!(num.exact_div_diff(2).unwrap(), BivariateLaurent::one());
    }

    #[test]
    fn divide_difference() {
        let num = BivariateLaurent::exact([((1, 0), one()), ((0, 1), int(-1))]);
        assert_eq!(num.exact_div_diff(1).unwrap(), BivariateLaurent::one());
        let sq = BivariateLaurent::exact([((2, 0), one()), ((0, 2), int(-1))]);
        assert_eq!(
            sq.exact_div_diff(1).unwrap(),
            BivariateLaurent::exact([((1, 0), one()), ((0, 1), one())])
        );
    }

    #[test]
    fn non_divisible_is_reported() {
        let num = BivariateLaurent::exact([((1, 0), one()), ((0, 1), one())]);
        assert!(matches!(num.exact_div_diff(1), Err(Error::NotDivisible { .. })));
    }

    #[test]
    fn laurent_divided_difference() {
        // (1/y1 − 1/y2)/(y1 − y2) = −1/(y1 y2)
        let num = BivariateLaurent::exact([((-1, 0), one()), ((0, -1), int(-1))]);
        assert_eq!(num.exact_div_diff(1).unwrap(), BivariateLaurent::monomial(-1, -1, int(-1)));
    }

    #[test]
    fn reciprocal_round_trip() {
        let k1 = KappaPolynomial::kappa(1);
        let a = BivariateLaurent::exact([((-1, -1), int(-1)), ((0, 0), k1.clone()), ((1, 0), one()), ((0, 2), int(3))]);
        let inv = a.reciprocal(5, 5).unwrap();
        let p = a.mul(&inv);
        assert_eq!(p.trunc1(), Some(4));
        assert!(p.agrees_with(&BivariateLaurent::one()));
    }

    #[test]
    fn residue_in_each_variable() {
        let s = BivariateLaurent::exact([((-1, -1), int(2)), ((-1, 0), int(3)), ((0, -1), int(5))]);
        let r2 = s.residue_in(Var::Y2).unwrap();
        assert_eq!(r2.residue().unwrap(), int(2));
        assert_eq!(r2.coeff(0).unwrap(), &int(5));
        let r1 = s.residue_in(Var::Y1).unwrap();
        assert_eq!(r1.coeff(0).unwrap(), &int(3));
    }

    #[test]
    fn truncation_is_tracked_per_variable() {
        let a = BivariateLaurent::new([((0, 0), one()), ((1, 1), one())], Some(3), None);
        let b = BivariateLaurent::lift(&LaurentSeries::truncated(0, vec![one(), one()], 4), Var::Y2);
        let p = a.mul(&b);
        assert_eq!(p.trunc1(), Some(3));
        assert_eq!(p.trunc2(), Some(4));
        assert!(p.coeff(2, 3).is_ok());
        assert!(p.coeff(3, 0).is_err());
    }
}
