use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{KappaPolynomial, Rational};
use crate::error::{Error, Result};

static ZERO: KappaPolynomial = KappaPolynomial::zero();

/// A univariate Laurent series in `y` with cumulant-polynomial coefficients.
///
/// `trunc = Some(t)` means coefficients are known exactly for degrees `< t`
/// and unknown from `t` on; `None` means the series is an exact Laurent
/// polynomial. Reading an unknown coefficient is an error.
///
/// Storage is normalized: the first stored coefficient is nonzero, exact
/// series carry no trailing zeros, and a truncated zero series has
/// `min_deg == trunc`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentSeries {
    min_deg: i64,
    coeffs: Vec<KappaPolynomial>,
    trunc: Option<i64>,
}

pub(crate) fn min_opt(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (Some(x), None) | (None, Some(x)) => Some(x),
        (None, None) => None,
    }
}

pub(crate) fn add_opt(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    Some(a? + b?)
}

impl LaurentSeries {
    /// Coefficients `coeffs[k]` at degree `min_deg + k`. With a truncation,
    /// missing coefficients below `trunc` are zero and extra ones are dropped.
    pub fn new(min_deg: i64, coeffs: Vec<KappaPolynomial>, trunc: Option<i64>) -> Self {
        let mut s = Self { min_deg, coeffs, trunc };
        s.normalize();
        s
    }

    pub fn exact(min_deg: i64, coeffs: Vec<KappaPolynomial>) -> Self {
        Self::new(min_deg, coeffs, None)
    }

    pub fn truncated(min_deg: i64, coeffs: Vec<KappaPolynomial>, trunc: i64) -> Self {
        Self::new(min_deg, coeffs, Some(trunc))
    }

    pub fn zero() -> Self {
        Self::exact(0, Vec::new())
    }

    pub fn one() -> Self {
        Self::monomial(0, KappaPolynomial::one())
    }

    /// `c·y^deg`, exact.
    pub fn monomial(deg: i64, c: KappaPolynomial) -> Self {
        Self::exact(deg, vec![c])
    }

    /// The generator `1/y + Σ_{i≤cutoff} κ_i y^{i−1}` as an exact Laurent
    /// polynomial (cumulants above the cutoff are zero).
    pub fn kappa_generator(cutoff: u32) -> Self {
        Self::generator_from_values((1..=cutoff).map(KappaPolynomial::kappa))
    }

    /// `1/y + Σ v_i y^{i−1}` with `v_1, v_2, …` taken from `values`.
    pub fn generator_from_values(values: impl IntoIterator<Item = KappaPolynomial>) -> Self {
        let mut coeffs = vec![KappaPolynomial::one()];
        coeffs.extend(values);
        Self::exact(-1, coeffs)
    }

    fn normalize(&mut self) {
        if let Some(t) = self.trunc {
            let len = (t - self.min_deg).max(0) as usize;
            self.coeffs.resize(len, KappaPolynomial::zero());
        } else {
            while self.coeffs.last().is_some_and(|c| c.is_zero()) {
                self.coeffs.pop();
            }
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.min_deg += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.min_deg = self.trunc.unwrap_or(0);
        }
    }

    /// Lowest degree with a nonzero coefficient (equal to `trunc` for a
    /// truncated zero series, `0` for the exact zero).
    pub fn min_deg(&self) -> i64 {
        self.min_deg
    }

    pub fn trunc(&self) -> Option<i64> {
        self.trunc
    }

    pub fn is_exact(&self) -> bool {
        self.trunc.is_none()
    }

    /// No nonzero coefficient is known.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// One past the highest stored degree.
    pub fn end(&self) -> i64 {
        self.min_deg + self.coeffs.len() as i64
    }

    pub fn coeff(&self, deg: i64) -> Result<&KappaPolynomial> {
        if let Some(t) = self.trunc {
            if deg >= t {
                return Err(Error::TruncationTooLow(format!(
                    "coefficient of y^{deg} requested but the series is only known below y^{t}"
                )));
            }
        }
        if deg < self.min_deg || deg >= self.end() {
            return Ok(&ZERO);
        }
        Ok(&self.coeffs[(deg - self.min_deg) as usize])
    }

    /// Coefficient without the truncation check; zero outside the stored range.
    fn stored(&self, deg: i64) -> &KappaPolynomial {
        if deg < self.min_deg || deg >= self.end() {
            &ZERO
        } else {
            &self.coeffs[(deg - self.min_deg) as usize]
        }
    }

    /// `(degree, coefficient)` pairs of nonzero stored coefficients.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &KappaPolynomial)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (self.min_deg + k as i64, c))
    }

    /// Lowers the truncation to `t` (never raises it).
    pub fn truncate(&self, t: i64) -> Self {
        let t = min_opt(self.trunc, Some(t));
        Self::new(self.min_deg, self.coeffs.clone(), t)
    }

    pub fn add(&self, other: &Self) -> Self {
        let trunc = min_opt(self.trunc, other.trunc);
        let lo = self.min_deg.min(other.min_deg);
        let hi = match trunc {
            Some(t) => t,
            None => self.end().max(other.end()),
        };
        let coeffs =
            (lo..hi.max(lo)).map(|d| self.stored(d) + other.stored(d)).collect::<Vec<_>>();
        Self::new(lo, coeffs, trunc)
    }

    pub fn neg(&self) -> Self {
        Self { min_deg: self.min_deg, coeffs: self.coeffs.iter().map(|c| -c).collect(), trunc: self.trunc }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Product; the truncation is `min(a.trunc + b.min_deg, b.trunc + a.min_deg)`.
    pub fn mul(&self, other: &Self) -> Self {
        let trunc = min_opt(add_opt(self.trunc, Some(other.min_deg)), add_opt(other.trunc, Some(self.min_deg)));
        if self.is_zero() || other.is_zero() {
            return Self::new(self.min_deg + other.min_deg, Vec::new(), trunc);
        }
        let lo = self.min_deg + other.min_deg;
        let hi = match trunc {
            Some(t) => t,
            None => self.end() + other.end() - 1,
        };
        if hi <= lo {
            return Self::new(lo, Vec::new(), trunc);
        }
        let mut coeffs = vec![KappaPolynomial::zero(); (hi - lo) as usize];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let di = self.min_deg + i as i64;
            for (j, b) in other.coeffs.iter().enumerate() {
                let d = di + other.min_deg + j as i64;
                if d >= hi {
                    break;
                }
                if !b.is_zero() {
                    coeffs[(d - lo) as usize].add_product(a, b);
                }
            }
        }
        Self::new(lo, coeffs, trunc)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.min_deg, self.coeffs.iter().map(|p| p.scale(c)).collect(), self.trunc)
    }

    pub fn mul_poly(&self, c: &KappaPolynomial) -> Self {
        Self::new(self.min_deg, self.coeffs.iter().map(|p| p * c).collect(), self.trunc)
    }

    /// Multiplication by `y^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            min_deg: self.min_deg + k,
            coeffs: self.coeffs.clone(),
            trunc: self.trunc.map(|t| t + k),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Termwise `d/dy`; the truncation drops by one.
    pub fn diff(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let d = self.min_deg + k as i64;
                c.scale(&Rational::from_integer(BigInt::from(d)))
            })
            .collect();
        Self::new(self.min_deg - 1, coeffs, self.trunc.map(|t| t - 1))
    }

    pub fn nth_diff(&self, k: u32) -> Self {
        (0..k).fold(self.clone(), |s, _| s.diff())
    }

    /// Multiplicative inverse, computed up to degree `< trunc` (or less when
    /// the input itself is truncated: the relative precision
    /// `trunc − min_deg` is preserved).
    ///
    /// The leading coefficient must be a nonzero rational constant.
    pub fn reciprocal(&self, trunc: i64) -> Result<Self> {
        let lead = self
            .coeffs
            .first()
            .ok_or_else(|| Error::NonInvertibleLeading("zero series".into()))?;
        let c0 = lead.as_constant().filter(|c| !c.is_zero()).ok_or_else(|| {
            Error::NonInvertibleLeading(format!("leading coefficient {lead} at y^{}", self.min_deg))
        })?;
        let m = self.min_deg;
        let natural = self.trunc.map(|t| t - 2 * m);
        let out_trunc = min_opt(Some(trunc), natural).unwrap();
        let len = (out_trunc + m).max(0) as usize;
        let inv_c0 = c0.recip();
        let mut q: Vec<KappaPolynomial> = Vec::with_capacity(len);
        for k in 0..len {
            if k == 0 {
                q.push(KappaPolynomial::constant(inv_c0.clone()));
                continue;
            }
            let mut acc = KappaPolynomial::zero();
            for j in 1..=k.min(self.coeffs.len().saturating_sub(1)) {
                let a = &self.coeffs[j];
                if !a.is_zero() && !q[k - j].is_zero() {
                    acc.add_product(a, &q[k - j]);
                }
            }
            q.push(acc.scale(&-inv_c0.clone()));
        }
        Ok(Self::truncated(-m, q, out_trunc))
    }

    /// Coefficient of `y^{-1}`.
    pub fn residue(&self) -> Result<KappaPolynomial> {
        self.coeff(-1).cloned()
    }

    /// Applies `f` to every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&KappaPolynomial) -> KappaPolynomial) -> Self {
        Self::new(self.min_deg, self.coeffs.iter().map(f).collect(), self.trunc)
    }

    /// Coefficient-wise equality on the window both series know.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let hi = match min_opt(self.trunc, other.trunc) {
            Some(t) => t,
            None => self.end().max(other.end()),
        };
        let lo = self.min_deg.min(other.min_deg);
        (lo..hi).all(|d| self.stored(d) == other.stored(d))
    }

}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (d, c) in self.iter() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})*y^{d}")?;
        }
        if first {
            write!(f, "0")?;
        }
        if let Some(t) = self.trunc {
            write!(f, " + O(y^{t})")?;
        }
        Ok(())
    }
}

/// `d/dX = (d/dy) · (1/X′(y))` for a fixed generator `X`, with the reciprocal
/// of `X′` computed once.
#[derive(Clone, Debug)]
pub struct DxOperator {
    inv_dx: LaurentSeries,
}

impl DxOperator {
    /// Prepares `1/X′` up to degree `< recip_trunc`.
    pub fn new(x: &LaurentSeries, recip_trunc: i64) -> Result<Self> {
        Ok(Self { inv_dx: x.diff().reciprocal(recip_trunc)? })
    }

    /// Wraps an already computed `1/X′`.
    pub fn from_inverse_derivative(inv_dx: LaurentSeries) -> Self {
        Self { inv_dx }
    }

    /// `1/X′(y)`.
    pub fn inverse_derivative(&self) -> &LaurentSeries {
        &self.inv_dx
    }

    pub fn apply(&self, f: &LaurentSeries) -> LaurentSeries {
        f.diff().mul(&self.inv_dx)
    }
}

/// `df/dX = f′(y)/X′(y)`, known below degree `trunc` at most.
pub fn dx_derivative(f: &LaurentSeries, x: &LaurentSeries, trunc: i64) -> Result<LaurentSeries> {
    let fp = f.diff();
    // Degrees of the product stay below `trunc` iff 1/X′ is known below
    // `trunc − min_deg(f′)`.
    let op = DxOperator::new(x, trunc - fp.min_deg())?;
    Ok(op.apply(f).truncate(trunc))
}

/// Integer as a rational, for brevity at call sites.
#[cfg(test)]
pub(crate) fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}
