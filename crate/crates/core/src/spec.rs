//! Specializations of the cumulants, and univariate results in the one
//! symbolic parameter they may keep.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{KappaMonomial, KappaPolynomial, LaurentSeries, Rational};
use crate::error::{Error, Result};

/// Named specializations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Preset {
    /// `κ_i = 1`; permutation moments sum to `n!`.
    Factorials,
    /// `κ_i = κ`; permutation moments sum to `Σ_k |s(n,k)| κ^k`.
    Stirling1,
    /// `κ_i = 1`; partition moments sum to `B_n`.
    Bell,
    /// `κ_i = κ`; partition moments sum to `Σ_k S(n,k) κ^k`.
    Stirling2,
    /// `κ_i = δ_{i,2}`; moments sum to `(2n−1)!!` at even size.
    HarerZagier,
    /// `κ_1 = 0`, `κ_i = 1` otherwise.
    NoSingletonsBell,
    /// `κ_1 = 0`, `κ_i = κ` otherwise.
    NoSingletonsStirling2,
    /// Explicit values; unspecified indices are 0.
    Custom,
}

impl Preset {
    pub const ALL: [Preset; 7] = [
        Preset::Factorials,
        Preset::Stirling1,
        Preset::Bell,
        Preset::Stirling2,
        Preset::HarerZagier,
        Preset::NoSingletonsBell,
        Preset::NoSingletonsStirling2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Factorials => "factorials",
            Preset::Stirling1 => "stirling1",
            Preset::Bell => "bell",
            Preset::Stirling2 => "stirling2",
            Preset::HarerZagier => "harer-zagier",
            Preset::NoSingletonsBell => "no-singletons-bell",
            Preset::NoSingletonsStirling2 => "no-singletons-stirling2",
            Preset::Custom => "custom",
        }
    }
}

impl FromStr for Preset {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Preset::ALL
            .into_iter()
            .chain([Preset::Custom])
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown preset {s:?}")))
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A rule assigning each `κ_i` a rational value or the single symbolic
/// parameter `κ`.
///
/// Internally the symbolic parameter is carried as the indeterminate `κ_1`,
/// so specialized generators live in the ordinary coefficient ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KappaSpec {
    preset: Preset,
    values: BTreeMap<u32, Rational>,
}

impl KappaSpec {
    pub fn preset(preset: Preset) -> Self {
        Self { preset, values: BTreeMap::new() }
    }

    /// Explicit rational values `κ_i = values[i]`, zero elsewhere.
    pub fn custom(values: BTreeMap<u32, Rational>) -> Result<Self> {
        if values.contains_key(&0) {
            return Err(Error::InvalidInput("cumulant indices start at 1".into()));
        }
        Ok(Self { preset: Preset::Custom, values })
    }

    pub fn kind(&self) -> Preset {
        self.preset
    }

    pub fn name(&self) -> &'static str {
        self.preset.name()
    }

    /// Whether results keep the symbolic parameter `κ`.
    pub fn is_symbolic(&self) -> bool {
        matches!(self.preset, Preset::Stirling1 | Preset::Stirling2 | Preset::NoSingletonsStirling2)
    }

    /// The value of `κ_i`, with `κ` represented by `κ_1`.
    pub fn value(&self, i: u32) -> KappaPolynomial {
        let one = KappaPolynomial::one;
        let sym = || KappaPolynomial::kappa(1);
        match self.preset {
            Preset::Factorials | Preset::Bell => one(),
            Preset::Stirling1 | Preset::Stirling2 => sym(),
            Preset::HarerZagier if i == 2 => one(),
            Preset::HarerZagier => KappaPolynomial::zero(),
            Preset::NoSingletonsBell if i == 1 => KappaPolynomial::zero(),
            Preset::NoSingletonsBell => one(),
            Preset::NoSingletonsStirling2 if i == 1 => KappaPolynomial::zero(),
            Preset::NoSingletonsStirling2 => sym(),
            Preset::Custom => self.values.get(&i).map_or_else(KappaPolynomial::zero, |v| KappaPolynomial::constant(v.clone())),
        }
    }

    /// `1/y + Σ_{i ≤ cutoff} value(i) y^{i−1}` as an exact Laurent polynomial.
    pub fn generator(&self, cutoff: u32) -> LaurentSeries {
        LaurentSeries::generator_from_values((1..=cutoff).map(|i| self.value(i)))
    }

    /// Specializes a generic polynomial in the `κ_i` (second-order cumulants
    /// are set to 0).
    pub fn apply(&self, p: &KappaPolynomial) -> Result<ParamPoly> {
        let mut out = ParamPoly::zero();
        for (m, c) in p.terms() {
            if m.has_second_order() {
                continue;
            }
            let mut term = ParamPoly::constant(c.clone());
            for &(i, e) in m.first_order() {
                term = term.mul(&ParamPoly::from_kappa1(&self.value(i).pow(e))?);
            }
            out = out.add(&term);
        }
        Ok(out)
    }

    /// Converts a polynomial already expressed in the symbolic parameter.
    pub fn to_param(&self, p: &KappaPolynomial) -> Result<ParamPoly> {
        ParamPoly::from_kappa1(p)
    }
}

/// A univariate polynomial in the symbolic parameter `κ` (rendered `k`).
/// Without the parameter it is a plain rational.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ParamPoly {
    /// `coeffs[d]` is the coefficient of `κ^d`; no trailing zeros.
    coeffs: Vec<Rational>,
}

impl ParamPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn integer(n: i64) -> Self {
        Self::constant(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// From a polynomial in `κ_1` alone.
    pub fn from_kappa1(p: &KappaPolynomial) -> Result<Self> {
        let mut coeffs: Vec<Rational> = Vec::new();
        for (m, c) in p.terms() {
            let d = m.exponent(1) as usize;
            if *m != KappaMonomial::kappa_pow(1, d as u32) {
                return Err(Error::InvalidInput(format!("{p} is not a polynomial in one parameter")));
            }
            if coeffs.len() <= d {
                coeffs.resize(d + 1, Rational::zero());
            }
            coeffs[d] += c;
        }
        Ok(Self::from_coeffs(coeffs))
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// The value when the polynomial is constant.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.coeffs.len() {
            0 => Some(Rational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = Rational::zero();
        Self::from_coeffs(
            (0..n)
                .map(|k| self.coeffs.get(k).unwrap_or(&z) + other.coeffs.get(k).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut c = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Self::from_coeffs(c)
    }

    pub fn eval(&self, v: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * v + c)
    }

    fn as_kappa1(&self) -> KappaPolynomial {
        KappaPolynomial::from_terms(
            self.coeffs.iter().enumerate().map(|(d, c)| (KappaMonomial::kappa_pow(1, d as u32), c.clone())),
        )
    }
}

impl fmt::Display for ParamPoly {
    /// Ascending powers: `15*k + 40*k^2 + 15*k^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.as_kappa1().to_string();
        // Canonical rendering of κ_1 powers, with the parameter named `k`.
        f.write_str(&s.replace("k1", "k"))
    }
}

impl FromStr for ParamPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut t = String::with_capacity(s.len());
        let mut chars = s.chars().peekable();
        while let Some(ch) = chars.next() {
            t.push(ch);
            if ch == 'k' && !chars.peek().is_some_and(|c| c.is_ascii_digit()) {
                t.push('1');
            }
        }
        Self::from_kappa1(&t.parse()?)
    }
}

impl Serialize for ParamPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ParamPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl One for ParamPoly {
    fn one() -> Self {
        Self::integer(1)
    }
}

impl std::ops::Mul for ParamPoly {
    type Output = ParamPoly;
    fn mul(self, rhs: Self) -> Self {
        ParamPoly::mul(&self, &rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_round_trip_by_name() {
        for p in Preset::ALL {
            assert_eq!(p.name().parse::<Preset>().unwrap(), p);
        }
        assert!("nope".parse::<Preset>().is_err());
    }

    #[test]
    fn specialize_generic_polynomial() {
        let p: KappaPolynomial = "4*k1*k3 + k2^2 + 5*k4".parse().unwrap();
        assert_eq!(KappaSpec::preset(Preset::Factorials).apply(&p).unwrap().to_string(), "10");
        assert_eq!(KappaSpec::preset(Preset::Stirling1).apply(&p).unwrap().to_string(), "5*k + 5*k^2");
        assert_eq!(KappaSpec::preset(Preset::HarerZagier).apply(&p).unwrap().to_string(), "1");
        assert_eq!(KappaSpec::preset(Preset::NoSingletonsBell).apply(&p).unwrap().to_string(), "6");
    }

    #[test]
    fn param_poly_text() {
        let p: ParamPoly = "15*k + 40*k^2 + 15*k^3".parse().unwrap();
        assert_eq!(p.coeffs().len(), 4);
        assert_eq!(p.to_string(), "15*k + 40*k^2 + 15*k^3");
        assert_eq!(p.eval(&Rational::one()), Rational::from_integer(70.into()));
        assert_eq!(serde_json::to_string(&p).unwrap(), "\"15*k + 40*k^2 + 15*k^3\"");
        assert!(ParamPoly::from_kappa1(&KappaPolynomial::kappa(2)).is_err());
    }
}
