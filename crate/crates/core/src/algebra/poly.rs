use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{KappaMonomial, Rational};
use crate::error::Error;

/// A polynomial in the cumulants with exact rational coefficients.
///
/// Only nonzero coefficients are stored, so structural equality is
/// mathematical equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct KappaPolynomial {
    terms: BTreeMap<KappaMonomial, Rational>,
}

impl KappaPolynomial {
    pub const fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(KappaMonomial::one(), c)
    }

    pub fn integer(c: i64) -> Self {
        Self::constant(Rational::from_integer(BigInt::from(c)))
    }

    pub fn term(m: KappaMonomial, c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn kappa(i: u32) -> Self {
        Self::term(KappaMonomial::kappa(i), Rational::one())
    }

    pub fn kappa2(i: u32, j: u32) -> Self {
        Self::term(KappaMonomial::kappa2(i, j), Rational::one())
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (KappaMonomial, Rational)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
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

    pub fn terms(&self) -> impl Iterator<Item = (&KappaMonomial, &Rational)> {
        self.terms.iter()
    }

    /// Terms in canonical rendering order.
    pub fn canonical_terms(&self) -> Vec<(&KappaMonomial, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.canonical_cmp(b.0));
        v
    }

    pub fn coefficient(&self, m: &KappaMonomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&KappaMonomial::one())
    }

    /// The value if this polynomial is a constant (zero included).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&KappaMonomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: KappaMonomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    /// `self += a * b` without materializing the product.
    pub fn add_product(&mut self, a: &Self, b: &Self) {
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                self.add_term(ma.mul(mb), ca * cb);
            }
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Replaces every `κ_i` by `first(i)` and every `κ_{i,j}` by `second(i, j)`.
    pub fn substitute(
        &self,
        first: &dyn Fn(u32) -> KappaPolynomial,
        second: &dyn Fn(u32, u32) -> KappaPolynomial,
    ) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut value = Self::constant(c.clone());
            for &(i, e) in m.first_order() {
                value = &value * &first(i).pow(e);
                if value.is_zero() {
                    break;
                }
            }
            for &((i, j), e) in m.second_order() {
                if value.is_zero() {
                    break;
                }
                value = &value * &second(i, j).pow(e);
            }
            out += &value;
        }
        out
    }

    /// Sets every second-order cumulant to zero.
    pub fn first_order_sector(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| !m.has_second_order())
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Distinct monomial weights present.
    pub fn weights(&self) -> Vec<u64> {
        let mut w: Vec<u64> = self.terms.keys().map(|m| m.weight()).collect();
        w.sort_unstable();
        w.dedup();
        w
    }

    pub fn max_index(&self) -> u32 {
        self.terms.keys().map(|m| m.max_index()).max().unwrap_or(0)
    }

    /// Evaluates with every first-order cumulant set to `value` and every
    /// second-order cumulant set to zero.
    pub fn eval_uniform(&self, value: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            if m.has_second_order() {
                continue;
            }
            acc += c * num_traits::pow(value.clone(), m.degree() as usize);
        }
        acc
    }
}

impl fmt::Display for KappaPolynomial {
    /// Canonical rendering, e.g. `4*k1*k3 + k2^2 + 5*k4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.canonical_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for KappaPolynomial {
    type Err = Error;

    /// Parses sums of products of rationals, `kI`, `kI_J` and `^E` powers,
    /// e.g. `4*k3*k1 + k2^2 - 1/2*k1_2`. Term order is irrelevant.
    fn from_str(s: &str) -> Result<Self, Error> {
        let mut parser = Parser { src: s.as_bytes(), pos: 0 };
        let p = parser.sum()?;
        parser.skip_ws();
        if parser.pos != parser.src.len() {
            return Err(Error::Parse(format!("unexpected input at byte {} in {s:?}", parser.pos)));
        }
        Ok(p)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn number(&mut self) -> Result<u64, Error> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::Parse(format!("expected a number at byte {start}")));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|e| Error::Parse(format!("{e}")))
    }

    fn sum(&mut self) -> Result<KappaPolynomial, Error> {
        let mut acc = KappaPolynomial::zero();
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -1
            }
            Some(b'+') => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let t = self.product()?;
            if sign < 0 {
                acc -= &t;
            } else {
                acc += &t;
            }
            match self.peek() {
                Some(b'+') => sign = 1,
                Some(b'-') => sign = -1,
                _ => break,
            }
            self.pos += 1;
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<KappaPolynomial, Error> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<KappaPolynomial, Error> {
        let base = match self.peek() {
            Some(b'k') => {
                self.pos += 1;
                let i = self.number()? as u32;
                if i == 0 {
                    return Err(Error::Parse("cumulant index 0".into()));
                }
                if self.src.get(self.pos) == Some(&b'_') {
                    self.pos += 1;
                    let j = self.number()? as u32;
                    if j == 0 {
                        return Err(Error::Parse("cumulant index 0".into()));
                    }
                    KappaPolynomial::kappa2(i, j)
                } else {
                    KappaPolynomial::kappa(i)
                }
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.number()?;
                let mut q = Rational::from_integer(BigInt::from(n));
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let d = self.number()?;
                    if d == 0 {
                        return Err(Error::Parse("zero denominator".into()));
                    }
                    q /= Rational::from_integer(BigInt::from(d));
                }
                KappaPolynomial::constant(q)
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.sum()?;
                if self.peek() != Some(b')') {
                    return Err(Error::Parse("missing ')'".into()));
                }
                self.pos += 1;
                inner
            }
            other => {
                return Err(Error::Parse(format!(
                    "unexpected {:?} at byte {}",
                    other.map(|c| c as char),
                    self.pos
                )))
            }
        };
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.number()? as u32;
            return Ok(base.pow(e));
        }
        Ok(base)
    }
}

impl Neg for &KappaPolynomial {
    type Output = KappaPolynomial;
    fn neg(self) -> KappaPolynomial {
        KappaPolynomial { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Neg for KappaPolynomial {
    type Output = KappaPolynomial;
    fn neg(mut self) -> KappaPolynomial {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl AddAssign<&KappaPolynomial> for KappaPolynomial {
    fn add_assign(&mut self, rhs: &KappaPolynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&KappaPolynomial> for KappaPolynomial {
    fn sub_assign(&mut self, rhs: &KappaPolynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Add for &KappaPolynomial {
    type Output = KappaPolynomial;
    fn add(self, rhs: &KappaPolynomial) -> KappaPolynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &KappaPolynomial {
    type Output = KappaPolynomial;
    fn sub(self, rhs: &KappaPolynomial) -> KappaPolynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &KappaPolynomial {
    type Output = KappaPolynomial;
    fn mul(self, rhs: &KappaPolynomial) -> KappaPolynomial {
        let mut out = KappaPolynomial::zero();
        out.add_product(self, rhs);
        out
    }
}

impl Add for KappaPolynomial {
    type Output = KappaPolynomial;
    fn add(mut self, rhs: KappaPolynomial) -> KappaPolynomial {
        self += &rhs;
        self
    }
}

impl Sub for KappaPolynomial {
    type Output = KappaPolynomial;
    fn sub(mut self, rhs: KappaPolynomial) -> KappaPolynomial {
        self -= &rhs;
        self
    }
}

impl Mul for KappaPolynomial {
    type Output = KappaPolynomial;
    fn mul(self, rhs: KappaPolynomial) -> KappaPolynomial {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> KappaPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn additive_inverse() {
        let a = &KappaPolynomial::kappa(2) + &KappaPolynomial::kappa(3);
        let b = -KappaPolynomial::kappa(3);
        assert_eq!(&a + &b, KappaPolynomial::kappa(2));
    }

    #[test]
    fn monomial_product() {
        let k2 = KappaPolynomial::kappa(2);
        assert_eq!((&k2 * &k2).to_string(), "k2^2");
    }

    #[test]
    fn difference_of_squares() {
        let k1 = KappaPolynomial::kappa(1);
        let k2 = KappaPolynomial::kappa(2);
        let prod = &(&k1 + &k2) * &(&k1 - &k2);
        assert_eq!(prod, p("k1^2 - k2^2"));
        assert_eq!(prod.to_string(), "k1^2 - k2^2");
    }

    #[test]
    fn canonical_rendering() {
        assert_eq!(p("5*k4 + k2^2 + 4*k3*k1").to_string(), "4*k1*k3 + k2^2 + 5*k4");
        assert_eq!(p("k2 + k1_1").to_string(), "k1_1 + k2");
        assert_eq!(p("-1/2*k2_1 + 3").to_string(), "3 - 1/2*k1_2");
        assert_eq!(KappaPolynomial::zero().to_string(), "0");
    }

    #[test]
    fn parse_round_trip_and_parentheses() {
        let q = p("5*k1*(k1+1)");
        assert_eq!(q, p("5*k1^2 + 5*k1"));
        assert_eq!(p(&q.to_string()), q);
        assert!("k0".parse::<KappaPolynomial>().is_err());
        assert!("3 +".parse::<KappaPolynomial>().is_err());
    }

    #[test]
    fn substitution_and_sectors() {
        let q = p("k1_1 + k2 + 2*k1*k1_2");
        let only_first = q.first_order_sector();
        assert_eq!(only_first, p("k2"));
        let sub = q.substitute(&|i| KappaPolynomial::integer(i as i64), &|_, _| KappaPolynomial::one());
        assert_eq!(sub, KappaPolynomial::integer(1 + 2 + 2));
    }
}
