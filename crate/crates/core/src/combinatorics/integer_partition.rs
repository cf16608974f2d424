use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::algebra::KappaMonomial;
use crate::error::{Error, Result};

/// A nondecreasing list of positive parts `a_1 ≤ … ≤ a_k`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntegerPartition {
    parts: Vec<u32>,
}

impl IntegerPartition {
    /// Sorts the parts; rejects zero parts.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidInput(format!("integer partition with a zero part: {parts:?}")));
        }
        parts.sort_unstable();
        Ok(Self { parts })
    }

    /// Like [`new`](Self::new) but also checks that the parts sum to `n`.
    pub fn of(n: usize, parts: Vec<u32>) -> Result<Self> {
        let p = Self::new(parts.clone()).map_err(|_| Error::BadPartition { n, parts: parts.clone() })?;
        if p.size() != n {
            return Err(Error::BadPartition { n, parts });
        }
        Ok(p)
    }

    /// Builds from parts already known to be positive (sorting them).
    pub(crate) fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.sort_unstable();
        Self { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Sum of the parts.
    pub fn size(&self) -> usize {
        self.parts.iter().map(|&p| p as usize).sum()
    }

    /// `(part, multiplicity)` pairs in increasing part order.
    pub fn multiplicities(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((q, m)) if *q == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// Symmetry factor `Π_j k_j!` over part multiplicities `k_j`.
    pub fn sym(&self) -> BigUint {
        self.multiplicities().iter().map(|&(_, m)| factorial(m as usize)).product()
    }

    /// `Π κ_{a_i}`.
    pub fn monomial(&self) -> KappaMonomial {
        KappaMonomial::from_indices(self.parts.iter().copied())
    }

    /// All partitions of `n`, each nondecreasing, in lexicographic order.
    pub fn all(n: usize) -> Vec<Self> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(rem: usize, min: usize, cur: &mut Vec<u32>, out: &mut Vec<IntegerPartition>) {
            if rem == 0 {
                out.push(IntegerPartition { parts: cur.clone() });
                return;
            }
            for p in min..=rem {
                if rem - p != 0 && rem - p < p {
                    continue;
                }
                cur.push(p as u32);
                rec(rem - p, p, cur, out);
                cur.pop();
            }
        }
        rec(n, 1, &mut cur, &mut out);
        out
    }
}

pub(crate) fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

impl fmt::Display for IntegerPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, p) in self.parts.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..=10).map(|n| IntegerPartition::all(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
        assert_eq!(IntegerPartition::all(3)[0].parts(), &[1, 1, 1]);
    }

    #[test]
    fn symmetry_factor() {
        let a = IntegerPartition::new(vec![2, 1, 1, 2, 2]).unwrap();
        assert_eq!(a.parts(), &[1, 1, 2, 2, 2]);
        assert_eq!(a.sym(), BigUint::from(12u32));
        assert_eq!(a.to_string(), "[1,1,2,2,2]");
    }

    #[test]
    fn validation() {
        assert!(IntegerPartition::new(vec![0, 1]).is_err());
        assert!(matches!(IntegerPartition::of(4, vec![1, 2]), Err(Error::BadPartition { .. })));
        assert!(IntegerPartition::of(3, vec![1, 2]).is_ok());
    }
}
