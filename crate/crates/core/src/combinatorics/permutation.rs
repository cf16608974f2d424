use std::fmt;

use super::IntegerPartition;
use crate::error::{Error, Result};

/// A bijection of `{1, …, n}`, stored 0-based: `images[i] = σ(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// Validates that `images` (0-based) is a bijection.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::InvalidInput(format!("not a permutation: {images:?}")));
            }
            seen[x] = true;
        }
        Ok(Self { images })
    }

    /// From 1-based images, as written in one-line notation.
    pub fn from_one_line(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::InvalidInput("one-line notation is 1-based".into()));
        }
        Self::new(images.iter().map(|&x| x - 1).collect())
    }

    /// From disjoint cycles written with 1-based points; unlisted points are fixed.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut used = vec![false; n];
        for c in cycles {
            for (k, &x) in c.iter().enumerate() {
                if x == 0 || x > n || used[x - 1] {
                    return Err(Error::InvalidInput(format!("bad cycle {c:?} on {n} points")));
                }
                used[x - 1] = true;
                images[x - 1] = c[(k + 1) % c.len()] - 1;
            }
        }
        Ok(Self { images })
    }

    pub fn identity(n: usize) -> Self {
        Self { images: (0..n).collect() }
    }

    /// The long cycle `ζ_n : i ↦ i + 1 mod n`.
    pub fn rotation(n: usize) -> Self {
        Self { images: (0..n).map(|i| (i + 1) % n).collect() }
    }

    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        Self { images }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// 0-based images.
    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.n()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Self { images: inv }
    }

    /// `self ∘ other`, i.e. `i ↦ self(other(i))`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.n(), other.n(), "composing permutations of different sizes");
        Self { images: other.images.iter().map(|&x| self.images[x]).collect() }
    }

    /// Cycles, each starting at its smallest point, ordered by that point (0-based).
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut c = Vec::new();
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                c.push(x);
                x = self.images[x];
            }
            out.push(c);
        }
        out
    }

    /// Number of cycles, `l(σ)`.
    pub fn cycle_count(&self) -> usize {
        cycle_count(&self.images, &mut vec![false; self.n()])
    }

    pub fn cycle_type(&self) -> IntegerPartition {
        IntegerPartition::from_unsorted(self.cycles().iter().map(|c| c.len() as u32).collect())
    }
}

/// Cycle count of an image array using caller-provided scratch space.
pub(crate) fn cycle_count(images: &[usize], seen: &mut [bool]) -> usize {
    seen.iter_mut().for_each(|s| *s = false);
    let mut count = 0;
    for s in 0..images.len() {
        if seen[s] {
            continue;
        }
        count += 1;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = images[x];
        }
    }
    count
}

impl fmt::Display for Permutation {
    /// Cycle notation with 1-based points, e.g. `(1,3)(2)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in self.cycles() {
            write!(f, "(")?;
            for (k, x) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", x + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_and_cycles() {
        let s = Permutation::from_cycles(4, &[&[1, 3], &[2, 4]]).unwrap();
        assert_eq!(s.images(), &[2, 3, 0, 1]);
        assert_eq!(s.to_string(), "(1,3)(2,4)");
        assert_eq!(s.cycle_count(), 2);
        assert_eq!(s.cycle_type().parts(), &[2, 2]);
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert!(Permutation::from_cycles(3, &[&[1, 2], &[2, 3]]).is_err());
    }

    #[test]
    fn inverse_and_compose() {
        let s = Permutation::from_one_line(&[2, 3, 1, 5, 4]).unwrap();
        assert_eq!(s.compose(&s.inverse()), Permutation::identity(5));
        let z = Permutation::rotation(3);
        assert_eq!(z.to_string(), "(1,2,3)");
        assert_eq!(z.compose(&z).to_string(), "(1,3,2)");
    }
}
