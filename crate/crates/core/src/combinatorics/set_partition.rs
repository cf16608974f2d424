use std::fmt;

use super::{IntegerPartition, Permutation};
use crate::error::{Error, Result};

/// A set partition of `{1, …, n}`, stored 0-based: blocks are sorted and
/// ordered by their minimum element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    /// From 1-based blocks in any order; validates disjointness and coverage.
    pub fn from_blocks(n: usize, blocks: &[&[usize]]) -> Result<Self> {
        let mut seen = vec![false; n];
        let mut out = Vec::with_capacity(blocks.len());
        for b in blocks {
            if b.is_empty() {
                return Err(Error::InvalidInput("empty block".into()));
            }
            let mut bb = Vec::with_capacity(b.len());
            for &x in b.iter() {
                if x == 0 || x > n || seen[x - 1] {
                    return Err(Error::InvalidInput(format!("bad block {b:?} on {n} points")));
                }
                seen[x - 1] = true;
                bb.push(x - 1);
            }
            bb.sort_unstable();
            out.push(bb);
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::InvalidInput(format!("blocks do not cover {{1..{n}}}")));
        }
        out.sort_unstable_by_key(|b| b[0]);
        Ok(Self { n, blocks: out })
    }

    /// From a restricted-growth string `r` (0-based labels, `r[0] = 0`,
    /// `r[i] ≤ 1 + max(r[..i])`).
    pub fn from_rgs(rgs: &[usize]) -> Result<Self> {
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (i, &r) in rgs.iter().enumerate() {
            if r > blocks.len() {
                return Err(Error::InvalidInput(format!("not a restricted-growth string: {rgs:?}")));
            }
            if r == blocks.len() {
                blocks.push(Vec::new());
            }
            blocks[r].push(i);
        }
        Ok(Self { n: rgs.len(), blocks })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// 0-based blocks.
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_type(&self) -> IntegerPartition {
        IntegerPartition::from_unsorted(self.blocks.iter().map(|b| b.len() as u32).collect())
    }

    /// The permutation whose cycles traverse each block in increasing order.
    pub fn to_permutation(&self) -> Permutation {
        let mut images = vec![0; self.n];
        for b in &self.blocks {
            for (k, &x) in b.iter().enumerate() {
                images[x] = b[(k + 1) % b.len()];
            }
        }
        Permutation::from_images_unchecked(images)
    }
}

impl fmt::Display for SetPartition {
    /// `{1,2}{3,4}` with 1-based points.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.blocks {
            write!(f, "{{")?;
            for (k, x) in b.iter().enumerate() {
                if k > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", x + 1)?;
            }
            write!(f, "}}")?;
        }
        Ok(())
    }
}

/// Visits all restricted-growth strings of length `n` in lexicographic order.
pub fn for_each_rgs(n: usize, mut f: impl FnMut(&[usize])) {
    if n == 0 {
        f(&[]);
        return;
    }
    let mut r = vec![0usize; n];
    // m[i] = max(r[..=i])
    let mut m = vec![0usize; n];
    loop {
        f(&r);
        // find rightmost position that can be incremented
        let mut i = n - 1;
        loop {
            if i == 0 {
                return;
            }
            if r[i] <= m[i - 1] {
                break;
            }
            i -= 1;
        }
        r[i] += 1;
        m[i] = m[i - 1].max(r[i]);
        for k in i + 1..n {
            r[k] = 0;
            m[k] = m[i];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rgs_enumeration_counts_bell_numbers() {
        let counts: Vec<usize> = (0..=8)
            .map(|n| {
                let mut c = 0;
                for_each_rgs(n, |_| c += 1);
                c
            })
            .collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 15, 52, 203, 877, 4140]);
    }

    #[test]
    fn blocks_and_permutation() {
        let p = SetPartition::from_blocks(4, &[&[3, 1], &[4, 2]]).unwrap();
        assert_eq!(p.to_string(), "{1,3}{2,4}");
        assert_eq!(p, SetPartition::from_rgs(&[0, 1, 0, 1]).unwrap());
        assert_eq!(p.to_permutation().to_string(), "(1,3)(2,4)");
        assert_eq!(SetPartition::from_rgs(&[0, 0, 1]).unwrap().block_type().parts(), &[1, 2]);
        assert!(SetPartition::from_rgs(&[0, 2]).is_err());
        assert!(SetPartition::from_blocks(3, &[&[1, 2]]).is_err());
    }
}
