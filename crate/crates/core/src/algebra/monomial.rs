use std::cmp::Ordering;
use std::fmt;

/// A monomial in the first-order cumulants `κ_i` and the second-order
/// cumulants `κ_{i,j}`.
///
/// Both exponent lists are kept sorted by index with strictly positive
/// exponents. Second-order pairs are stored with `i <= j`, so `κ_{2,1}` and
/// `κ_{1,2}` name the same indeterminate.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KappaMonomial {
    first: Vec<(u32, u32)>,
    second: Vec<((u32, u32), u32)>,
}

fn canonical_pair(i: u32, j: u32) -> (u32, u32) {
    if i <= j {
        (i, j)
    } else {
        (j, i)
    }
}

impl KappaMonomial {
    /// The empty monomial.
    pub fn one() -> Self {
        Self::default()
    }

    /// `κ_i`.
    pub fn kappa(i: u32) -> Self {
        Self::kappa_pow(i, 1)
    }

    /// `κ_i^e` (the empty monomial when `e == 0`).
    pub fn kappa_pow(i: u32, e: u32) -> Self {
        assert!(i >= 1, "cumulant indices start at 1");
        if e == 0 {
            return Self::one();
        }
        Self { first: vec![(i, e)], second: Vec::new() }
    }

    /// `κ_{i,j}`.
    pub fn kappa2(i: u32, j: u32) -> Self {
        assert!(i >= 1 && j >= 1, "cumulant indices start at 1");
        Self { first: Vec::new(), second: vec![(canonical_pair(i, j), 1)] }
    }

    /// Builds a monomial from arbitrary (index, exponent) lists, merging
    /// repeated indices and dropping zero exponents.
    pub fn from_parts(
        first: impl IntoIterator<Item = (u32, u32)>,
        second: impl IntoIterator<Item = ((u32, u32), u32)>,
    ) -> Self {
        let mut f: Vec<(u32, u32)> = first.into_iter().filter(|&(_, e)| e > 0).collect();
        for &(i, _) in &f {
            assert!(i >= 1, "cumulant indices start at 1");
        }
        f.sort_unstable();
        let mut f_merged: Vec<(u32, u32)> = Vec::with_capacity(f.len());
        for (i, e) in f {
            match f_merged.last_mut() {
                Some((j, ej)) if *j == i => *ej += e,
                _ => f_merged.push((i, e)),
            }
        }
        let mut s: Vec<((u32, u32), u32)> = second
            .into_iter()
            .filter(|&(_, e)| e > 0)
            .map(|((i, j), e)| {
                assert!(i >= 1 && j >= 1, "cumulant indices start at 1");
                (canonical_pair(i, j), e)
            })
            .collect();
        s.sort_unstable();
        let mut s_merged: Vec<((u32, u32), u32)> = Vec::with_capacity(s.len());
        for (p, e) in s {
            match s_merged.last_mut() {
                Some((q, eq)) if *q == p => *eq += e,
                _ => s_merged.push((p, e)),
            }
        }
        Self { first: f_merged, second: s_merged }
    }

    /// Product of the `κ_{a_i}` for a multiset of indices.
    pub fn from_indices(indices: impl IntoIterator<Item = u32>) -> Self {
        Self::from_parts(indices.into_iter().map(|i| (i, 1)), std::iter::empty())
    }

    pub fn is_one(&self) -> bool {
        self.first.is_empty() && self.second.is_empty()
    }

    pub fn first_order(&self) -> &[(u32, u32)] {
        &self.first
    }

    pub fn second_order(&self) -> &[((u32, u32), u32)] {
        &self.second
    }

    pub fn has_second_order(&self) -> bool {
        !self.second.is_empty()
    }

    /// Exponent of `κ_i`.
    pub fn exponent(&self, i: u32) -> u32 {
        self.first
            .binary_search_by_key(&i, |&(j, _)| j)
            .map(|k| self.first[k].1)
            .unwrap_or(0)
    }

    /// Exponent of `κ_{i,j}`.
    pub fn exponent2(&self, i: u32, j: u32) -> u32 {
        let p = canonical_pair(i, j);
        self.second
            .binary_search_by_key(&p, |&(q, _)| q)
            .map(|k| self.second[k].1)
            .unwrap_or(0)
    }

    /// `Σ i·e` over first-order factors plus `Σ (i+j)·e` over second-order
    /// factors.
    pub fn weight(&self) -> u64 {
        let w1: u64 = self.first.iter().map(|&(i, e)| i as u64 * e as u64).sum();
        let w2: u64 = self.second.iter().map(|&((i, j), e)| (i + j) as u64 * e as u64).sum();
        w1 + w2
    }

    /// Total number of factors.
    pub fn degree(&self) -> u32 {
        self.first.iter().map(|&(_, e)| e).sum::<u32>()
            + self.second.iter().map(|&(_, e)| e).sum::<u32>()
    }

    pub fn max_index(&self) -> u32 {
        let a = self.first.last().map(|&(i, _)| i).unwrap_or(0);
        let b = self.second.iter().map(|&((_, j), _)| j).max().unwrap_or(0);
        a.max(b)
    }

    /// Monomial without its second-order factors.
    pub fn first_order_part(&self) -> Self {
        Self { first: self.first.clone(), second: Vec::new() }
    }

    /// Monomial without its first-order factors.
    pub fn second_order_part(&self) -> Self {
        Self { first: Vec::new(), second: self.second.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self { first: merge(&self.first, &other.first), second: merge(&self.second, &other.second) }
    }

    /// Expanded index lists used by the canonical ordering: each first-order
    /// index repeated by its exponent, and likewise for pairs.
    fn expanded(&self) -> (Vec<u32>, Vec<(u32, u32)>) {
        let f = self.first.iter().flat_map(|&(i, e)| std::iter::repeat_n(i, e as usize)).collect();
        let s = self.second.iter().flat_map(|&(p, e)| std::iter::repeat_n(p, e as usize)).collect();
        (f, s)
    }

    /// Rendering order: by weight, then lexicographically by the expanded
    /// first-order index list, then by the expanded pair list.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| self.expanded().cmp(&other.expanded()))
    }
}

fn merge<K: Ord + Copy>(a: &[(K, u32)], b: &[(K, u32)]) -> Vec<(K, u32)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            Ordering::Equal => {
                out.push((a[i].0, a[i].1 + b[j].1));
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

impl fmt::Display for KappaMonomial {
    /// `k1*k3^2*k1_2`; the empty monomial renders as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut sep = "";
        for &(i, e) in &self.first {
            write!(f, "{sep}k{i}")?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
            sep = "*";
        }
        for &((i, j), e) in &self.second {
            write!(f, "{sep}k{i}_{j}")?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
            sep = "*";
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairs_are_unordered() {
        assert_eq!(KappaMonomial::kappa2(2, 1), KappaMonomial::kappa2(1, 2));
        assert_eq!(KappaMonomial::kappa2(3, 1).to_string(), "k1_3");
    }

    #[test]
    fn weight_and_product() {
        let m = KappaMonomial::kappa(1).mul(&KappaMonomial::kappa(3)).mul(&KappaMonomial::kappa2(2, 1));
        assert_eq!(m.weight(), 7);
        assert_eq!(m.degree(), 3);
        assert_eq!(m.to_string(), "k1*k3*k1_2");
        let sq = KappaMonomial::kappa(2).mul(&KappaMonomial::kappa(2));
        assert_eq!(sq.to_string(), "k2^2");
        assert_eq!(sq.exponent(2), 2);
    }

    #[test]
    fn canonical_order_example() {
        let a = KappaMonomial::from_indices([1, 3]);
        let b = KappaMonomial::from_indices([2, 2]);
        let c = KappaMonomial::from_indices([4]);
        assert_eq!(a.canonical_cmp(&b), Ordering::Less);
        assert_eq!(b.canonical_cmp(&c), Ordering::Less);
        assert_eq!(c.canonical_cmp(&KappaMonomial::from_indices([1, 1, 1, 1, 1])), Ordering::Less);
    }

    #[test]
    fn from_parts_merges() {
        let m = KappaMonomial::from_parts([(2, 1), (1, 0), (2, 2)], [((3, 1), 1), ((1, 3), 1)]);
        assert_eq!(m.to_string(), "k2^3*k1_3^2");
    }
}
