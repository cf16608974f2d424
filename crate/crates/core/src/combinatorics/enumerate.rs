use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::genus::GenusScratch;
use super::set_partition::for_each_rgs;
use super::IntegerPartition;
use crate::algebra::{KappaPolynomial, Rational};
use crate::error::{Error, Result};

/// Default largest `n` for exhaustive enumeration of `S_n` (9! = 362 880).
pub const DEFAULT_PERMUTATION_LIMIT: usize = 9;
/// Default largest `n` for exhaustive enumeration of set partitions (B_10 = 115 975).
pub const DEFAULT_PARTITION_LIMIT: usize = 10;

/// Which objects a table counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Permutation,
    Partition,
}

impl Kind {
    pub fn default_limit(self) -> usize {
        match self {
            Kind::Permutation => DEFAULT_PERMUTATION_LIMIT,
            Kind::Partition => DEFAULT_PARTITION_LIMIT,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Permutation => "permutation",
            Kind::Partition => "partition",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Kind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "permutation" | "perm" => Ok(Kind::Permutation),
            "partition" | "part" => Ok(Kind::Partition),
            _ => Err(Error::Parse(format!("unknown kind {s:?}; expected permutation or partition"))),
        }
    }
}

/// Exact counts of genus-`g` permutations (resp. set partitions) of
/// `{1, …, n}` by cycle type (resp. block type).
///
/// Counts are `u64`: the totals are `n!` and `B_n`, which fit for every `n`
/// an exhaustive enumeration can reach.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "TableRepr", try_from = "TableRepr")]
pub struct GenusTable {
    n: usize,
    kind: Kind,
    counts: BTreeMap<(u32, IntegerPartition), u64>,
}

#[derive(Serialize, Deserialize)]
struct TableRepr {
    n: usize,
    kind: Kind,
    entries: Vec<EntryRepr>,
}

#[derive(Serialize, Deserialize)]
struct EntryRepr {
    g: u32,
    #[serde(rename = "type")]
    ty: Vec<u32>,
    count: u64,
}

impl From<GenusTable> for TableRepr {
    fn from(t: GenusTable) -> Self {
        TableRepr {
            n: t.n,
            kind: t.kind,
            entries: t
                .counts
                .into_iter()
                .map(|((g, a), count)| EntryRepr { g, ty: a.parts().to_vec(), count })
                .collect(),
        }
    }
}

impl TryFrom<TableRepr> for GenusTable {
    type Error = Error;
    fn try_from(r: TableRepr) -> Result<Self> {
        let mut counts = BTreeMap::new();
        for e in r.entries {
            let a = IntegerPartition::of(r.n, e.ty)?;
            if counts.insert((e.g, a), e.count).is_some() {
                return Err(Error::InvalidInput(format!("duplicate table entry at genus {}", e.g)));
            }
        }
        Ok(GenusTable { n: r.n, kind: r.kind, counts })
    }
}

impl GenusTable {
    pub fn new(n: usize, kind: Kind, counts: BTreeMap<(u32, IntegerPartition), u64>) -> Self {
        Self { n, kind, counts }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    /// Entries sorted by `(g, type)`.
    pub fn entries(&self) -> impl Iterator<Item = (u32, &IntegerPartition, u64)> {
        self.counts.iter().map(|((g, a), &c)| (*g, a, c))
    }

    pub fn get(&self, g: u32, a: &IntegerPartition) -> u64 {
        self.counts.get(&(g, a.clone())).copied().unwrap_or(0)
    }

    pub fn max_genus(&self) -> Option<u32> {
        self.counts.keys().map(|k| k.0).max()
    }

    /// Sum of all counts (`n!` or `B_n`).
    pub fn total(&self) -> u128 {
        self.counts.values().map(|&c| c as u128).sum()
    }

    /// Sum of counts at genus `g`.
    pub fn genus_total(&self, g: u32) -> u128 {
        self.entries().filter(|e| e.0 == g).map(|e| e.2 as u128).sum()
    }
}

/// `Σ_{[a] ⊢ n} count(g, [a]) Π κ_{a_i}`: `α_n^{(g)}` or `m_n^{(g)}` read off a table.
pub fn moments_from_table(t: &GenusTable, g: u32) -> KappaPolynomial {
    KappaPolynomial::from_terms(
        t.entries()
            .filter(|e| e.0 == g)
            .map(|(_, a, c)| (a.monomial(), Rational::from_integer(BigInt::from(c)))),
    )
}

type Counts = HashMap<(u32, Vec<u32>), u64>;

fn merge(mut a: Counts, b: Counts) -> Counts {
    for (k, v) in b {
        *a.entry(k).or_insert(0) += v;
    }
    a
}

fn cycle_lengths(images: &[usize], seen: &mut [bool], out: &mut Vec<u32>) {
    out.clear();
    seen.iter_mut().for_each(|s| *s = false);
    for s in 0..images.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = images[x];
            len += 1;
        }
        out.push(len);
    }
    out.sort_unstable();
}

/// Exhaustive enumeration of `S_n` or of the set partitions of `{1, …, n}`,
/// classified by genus and type. Fails if `n > limit`.
pub fn enumerate_genus_table(n: usize, kind: Kind, limit: usize) -> Result<GenusTable> {
    if n == 0 {
        return Err(Error::InvalidInput("enumeration needs n >= 1".into()));
    }
    if n > limit {
        return Err(Error::OracleLimitExceeded { what: kind.as_str(), n, limit });
    }
    let counts = match kind {
        Kind::Permutation => enumerate_permutations(n)?,
        Kind::Partition => enumerate_partitions(n)?,
    };
    let counts = counts
        .into_iter()
        .map(|((g, ty), c)| ((g, IntegerPartition::from_unsorted(ty)), c))
        .collect();
    Ok(GenusTable { n, kind, counts })
}

/// Lexicographic generation, one parallel shard per first image.
fn enumerate_permutations(n: usize) -> Result<Counts> {
    (0..n)
        .into_par_iter()
        .map(|first| -> Result<Counts> {
            let mut images: Vec<usize> = std::iter::once(first).chain((0..n).filter(|&x| x != first)).collect();
            let mut scratch = GenusScratch::new(n);
            let mut seen = vec![false; n];
            let mut ty = Vec::with_capacity(n);
            let mut counts = Counts::new();
            loop {
                let g = scratch.genus(&images)?;
                cycle_lengths(&images, &mut seen, &mut ty);
                *counts.entry((g, ty.clone())).or_insert(0) += 1;
                if !next_permutation(&mut images[1..]) {
                    break;
                }
            }
            Ok(counts)
        })
        .try_reduce(Counts::new, |a, b| Ok(merge(a, b)))
}

fn enumerate_partitions(n: usize) -> Result<Counts> {
    let mut counts = Counts::new();
    let mut scratch = GenusScratch::new(n);
    let mut images = vec![0usize; n];
    let mut last = vec![usize::MAX; n];
    let mut first = vec![0usize; n];
    let mut sizes = vec![0u32; n];
    let mut err = None;
    for_each_rgs(n, |r| {
        if err.is_some() {
            return;
        }
        // Cycle through each block in increasing order.
        let blocks = r.iter().max().map_or(0, |m| m + 1);
        for b in 0..blocks {
            last[b] = usize::MAX;
            sizes[b] = 0;
        }
        for (i, &b) in r.iter().enumerate() {
            if last[b] == usize::MAX {
                first[b] = i;
            } else {
                images[last[b]] = i;
            }
            last[b] = i;
            sizes[b] += 1;
        }
        for b in 0..blocks {
            images[last[b]] = first[b];
        }
        match scratch.genus(&images) {
            Ok(g) => {
                let mut ty = sizes[..blocks].to_vec();
                ty.sort_unstable();
                *counts.entry((g, ty)).or_insert(0) += 1;
            }
            Err(e) => err = Some(e),
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(counts),
    }
}

/// Advances to the next permutation in lexicographic order; false when the
/// slice was the last one (it is then left in descending order).
fn next_permutation(a: &mut [usize]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(p: &[u32]) -> IntegerPartition {
        IntegerPartition::new(p.to_vec()).unwrap()
    }

    #[test]
    fn s3_table() {
        let t = enumerate_genus_table(3, Kind::Permutation, 9).unwrap();
        let e: Vec<(u32, Vec<u32>, u64)> = t.entries().map(|(g, a, c)| (g, a.parts().to_vec(), c)).collect();
        assert_eq!(
            e,
            vec![(0, vec![1, 1, 1], 1), (0, vec![1, 2], 3), (0, vec![3], 1), (1, vec![3], 1)]
        );
    }

    #[test]
    fn partitions_of_four() {
        let t = enumerate_genus_table(4, Kind::Partition, 10).unwrap();
        assert_eq!(t.get(1, &ip(&[2, 2])), 1);
        assert_eq!(t.genus_total(1), 1);
        assert_eq!(t.total(), 15);
    }

    #[test]
    fn singletons() {
        for kind in [Kind::Permutation, Kind::Partition] {
            let t = enumerate_genus_table(1, kind, 9).unwrap();
            assert_eq!(t.entries().count(), 1);
            assert_eq!(t.get(0, &ip(&[1])), 1);
        }
    }

    #[test]
    fn limits_and_moments() {
        assert!(matches!(
            enumerate_genus_table(10, Kind::Permutation, 9),
            Err(Error::OracleLimitExceeded { .. })
        ));
        let t = enumerate_genus_table(4, Kind::Permutation, 9).unwrap();
        assert_eq!(moments_from_table(&t, 1).to_string(), "4*k1*k3 + k2^2 + 5*k4");
        assert!(moments_from_table(&t, 7).is_zero());
        let t = enumerate_genus_table(6, Kind::Partition, 10).unwrap();
        assert_eq!(moments_from_table(&t, 2).to_string(), "k3^2");
    }

    #[test]
    fn json_round_trip() {
        let t = enumerate_genus_table(3, Kind::Partition, 10).unwrap();
        let s = serde_json::to_string(&t).unwrap();
        assert!(s.starts_with(r#"{"n":3,"kind":"partition","entries":[{"g":0,"type":[1,1,1],"count":1}"#));
        let back: GenusTable = serde_json::from_str(&s).unwrap();
        assert_eq!(back, t);
        assert!(serde_json::from_str::<GenusTable>(r#"{"n":3,"kind":"partition","entries":[{"g":0,"type":[1],"count":1}]}"#).is_err());
    }

    #[test]
    fn next_permutation_order() {
        let mut a = [0, 1, 2];
        let mut seen = vec![a.to_vec()];
        while next_permutation(&mut a) {
            seen.push(a.to_vec());
        }
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[1], vec![0, 2, 1]);
    }
}
