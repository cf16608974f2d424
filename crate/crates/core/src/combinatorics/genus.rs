use super::permutation::cycle_count;
use super::{Permutation, SetPartition};
use crate::error::{Error, Result};

fn halve(two_g: i64) -> Result<u32> {
    if two_g < 0 || two_g % 2 != 0 {
        return Err(Error::OddGenusDefect(two_g));
    }
    Ok((two_g / 2) as u32)
}

/// `g` with `2g = n + 1 − l(σ) − l(σ⁻¹ζ_n)`, `ζ_n(i) = i + 1 mod n`.
pub fn genus_of_permutation(sigma: &Permutation) -> Result<u32> {
    let n = sigma.n();
    if n == 0 {
        return Err(Error::InvalidInput("genus of the empty permutation".into()));
    }
    let mut scratch = GenusScratch::new(n);
    scratch.genus(sigma.images())
}

/// Genus of the permutation that runs through each block in increasing order.
pub fn genus_of_partition(lambda: &SetPartition) -> Result<u32> {
    genus_of_permutation(&lambda.to_permutation())
}

/// `g` with `2g = n + 2 − b − l(σ) − l(σ⁻¹τ)`, `b = l(τ)`, for a pair that
/// acts transitively on the ground set.
pub fn genus_of_pair(sigma: &Permutation, tau: &Permutation) -> Result<u32> {
    let n = sigma.n();
    if tau.n() != n {
        return Err(Error::InvalidInput(format!("sizes differ: {} vs {}", n, tau.n())));
    }
    if n == 0 {
        return Err(Error::InvalidInput("genus of the empty pair".into()));
    }
    if !is_transitive(sigma.images(), tau.images()) {
        return Err(Error::Disconnected);
    }
    let b = tau.cycle_count() as i64;
    let l_sigma = sigma.cycle_count() as i64;
    let l_rel = sigma.inverse().compose(tau).cycle_count() as i64;
    halve(n as i64 + 2 - b - l_sigma - l_rel)
}

/// Whether `⟨σ, τ⟩` acts transitively on `{0, …, n−1}`.
pub(crate) fn is_transitive(sigma: &[usize], tau: &[usize]) -> bool {
    let n = sigma.len();
    if n == 0 {
        return true;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut reached = 1;
    while let Some(x) = stack.pop() {
        for y in [sigma[x], tau[x]] {
            if !seen[y] {
                seen[y] = true;
                reached += 1;
                stack.push(y);
            }
        }
    }
    reached == n
}

/// Allocation-free genus evaluation for the enumeration loops.
pub(crate) struct GenusScratch {
    inv: Vec<usize>,
    rel: Vec<usize>,
    seen: Vec<bool>,
}

impl GenusScratch {
    pub(crate) fn new(n: usize) -> Self {
        Self { inv: vec![0; n], rel: vec![0; n], seen: vec![false; n] }
    }

    pub(crate) fn genus(&mut self, images: &[usize]) -> Result<u32> {
        let n = images.len();
        for (i, &x) in images.iter().enumerate() {
            self.inv[x] = i;
        }
        for i in 0..n {
            self.rel[i] = self.inv[(i + 1) % n];
        }
        let l_sigma = cycle_count(images, &mut self.seen) as i64;
        let l_rel = cycle_count(&self.rel, &mut self.seen) as i64;
        halve(n as i64 + 1 - l_sigma - l_rel)
    }

    /// Genus of a pair known to be transitive, with `b = l(τ)` supplied.
    pub(crate) fn pair_genus(&mut self, sigma: &[usize], tau: &[usize], b: usize) -> Result<u32> {
        let n = sigma.len();
        for (i, &x) in sigma.iter().enumerate() {
            self.inv[x] = i;
        }
        for i in 0..n {
            self.rel[i] = self.inv[tau[i]];
        }
        let l_sigma = cycle_count(sigma, &mut self.seen) as i64;
        let l_rel = cycle_count(&self.rel, &mut self.seen) as i64;
        halve(n as i64 + 2 - b as i64 - l_sigma - l_rel)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_cycles() {
        let s1 = Permutation::from_cycles(3, &[&[1, 2, 3]]).unwrap();
        let s2 = Permutation::from_cycles(3, &[&[1, 3, 2]]).unwrap();
        assert_eq!(genus_of_permutation(&s1).unwrap(), 0);
        assert_eq!(genus_of_permutation(&s2).unwrap(), 1);
        for n in 1..8 {
            assert_eq!(genus_of_permutation(&Permutation::identity(n)).unwrap(), 0);
        }
    }

    #[test]
    fn partitions() {
        let planar = SetPartition::from_blocks(4, &[&[1, 2], &[3, 4]]).unwrap();
        let crossing = SetPartition::from_blocks(4, &[&[1, 3], &[2, 4]]).unwrap();
        assert_eq!(genus_of_partition(&planar).unwrap(), 0);
        assert_eq!(genus_of_partition(&crossing).unwrap(), 1);
        let one: Vec<usize> = (1..=6).collect();
        assert_eq!(genus_of_partition(&SetPartition::from_blocks(6, &[&one]).unwrap()).unwrap(), 0);
    }

    #[test]
    fn pairs() {
        // Two boundaries (1..5) and (1'..3') with primed points labelled 6..8.
        let tau = Permutation::from_cycles(8, &[&[1, 2, 3, 4, 5], &[6, 7, 8]]).unwrap();
        let sigma = Permutation::from_cycles(8, &[&[1, 8], &[2, 3, 5, 6, 7], &[4]]).unwrap();
        assert_eq!(genus_of_pair(&sigma, &tau).unwrap(), 0);

        let tau = Permutation::identity(2);
        let sigma = Permutation::from_cycles(2, &[&[1, 2]]).unwrap();
        assert_eq!(genus_of_pair(&sigma, &tau).unwrap(), 0);

        let disconnected = Permutation::identity(2);
        assert_eq!(genus_of_pair(&disconnected, &tau), Err(Error::Disconnected));

        let z = Permutation::rotation(5);
        let s = Permutation::from_one_line(&[3, 1, 5, 2, 4]).unwrap();
        assert_eq!(genus_of_pair(&s, &z).unwrap(), genus_of_permutation(&s).unwrap());
    }

    #[test]
    fn scratch_matches_public_api() {
        let mut sc = GenusScratch::new(5);
        let s = Permutation::from_one_line(&[4, 3, 5, 1, 2]).unwrap();
        assert_eq!(sc.genus(s.images()).unwrap(), genus_of_permutation(&s).unwrap());
    }
}
