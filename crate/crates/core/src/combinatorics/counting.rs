use num_bigint::{BigInt, BigUint};
use num_integer::binomial;
use num_traits::{One, Zero};

use super::integer_partition::factorial;
use super::IntegerPartition;
use crate::error::{Error, Result};

fn check(n: usize, a: &IntegerPartition) -> Result<()> {
    if a.size() != n {
        return Err(Error::BadPartition { n, parts: a.parts().to_vec() });
    }
    Ok(())
}

/// `D_{n,[a]} = n! / (sym(a) Π a_i)`: permutations of cycle type `[a]`.
pub fn count_cycle_type(n: usize, a: &IntegerPartition) -> Result<BigUint> {
    check(n, a)?;
    let denom: BigUint = a.sym() * a.parts().iter().map(|&p| BigUint::from(p)).product::<BigUint>();
    Ok(factorial(n) / denom)
}

/// `C_{n,[a]} = n! / (sym(a) Π a_i!)`: set partitions of block type `[a]`.
pub fn count_block_type(n: usize, a: &IntegerPartition) -> Result<BigUint> {
    check(n, a)?;
    let denom: BigUint = a.sym() * a.parts().iter().map(|&p| factorial(p as usize)).product::<BigUint>();
    Ok(factorial(n) / denom)
}

pub fn factorial_of(n: usize) -> BigUint {
    factorial(n)
}

/// `(2n − 1)!! = 1·3·5·…·(2n − 1)`, with `(−1)!! = 1`.
pub fn double_factorial_odd(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(2 * k - 1))
}

/// Stirling, Bell tables up to `n_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalTables {
    /// Signed Stirling numbers of the first kind, `s[n][k]`, `x^{\underline n} = Σ_k s(n,k) x^k`.
    pub stirling1: Vec<Vec<BigInt>>,
    /// Stirling numbers of the second kind, `S[n][k]`.
    pub stirling2: Vec<Vec<BigUint>>,
    /// Bell numbers `B_0 … B_{n_max}`.
    pub bell: Vec<BigUint>,
}

pub fn stirling_and_bell(n_max: usize) -> ClassicalTables {
    ClassicalTables { stirling1: stirling1(n_max), stirling2: stirling2(n_max), bell: bell_numbers(n_max) }
}

/// Coefficients of the falling factorial: `s(n+1,k) = s(n,k−1) − n·s(n,k)`.
pub fn stirling1(n_max: usize) -> Vec<Vec<BigInt>> {
    let mut t = vec![vec![BigInt::one()]];
    for n in 0..n_max {
        let prev = &t[n];
        let row: Vec<BigInt> = (0..=n + 1)
            .map(|k| {
                let a = if k >= 1 { prev[k - 1].clone() } else { BigInt::zero() };
                let b = if k <= n { prev[k].clone() * BigInt::from(n) } else { BigInt::zero() };
                a - b
            })
            .collect();
        t.push(row);
    }
    t
}

/// `S(n+1,k) = k·S(n,k) + S(n,k−1)`.
pub fn stirling2(n_max: usize) -> Vec<Vec<BigUint>> {
    let mut t = vec![vec![BigUint::one()]];
    for n in 0..n_max {
        let prev = &t[n];
        let row: Vec<BigUint> = (0..=n + 1)
            .map(|k| {
                let a = if k >= 1 { prev[k - 1].clone() } else { BigUint::zero() };
                let b = if k <= n { prev[k].clone() * BigUint::from(k) } else { BigUint::zero() };
                a + b
            })
            .collect();
        t.push(row);
    }
    t
}

/// `B_{n+1} = Σ_k C(n,k) B_k`.
pub fn bell_numbers(n_max: usize) -> Vec<BigUint> {
    let mut b = vec![BigUint::one()];
    for n in 0..n_max {
        let next = (0..=n).map(|k| binomial(BigUint::from(n), BigUint::from(k)) * &b[k]).sum();
        b.push(next);
    }
    b
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(p: &[u32]) -> IntegerPartition {
        IntegerPartition::new(p.to_vec()).unwrap()
    }

    #[test]
    fn closed_counts() {
        assert_eq!(count_cycle_type(3, &ip(&[3])).unwrap(), BigUint::from(2u32));
        assert_eq!(count_cycle_type(4, &ip(&[2, 2])).unwrap(), BigUint::from(3u32));
        assert_eq!(count_cycle_type(3, &ip(&[1, 2])).unwrap(), BigUint::from(3u32));
        assert_eq!(count_block_type(4, &ip(&[2, 2])).unwrap(), BigUint::from(3u32));
        assert_eq!(count_block_type(7, &ip(&[7])).unwrap(), BigUint::one());
        assert_eq!(count_block_type(3, &ip(&[1, 2])).unwrap(), BigUint::from(3u32));
        assert!(matches!(count_cycle_type(5, &ip(&[1, 2])), Err(Error::BadPartition { .. })));
    }

    #[test]
    fn bell() {
        let b: Vec<u64> = bell_numbers(7).iter().map(|x| x.try_into().unwrap()).collect();
        assert_eq!(b, vec![1, 1, 2, 5, 15, 52, 203, 877]);
    }

    #[test]
    fn stirling_orthogonality() {
        let t = stirling_and_bell(8);
        for n in 0..=8 {
            for k in 0..=8 {
                let sum: BigInt = (0..=8)
                    .filter(|&q| q <= n && k <= q)
                    .map(|q| BigInt::from(t.stirling2[n][q].clone()) * &t.stirling1[q][k])
                    .sum();
                assert_eq!(sum, BigInt::from((n == k) as u32), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn unsigned_stirling_sums_to_factorial() {
        let s = stirling1(9);
        for (n, row) in s.iter().enumerate() {
            let total: BigInt = row.iter().map(|x| x.magnitude().clone()).map(BigInt::from).sum();
            assert_eq!(total, BigInt::from(factorial(n)));
        }
        assert_eq!(double_factorial_odd(4), BigUint::from(105u32));
    }
}
