use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numtheory;

/// Finite abelian group as a product of cyclic groups of prime-power order.
/// Factors are sorted by prime, then by descending power.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AbelianType {
    factors: Vec<u64>,
}

impl AbelianType {
    pub fn new(mut factors: Vec<u64>) -> Result<Self> {
        for &f in &factors {
            if numtheory::prime_power(f).is_none() {
                return Err(Error::Invalid(format!("{f} is not a prime power")));
            }
        }
        factors.sort_by_key(|&f| {
            let (p, e) = numtheory::prime_power(f).unwrap();
            (p, std::cmp::Reverse(e))
        });
        Ok(AbelianType { factors })
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    /// Invariant factors `d_1 | d_2 | ...`.
    pub fn invariant_factors(&self) -> Vec<u64> {
        let mut by_prime: Vec<Vec<u64>> = Vec::new();
        let mut last = 0;
        for &f in &self.factors {
            let p = numtheory::prime_power(f).unwrap().0;
            if p != last {
                by_prime.push(Vec::new());
                last = p;
            }
            by_prime.last_mut().unwrap().push(f);
        }
        let len = by_prime.iter().map(Vec::len).max().unwrap_or(0);
        let mut out: Vec<u64> = (0..len).map(|i| by_prime.iter().filter_map(|v| v.get(i)).product()).collect();
        out.reverse();
        out
    }
}

impl fmt::Display for AbelianType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "Z1");
        }
        let parts: Vec<String> = self.factors.iter().map(|x| format!("Z{x}")).collect();
        write!(f, "{}", parts.join("x"))
    }
}

/// Number of partitions of `n`, by the standard bounded-part recurrence.
pub fn partition_count(n: u64) -> BigUint {
    let n = n as usize;
    let mut p = vec![BigUint::zero(); n + 1];
    p[0] = BigUint::one();
    for k in 1..=n {
        for m in k..=n {
            let add = p[m - k].clone();
            p[m] += add;
        }
    }
    p[n].clone()
}

/// All partitions of `n` as non-increasing part lists.
pub fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=max.min(n)).rev() {
            cur.push(k);
            go(n - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

pub fn count_abelian_groups(n: u64) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::Invalid("group order must be >= 1".into()));
    }
    Ok(numtheory::factorize(n).iter().map(|&(_, e)| partition_count(e as u64)).product())
}

pub fn enumerate_abelian_types(n: u64) -> Result<Vec<AbelianType>> {
    if n == 0 {
        return Err(Error::Invalid("group order must be >= 1".into()));
    }
    let mut acc: Vec<Vec<u64>> = vec![Vec::new()];
    for (p, e) in numtheory::factorize(n) {
        let mut next = Vec::new();
        for part in partitions(e) {
            for prefix in &acc {
                let mut v = prefix.clone();
                v.extend(part.iter().map(|&k| p.pow(k)));
                next.push(v);
            }
        }
        acc = next;
    }
    let mut out = acc.into_iter().map(AbelianType::new).collect::<Result<Vec<_>>>()?;
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Euler's pentagonal-number recurrence, independent of the table above.
    fn pentagonal(n: usize) -> Vec<i128> {
        let mut p = vec![0i128; n + 1];
        p[0] = 1;
        for m in 1..=n {
            let mut k: i64 = 1;
            loop {
                let g1 = (k * (3 * k - 1) / 2) as usize;
                if g1 > m {
                    break;
                }
                let sign = if k % 2 == 1 { 1 } else { -1 };
                p[m] += sign * p[m - g1];
                let g2 = (k * (3 * k + 1) / 2) as usize;
                if g2 <= m {
                    p[m] += sign * p[m - g2];
                }
                k += 1;
            }
        }
        p
    }

    #[test]
    fn partitions_match_pentagonal_oracle() {
        let oracle = pentagonal(120);
        for (n, &v) in oracle.iter().enumerate() {
            assert_eq!(partition_count(n as u64), BigUint::from(v as u128), "n = {n}");
        }
        assert_eq!(partition_count(10), BigUint::from(42u32));
        assert_eq!(partition_count(13), BigUint::from(101u32));
        assert_eq!(partition_count(14), BigUint::from(135u32));
        assert_eq!(partition_count(15), BigUint::from(176u32));
        for n in 0..15 {
            assert_eq!(partitions(n).len() as i128, oracle[n as usize]);
        }
    }

    #[test]
    fn abelian_counts() {
        assert_eq!(count_abelian_groups(8).unwrap(), BigUint::from(3u32));
        assert_eq!(count_abelian_groups(720).unwrap(), BigUint::from(10u32));
        assert_eq!(count_abelian_groups(1).unwrap(), BigUint::from(1u32));
        for n in 1..=200u64 {
            let types = enumerate_abelian_types(n).unwrap();
            assert_eq!(BigUint::from(types.len()), count_abelian_groups(n).unwrap(), "n = {n}");
            assert!(types.iter().all(|t| t.order() == n));
        }
    }

    #[test]
    fn invariant_factor_form() {
        let t = AbelianType::new(vec![3, 4, 2, 9]).unwrap();
        assert_eq!(t.factors(), &[4, 2, 9, 3]);
        assert_eq!(t.invariant_factors(), vec![6, 36]);
        assert_eq!(t.to_string(), "Z4xZ2xZ9xZ3");
        assert!(AbelianType::new(vec![6]).is_err());
    }
}
