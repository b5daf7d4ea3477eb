//! Small integer helpers: primality, factorization, prime powers.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

pub fn smallest_divisor(n: u64) -> Option<u64> {
    if n < 2 {
        return None;
    }
    if n.is_multiple_of(2) {
        return Some(2);
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return Some(d);
        }
        d += 2;
    }
    Some(n)
}

pub fn is_prime(n: u64) -> bool {
    smallest_divisor(n) == Some(n)
}

/// Prime factorization as ascending `(prime, exponent)` pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    while let Some(p) = smallest_divisor(n) {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        out.push((p, e));
    }
    out
}

/// Factorization of a big integer over a list of candidate primes.
/// Returns the factorization and the unfactored cofactor.
pub fn factor_over(n: &BigUint, primes: &[u64]) -> (Vec<(u64, u32)>, BigUint) {
    let mut rest = n.clone();
    let mut out = Vec::new();
    for &p in primes {
        let bp = BigUint::from(p);
        let mut e = 0;
        while !rest.is_one() && (&rest % &bp).to_u64() == Some(0) {
            rest /= &bp;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    }
    (out, rest)
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&k| is_prime(k)).collect()
}

/// `Some((p, f))` when `q = p^f` with `p` prime and `f >= 1`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    let f = factorize(q);
    match f.as_slice() {
        [(p, e)] => Some((*p, *e)),
        _ => None,
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

pub fn pow_big(base: u64, exp: u32) -> BigUint {
    num_traits::pow(BigUint::from(base), exp as usize)
}

pub fn product_of_powers(factors: &[(u64, u32)]) -> BigUint {
    factors.iter().fold(BigUint::one(), |acc, &(p, e)| acc * pow_big(p, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorization_roundtrip() {
        for n in 1..2000u64 {
            let f = factorize(n);
            let back: u64 = f.iter().map(|&(p, e)| p.pow(e)).product();
            assert_eq!(back, n);
            assert!(f.iter().all(|&(p, _)| is_prime(p)));
        }
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }
}
