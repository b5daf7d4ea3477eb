//! Exact elements of `Z[ζ_m]`, stored in the power basis `1, ζ, …, ζ^(φ(m)-1)`.
//!
//! Every value is kept reduced modulo the cyclotomic polynomial `Φ_m`, so two
//! values are equal iff their coefficient vectors are equal.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::numtheory;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cyclotomic {
    order: u32,
    coeffs: Vec<i64>,
}

/// Integer coefficients of `Φ_m`, lowest degree first.
pub fn cyclotomic_polynomial(m: u32) -> Vec<i64> {
    assert!(m >= 1);
    // x^m - 1 divided by Φ_d for each proper divisor d.
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in 1..m {
        if m.is_multiple_of(d) {
            num = exact_div(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let lead = *den.last().unwrap();
    debug_assert_eq!(lead, 1);
    let mut quot = vec![0i64; rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        for (i, &d) in den.iter().enumerate() {
            rem[k + i] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&x| x == 0));
    quot
}

pub fn euler_phi(m: u32) -> u32 {
    numtheory::factorize(m as u64).iter().map(|&(p, e)| ((p - 1) * p.pow(e - 1)) as u32).product()
}

impl Cyclotomic {
    pub fn zero(order: u32) -> Self {
        Cyclotomic { order, coeffs: vec![0; euler_phi(order) as usize] }
    }

    pub fn from_int(order: u32, v: i64) -> Self {
        let mut z = Self::zero(order);
        z.coeffs[0] = v;
        z
    }

    /// `ζ_m^k`.
    pub fn root(order: u32, k: i64) -> Self {
        let mut v = vec![0i64; order as usize];
        v[k.rem_euclid(order as i64) as usize] = 1;
        Self::from_exponent_coeffs(order, &v)
    }

    /// Reduces `Σ c_k ζ^k` for arbitrary `k`.
    pub fn from_exponent_coeffs(order: u32, c: &[i64]) -> Self {
        let m = order as usize;
        let mut v = vec![0i64; m];
        for (k, &x) in c.iter().enumerate() {
            v[k % m] += x;
        }
        let phi = cyclotomic_polynomial(order);
        let deg = phi.len() - 1;
        for top in (deg..m).rev() {
            let c = v[top];
            if c != 0 {
                for (i, &p) in phi.iter().enumerate() {
                    v[top - deg + i] -= c * p;
                }
            }
        }
        v.truncate(deg);
        Cyclotomic { order, coeffs: v }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn as_integer(&self) -> Option<i64> {
        if self.coeffs[1..].iter().all(|&c| c == 0) {
            Some(self.coeffs[0])
        } else {
            None
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.order, o.order);
        Cyclotomic { order: self.order, coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn neg(&self) -> Self {
        Cyclotomic { order: self.order, coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, k: i64) -> Self {
        Cyclotomic { order: self.order, coeffs: self.coeffs.iter().map(|a| a * k).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.order, o.order);
        let mut prod = vec![0i64; self.coeffs.len() + o.coeffs.len()];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                prod[i + j] += a * b;
            }
        }
        Self::from_exponent_coeffs(self.order, &prod)
    }

    /// Complex conjugate: `ζ^k -> ζ^-k`.
    pub fn conj(&self) -> Self {
        let m = self.order as usize;
        let mut v = vec![0i64; m];
        for (k, &c) in self.coeffs.iter().enumerate() {
            v[(m - k) % m] += c;
        }
        Self::from_exponent_coeffs(self.order, &v)
    }

    /// Numerical value, for display only.
    pub fn to_complex(&self) -> (f64, f64) {
        let m = self.order as f64;
        self.coeffs.iter().enumerate().fold((0.0, 0.0), |(re, im), (k, &c)| {
            let t = 2.0 * std::f64::consts::PI * k as f64 / m;
            (re + c as f64 * t.cos(), im + c as f64 * t.sin())
        })
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(v) = self.as_integer() {
            return write!(f, "{v}");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let mag = c.abs();
            let term = match (k, mag) {
                (0, _) => mag.to_string(),
                (1, 1) => format!("z{}", self.order),
                (_, 1) => format!("z{}^{k}", self.order),
                (1, _) => format!("{mag}*z{}", self.order),
                _ => format!("{mag}*z{}^{k}", self.order),
            };
            write!(f, "{sign}{term}")?;
            first = false;
        }
        Ok(())
    }
}

impl Serialize for Cyclotomic {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs.serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(euler_phi(12), 4);
    }

    #[test]
    fn roots_sum_to_mobius() {
        for m in 1..30u32 {
            let mut s = Cyclotomic::zero(m);
            for k in 0..m as i64 {
                s = s.add(&Cyclotomic::root(m, k));
            }
            let expected = if m == 1 { 1 } else { 0 };
            assert_eq!(s, Cyclotomic::from_int(m, expected), "m = {m}");
        }
    }

    #[test]
    fn root_arithmetic() {
        let z = Cyclotomic::root(5, 1);
        assert_eq!(z.mul(&z.conj()), Cyclotomic::from_int(5, 1));
        let mut p = Cyclotomic::from_int(5, 1);
        for _ in 0..5 {
            p = p.mul(&z);
        }
        assert_eq!(p, Cyclotomic::from_int(5, 1));
        // 1 + ζ_3 + ζ_3^2 = 0
        let w = Cyclotomic::root(3, 1);
        assert!(Cyclotomic::from_int(3, 1).add(&w).add(&w.mul(&w)).is_zero());
        assert_eq!(Cyclotomic::root(4, 1).mul(&Cyclotomic::root(4, 1)), Cyclotomic::from_int(4, -1));
    }
}
