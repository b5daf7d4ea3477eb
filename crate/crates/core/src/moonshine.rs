//! Exact integer q-series: Eisenstein E4, the discriminant Δ, the modular
//! invariant j and its cube root, with the Monster dimension identities.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::numtheory;

/// `Σ coeffs[i] q^(leading_exponent + i)`, known modulo `q^truncation_order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerSeries {
    leading_exponent: i64,
    coeffs: Vec<BigInt>,
    truncation_order: i64,
}

impl IntegerSeries {
    pub fn new(leading_exponent: i64, mut coeffs: Vec<BigInt>, truncation_order: i64) -> Result<Self> {
        if truncation_order < leading_exponent {
            return Err(Error::Invalid(format!(
                "truncation order {truncation_order} is below the leading exponent {leading_exponent}"
            )));
        }
        coeffs.resize((truncation_order - leading_exponent) as usize, BigInt::zero());
        Ok(IntegerSeries { leading_exponent, coeffs, truncation_order })
    }

    pub fn from_i64(leading_exponent: i64, coeffs: &[i64], truncation_order: i64) -> Result<Self> {
        Self::new(leading_exponent, coeffs.iter().map(|&c| BigInt::from(c)).collect(), truncation_order)
    }

    pub fn monomial(exponent: i64, truncation_order: i64) -> Result<Self> {
        Self::from_i64(exponent, &[1], truncation_order)
    }

    pub fn leading_exponent(&self) -> i64 {
        self.leading_exponent
    }

    pub fn truncation_order(&self) -> i64 {
        self.truncation_order
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `q^e`; `None` past the truncation.
    pub fn coeff(&self, e: i64) -> Option<BigInt> {
        if e >= self.truncation_order {
            None
        } else if e < self.leading_exponent {
            Some(BigInt::zero())
        } else {
            Some(self.coeffs[(e - self.leading_exponent) as usize].clone())
        }
    }

    pub fn truncate(&self, order: i64) -> IntegerSeries {
        let t = order.min(self.truncation_order).max(self.leading_exponent);
        let mut c = self.coeffs.clone();
        c.truncate((t - self.leading_exponent) as usize);
        IntegerSeries { leading_exponent: self.leading_exponent, coeffs: c, truncation_order: t }
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: i64) -> IntegerSeries {
        IntegerSeries {
            leading_exponent: self.leading_exponent + k,
            coeffs: self.coeffs.clone(),
            truncation_order: self.truncation_order + k,
        }
    }

    pub fn add(&self, o: &IntegerSeries) -> IntegerSeries {
        let lead = self.leading_exponent.min(o.leading_exponent);
        let trunc = self.truncation_order.min(o.truncation_order);
        let coeffs = (lead..trunc).map(|e| self.coeff(e).unwrap() + o.coeff(e).unwrap()).collect();
        IntegerSeries { leading_exponent: lead, coeffs, truncation_order: trunc }
    }

    pub fn neg(&self) -> IntegerSeries {
        IntegerSeries {
            leading_exponent: self.leading_exponent,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            truncation_order: self.truncation_order,
        }
    }

    pub fn sub(&self, o: &IntegerSeries) -> IntegerSeries {
        self.add(&o.neg())
    }

    pub fn scale(&self, k: &BigInt) -> IntegerSeries {
        IntegerSeries {
            leading_exponent: self.leading_exponent,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
            truncation_order: self.truncation_order,
        }
    }

    pub fn mul(&self, o: &IntegerSeries) -> IntegerSeries {
        let lead = self.leading_exponent + o.leading_exponent;
        let trunc = (self.leading_exponent + o.truncation_order).min(o.leading_exponent + self.truncation_order);
        let len = (trunc - lead).max(0) as usize;
        let mut coeffs = vec![BigInt::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(len - i) {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        IntegerSeries { leading_exponent: lead, coeffs, truncation_order: trunc.max(lead) }
    }

    pub fn pow(&self, k: u32) -> IntegerSeries {
        let mut acc =
            IntegerSeries { leading_exponent: 0, coeffs: vec![BigInt::one()], truncation_order: i64::MAX / 4 };
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    fn first_nonzero(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Exact quotient, certified by multiplying back.
    pub fn div_exact(&self, d: &IntegerSeries) -> Result<IntegerSeries> {
        let k = d.first_nonzero().ok_or(Error::DivisionByZero)?;
        let d = IntegerSeries {
            leading_exponent: d.leading_exponent + k as i64,
            coeffs: d.coeffs[k..].to_vec(),
            truncation_order: d.truncation_order,
        };
        let lead = self.leading_exponent - d.leading_exponent;
        let trunc = (self.truncation_order - d.leading_exponent).min(d.truncation_order - d.leading_exponent + lead);
        let len = (trunc - lead).max(0) as usize;
        let d0 = &d.coeffs[0];
        let mut rem: Vec<BigInt> = self.coeffs.clone();
        let mut quot = Vec::with_capacity(len);
        for i in 0..len {
            let (qi, r) = rem[i].div_rem(d0);
            if !r.is_zero() {
                return Err(Error::Domain(format!(
                    "series is not exactly divisible: remainder at q^{}",
                    lead + i as i64
                )));
            }
            for (j, dj) in d.coeffs.iter().enumerate().skip(1) {
                if i + j >= len {
                    break;
                }
                rem[i + j] -= &qi * dj;
            }
            quot.push(qi);
        }
        let q = IntegerSeries { leading_exponent: lead, coeffs: quot, truncation_order: trunc };
        if !q.mul(&d).agrees_with(self) {
            return Err(Error::Defect("series division failed its multiplication check".into()));
        }
        Ok(q)
    }

    /// Integer `r`-th root of a series `1 + a_1 q + …`, by the power recurrence
    /// `s_k = (1/(r k)) Σ_{i=1..k} ((r+1) i - r k) p_i s_(k-i)`.
    pub fn integer_root(&self, r: u32) -> Result<IntegerSeries> {
        if self.leading_exponent != 0 || self.coeffs.first() != Some(&BigInt::one()) {
            return Err(Error::Domain("root extraction needs a series of the form 1 + O(q)".into()));
        }
        let n = self.coeffs.len();
        let p = &self.coeffs;
        let r = r as i64;
        let mut s: Vec<BigInt> = vec![BigInt::one()];
        for k in 1..n {
            let mut acc = BigInt::zero();
            for i in 1..=k {
                let w = (r + 1) * i as i64 - r * k as i64;
                if w != 0 && !p[i].is_zero() {
                    acc += &p[i] * &s[k - i] * w;
                }
            }
            let (sk, rem) = acc.div_rem(&BigInt::from(r * k as i64));
            if !rem.is_zero() {
                return Err(Error::Defect(format!("root coefficient at q^{k} is not integral")));
            }
            s.push(sk);
        }
        let root = IntegerSeries { leading_exponent: 0, coeffs: s, truncation_order: self.truncation_order };
        if !root.pow(r as u32).agrees_with(self) {
            return Err(Error::Defect("root extraction failed its power check".into()));
        }
        Ok(root)
    }

    /// Equal coefficients wherever both series are known.
    pub fn agrees_with(&self, o: &IntegerSeries) -> bool {
        let lead = self.leading_exponent.min(o.leading_exponent);
        let trunc = self.truncation_order.min(o.truncation_order);
        (lead..trunc).all(|e| self.coeff(e) == o.coeff(e))
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// `(exponent, coefficient)` pairs up to the truncation.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().enumerate().map(move |(i, c)| (self.leading_exponent + i as i64, c))
    }
}

impl fmt::Display for IntegerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                f.write_str("-")?;
            }
            first = false;
            let a = c.abs();
            match e {
                0 => write!(f, "{a}")?,
                _ if a.is_one() => write!(f, "q^{e}")?,
                _ => write!(f, "{a}q^{e}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(q^{})", self.truncation_order)
    }
}

impl Serialize for IntegerSeries {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("IntegerSeries", 3)?;
        st.serialize_field("leading_exponent", &self.leading_exponent)?;
        st.serialize_field("truncation_order", &self.truncation_order)?;
        let c: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        st.serialize_field("coeffs", &c)?;
        st.end()
    }
}

fn check_terms(num_terms: usize, bound: usize, what: &'static str) -> Result<()> {
    if num_terms > bound {
        return Err(Error::resource(what, num_terms, bound));
    }
    Ok(())
}

pub const J_TERMS_BOUND: usize = 1000;

fn sigma3(n: u64) -> u64 {
    (1..=n).filter(|d| n.is_multiple_of(*d)).map(|d| d * d * d).sum()
}

/// `E4 = 1 + 240 Σ σ₃(n) qⁿ`, known through `q^num_terms`.
pub fn e4_expansion(num_terms: usize) -> IntegerSeries {
    let coeffs =
        (0..=num_terms as u64).map(|n| if n == 0 { BigInt::one() } else { BigInt::from(240u64 * sigma3(n)) }).collect();
    IntegerSeries { leading_exponent: 0, coeffs, truncation_order: num_terms as i64 + 1 }
}

/// `Π_{n≥1} (1 - qⁿ)` through `q^num_terms`, by repeated factor multiplication.
fn euler_product(num_terms: usize) -> Vec<BigInt> {
    let mut c = vec![BigInt::zero(); num_terms + 1];
    c[0] = BigInt::one();
    for n in 1..=num_terms {
        for k in (n..=num_terms).rev() {
            if !c[k - n].is_zero() {
                let t = c[k - n].clone();
                c[k] -= t;
            }
        }
    }
    c
}

/// `Δ = q Π (1 - qⁿ)^24`, known through `q^num_terms`.
pub fn delta_expansion(num_terms: usize) -> Result<IntegerSeries> {
    delta_expansion_with(num_terms, &Limits::default())
}

pub fn delta_expansion_with(num_terms: usize, limits: &Limits) -> Result<IntegerSeries> {
    check_terms(num_terms, limits.series_terms as usize, "q-series terms")?;
    let len = num_terms.max(1);
    let eta = euler_product(len - 1);
    let sparse: Vec<(usize, &BigInt)> = eta.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
    let mut acc = eta.clone();
    for _ in 1..24 {
        let mut next = vec![BigInt::zero(); len];
        for (i, a) in acc.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for &(j, b) in &sparse {
                if i + j >= len {
                    break;
                }
                next[i + j] += a * b;
            }
        }
        acc = next;
    }
    IntegerSeries::new(1, acc, num_terms as i64 + 1)
}

/// `j = E4³ / Δ`, known through `q^num_terms`.
pub fn j_expansion(num_terms: usize) -> Result<IntegerSeries> {
    check_terms(num_terms, J_TERMS_BOUND, "j-expansion terms")?;
    let e4 = e4_expansion(num_terms + 1);
    let delta = delta_expansion(num_terms + 2)?;
    e4.pow(3).div_exact(&delta)
}

/// `J = j - 744`.
pub fn big_j_expansion(num_terms: usize) -> Result<IntegerSeries> {
    let j = j_expansion(num_terms)?;
    Ok(j.sub(&IntegerSeries::from_i64(0, &[744], j.truncation_order())?))
}

/// The series `S` with `S³ = q·j`, known through `q^num_terms`.
pub fn j_cube_root(num_terms: usize) -> Result<IntegerSeries> {
    check_terms(num_terms, J_TERMS_BOUND, "j-expansion terms")?;
    let qj = j_expansion(num_terms.max(1))?.shift(1).truncate(num_terms as i64 + 1);
    qj.integer_root(3)
}

/// `(J + 24)·Δ`, known through `q^num_terms`. Its `q^m` coefficient counts
/// Leech vectors `x` with `x·x = 2m` in the even unimodular normalization.
pub fn leech_theta_identity(num_terms: usize) -> Result<IntegerSeries> {
    check_terms(num_terms, J_TERMS_BOUND, "j-expansion terms")?;
    let j = big_j_expansion(num_terms + 1)?;
    let j24 = j.add(&IntegerSeries::from_i64(0, &[24], j.truncation_order())?);
    let delta = delta_expansion(num_terms + 2)?;
    Ok(j24.mul(&delta).truncate(num_terms as i64 + 1))
}

#[derive(Debug, Clone, Serialize)]
pub struct MonsterData {
    pub factorization: Vec<(u64, u32)>,
    pub irrep_dims: [u64; 4],
    pub missing_primes: [u64; 5],
}

pub fn monster_data() -> MonsterData {
    MonsterData {
        factorization: vec![
            (2, 46),
            (3, 20),
            (5, 9),
            (7, 6),
            (11, 2),
            (13, 3),
            (17, 1),
            (19, 1),
            (23, 1),
            (29, 1),
            (31, 1),
            (41, 1),
            (47, 1),
            (59, 1),
            (71, 1),
        ],
        irrep_dims: [1, 196883, 21296876, 842609326],
        missing_primes: [37, 43, 53, 61, 67],
    }
}

pub fn monster_order() -> BigUint {
    numtheory::product_of_powers(&monster_data().factorization)
}

/// Small irreducible dimensions of `E8`.
pub const E8_IRREP_DIMS: [u64; 4] = [1, 248, 3875, 30380];

#[derive(Debug, Clone, Serialize)]
pub struct IdentityCheck {
    pub label: String,
    pub lhs: String,
    pub rhs: String,
    pub passed: bool,
}

fn identity(label: &str, lhs: &BigInt, parts: &[(u64, u64)]) -> IdentityCheck {
    let rhs: BigInt = parts.iter().map(|&(m, d)| BigInt::from(m) * BigInt::from(d)).sum();
    let text: Vec<String> =
        parts.iter().map(|&(m, d)| if m == 1 { d.to_string() } else { format!("{m}*{d}") }).collect();
    IdentityCheck { label: label.to_string(), lhs: lhs.to_string(), rhs: text.join(" + "), passed: *lhs == rhs }
}

/// Coefficients of `j` and of its cube root written as sums of Monster and
/// `E8` irreducible dimensions.
pub fn moonshine_decompositions() -> Result<Vec<IdentityCheck>> {
    let j = j_expansion(3)?;
    let s = j_cube_root(3)?;
    let [m1, m2, m3, m4] = monster_data().irrep_dims;
    let [e1, e2, e3, e4] = E8_IRREP_DIMS;
    let c = |e| j.coeff(e).expect("within truncation");
    let sc = |e| s.coeff(e).expect("within truncation");
    Ok(vec![
        identity("j_1 = 1 + 196883", &c(1), &[(1, m1), (1, m2)]),
        identity("j_2 = 1 + 196883 + 21296876", &c(2), &[(1, m1), (1, m2), (1, m3)]),
        identity("j_3 = 2*1 + 2*196883 + 21296876 + 842609326", &c(3), &[(2, m1), (2, m2), (1, m3), (1, m4)]),
        identity("cube root q^1 = 248", &sc(1), &[(1, e2)]),
        identity("cube root q^2 = 1 + 248 + 3875", &sc(2), &[(1, e1), (1, e2), (1, e3)]),
        identity("cube root q^3 = 1 + 2*248 + 3875 + 30380", &sc(3), &[(1, e1), (2, e2), (1, e3), (1, e4)]),
    ])
}

#[derive(Debug, Clone, Serialize)]
pub struct SumOfSquaresReport {
    pub n: u64,
    pub direct: u64,
    pub closed_form: u64,
    pub root: u64,
    pub scan_limit: u64,
    /// Every `N` in the scan range whose square-pyramidal total is a square.
    pub square_totals: Vec<u64>,
    /// `N = 1` is dropped as degenerate.
    pub unique_nontrivial: bool,
}

pub fn pyramidal(n: u64) -> u128 {
    let n = n as u128;
    n * (n + 1) * (2 * n + 1) / 6
}

pub fn sum_of_squares_check(scan_limit: u64) -> SumOfSquaresReport {
    let direct: u64 = (1..=24u64).map(|i| i * i).sum();
    let square_totals: Vec<u64> = (1..=scan_limit)
        .filter(|&n| {
            let t = pyramidal(n);
            let r = t.sqrt();
            r * r == t
        })
        .collect();
    let nontrivial: Vec<u64> = square_totals.iter().copied().filter(|&n| n > 1).collect();
    let closed = pyramidal(24) as u64;
    SumOfSquaresReport {
        n: 24,
        direct,
        closed_form: closed,
        root: closed.sqrt(),
        scan_limit,
        unique_nontrivial: nontrivial == [24],
        square_totals,
    }
}

/// Coefficients of `j` from `q^-1` through `q^num_terms`, as integers.
pub fn j_coefficients(num_terms: usize) -> Result<Vec<BigInt>> {
    Ok(j_expansion(num_terms)?.coeffs().to_vec())
}

pub fn digit_count(n: &BigUint) -> usize {
    n.to_string().len()
}

pub fn leading_digit(n: &BigUint) -> u32 {
    n.to_string().chars().next().and_then(|c| c.to_digit(10)).unwrap_or(0)
}

#[allow(clippy::needless_range_loop)]
#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;
    use proptest::prelude::*;

    fn ints(s: &IntegerSeries) -> Vec<i64> {
        s.coeffs().iter().map(|c| c.to_i64().unwrap()).collect()
    }

    /// Euler's pentagonal theorem: independent of the product expansion.
    fn pentagonal_eta(n: usize) -> Vec<i64> {
        let mut c = vec![0i64; n + 1];
        for k in -(n as i64)..=(n as i64) {
            let g = k * (3 * k - 1) / 2;
            if (0..=n as i64).contains(&g) {
                c[g as usize] += if k % 2 == 0 { 1 } else { -1 };
            }
        }
        c
    }

    #[test]
    fn eta_matches_pentagonal() {
        let p = euler_product(300);
        let o = pentagonal_eta(300);
        for i in 0..=300 {
            assert_eq!(p[i], BigInt::from(o[i]), "q^{i}");
        }
    }

    #[test]
    fn delta_coefficients() {
        let d = delta_expansion(10).unwrap();
        assert_eq!(d.leading_exponent(), 1);
        assert_eq!(ints(&d), vec![1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920]);
        // Ramanujan tau is multiplicative: τ(6) = τ(2)τ(3).
        let d = delta_expansion(40).unwrap();
        let tau = |n: i64| d.coeff(n).unwrap();
        assert_eq!(tau(6), tau(2) * tau(3));
        assert_eq!(tau(35), tau(5) * tau(7));
    }

    #[test]
    fn j_coefficients_and_certificate() {
        let j = j_expansion(4).unwrap();
        assert_eq!(j.leading_exponent(), -1);
        assert_eq!(ints(&j), vec![1, 744, 196884, 21493760, 864299970, 20245856256]);
        let e4c = e4_expansion(6).pow(3);
        assert!(j.mul(&delta_expansion(7).unwrap()).agrees_with(&e4c));
    }

    #[test]
    fn cube_root() {
        let s = j_cube_root(4).unwrap();
        assert_eq!(ints(&s)[..4], [1, 248, 4124, 34752]);
        let qj = j_expansion(4).unwrap().shift(1);
        assert!(s.pow(3).agrees_with(&qj));
    }

    #[test]
    fn decompositions_pass() {
        let r = moonshine_decompositions().unwrap();
        assert_eq!(r.len(), 6);
        assert!(r.iter().all(|c| c.passed), "{r:?}");
    }

    #[test]
    fn theta_identity() {
        let t = leech_theta_identity(4).unwrap();
        assert_eq!(ints(&t), vec![1, 0, 196560, 16773120, 398034000]);
        assert!(t.is_nonnegative());
    }

    #[test]
    fn monster() {
        let m = monster_order();
        assert_eq!(digit_count(&m), 54);
        assert_eq!(leading_digit(&m), 8);
        assert!((&m % 71u32).is_zero());
        for p in monster_data().missing_primes {
            assert!(!(&m % p).is_zero());
        }
        assert_eq!(47 * 59 * 71, 196883);
        assert_eq!(m, crate::sporadic_data::sporadic_order("M").unwrap());
    }

    #[test]
    fn squares() {
        let r = sum_of_squares_check(1_000_000);
        assert_eq!((r.direct, r.closed_form, r.root), (4900, 4900, 70));
        assert_eq!(r.square_totals, vec![1, 24]);
        assert!(r.unique_nontrivial);
    }

    #[test]
    fn bounds_and_division() {
        assert!(matches!(j_expansion(1001), Err(Error::Resource { .. })));
        let limits = Limits { series_terms: 5, ..Limits::default() };
        assert!(delta_expansion_with(6, &limits).is_err());
        let a = IntegerSeries::from_i64(0, &[1, 1], 2).unwrap();
        let b = IntegerSeries::from_i64(0, &[2, 1], 2).unwrap();
        assert!(a.div_exact(&b).is_err());
        let z = IntegerSeries::from_i64(0, &[0, 0], 2).unwrap();
        assert!(matches!(a.div_exact(&z), Err(Error::DivisionByZero)));
    }

    #[test]
    fn display() {
        let d = delta_expansion(3).unwrap();
        assert_eq!(d.to_string(), "q^1 - 24q^2 + 252q^3 + O(q^4)");
    }

    fn series() -> impl Strategy<Value = IntegerSeries> {
        (-2i64..2, proptest::collection::vec(-50i64..50, 1..8)).prop_map(|(lead, c)| {
            let t = lead + c.len() as i64;
            IntegerSeries::from_i64(lead, &c, t).unwrap()
        })
    }

    proptest! {
        #[test]
        fn ring_laws(a in series(), b in series(), c in series()) {
            prop_assert!(a.mul(&b).mul(&c).agrees_with(&a.mul(&b.mul(&c))));
            prop_assert!(a.mul(&b).agrees_with(&b.mul(&a)));
            prop_assert!(a.mul(&b.add(&c)).agrees_with(&a.mul(&b).add(&a.mul(&c))));
        }

        #[test]
        fn divide_back(a in series(), b in series()) {
            let unit = IntegerSeries::from_i64(0, &[1], 20).unwrap();
            let d = unit.add(&b.shift(3 - b.leading_exponent()));
            let p = a.mul(&d);
            let q = p.div_exact(&d).unwrap();
            prop_assert!(q.agrees_with(&a));
        }
    }
}
