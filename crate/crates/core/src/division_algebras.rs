//! Exact quaternion and octonion arithmetic over the rationals.
//!
//! Both algebras share one construction: `e_i² = -1` and, for each oriented
//! line `(a, b, c)`, `e_a e_b = e_c` cyclically with the reversed products
//! negated. The quaternions use the single line `(1, 2, 3)`; the octonions use
//! the seven lines of a fixed Fano-plane orientation.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Algebra {
    H,
    O,
}

pub const FANO_LINES: [(usize, usize, usize); 7] =
    [(1, 2, 3), (1, 4, 5), (1, 7, 6), (2, 4, 6), (2, 5, 7), (3, 4, 7), (3, 6, 5)];

impl Algebra {
    pub fn dim(self) -> usize {
        match self {
            Algebra::H => 4,
            Algebra::O => 8,
        }
    }

    fn lines(self) -> &'static [(usize, usize, usize)] {
        match self {
            Algebra::H => &FANO_LINES[..1],
            Algebra::O => &FANO_LINES,
        }
    }

    /// `e_i e_j = sign · e_k` as `(sign, k)`.
    fn table(self) -> &'static Vec<Vec<(i8, usize)>> {
        static H: OnceLock<Vec<Vec<(i8, usize)>>> = OnceLock::new();
        static O: OnceLock<Vec<Vec<(i8, usize)>>> = OnceLock::new();
        let cell = match self {
            Algebra::H => &H,
            Algebra::O => &O,
        };
        cell.get_or_init(|| build_table(self))
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algebra::H => "H",
            Algebra::O => "O",
        })
    }
}

impl FromStr for Algebra {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "h" | "quaternion" | "quaternions" => Ok(Algebra::H),
            "o" | "octonion" | "octonions" => Ok(Algebra::O),
            _ => Err(Error::Invalid(format!("unknown algebra {s:?}; expected H or O"))),
        }
    }
}

fn build_table(alg: Algebra) -> Vec<Vec<(i8, usize)>> {
    let n = alg.dim();
    let mut t = vec![vec![(0i8, 0usize); n]; n];
    for i in 0..n {
        t[0][i] = (1, i);
        t[i][0] = (1, i);
    }
    for i in 1..n {
        t[i][i] = (-1, 0);
    }
    for &(a, b, c) in alg.lines() {
        for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
            t[x][y] = (1, z);
            t[y][x] = (-1, z);
        }
    }
    t
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Element {
    algebra: Algebra,
    coords: Vec<BigRational>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Element {
    pub fn new(algebra: Algebra, coords: Vec<BigRational>) -> Result<Self> {
        if coords.len() != algebra.dim() {
            return Err(Error::Invalid(format!(
                "{algebra} elements have {} coordinates, got {}",
                algebra.dim(),
                coords.len()
            )));
        }
        Ok(Element { algebra, coords })
    }

    pub fn from_ints(algebra: Algebra, coords: &[i64]) -> Result<Self> {
        Self::new(algebra, coords.iter().map(|&c| rat(c)).collect())
    }

    pub fn quaternion(u: BigRational, x: BigRational, y: BigRational, z: BigRational) -> Self {
        Element { algebra: Algebra::H, coords: vec![u, x, y, z] }
    }

    pub fn zero(algebra: Algebra) -> Self {
        Element { algebra, coords: vec![BigRational::zero(); algebra.dim()] }
    }

    pub fn one(algebra: Algebra) -> Self {
        Self::basis(algebra, 0)
    }

    /// `e_i`, with `e_0 = 1`.
    pub fn basis(algebra: Algebra, i: usize) -> Self {
        let mut e = Self::zero(algebra);
        e.coords[i] = BigRational::one();
        e
    }

    pub fn algebra(&self) -> Algebra {
        self.algebra
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn real(&self) -> &BigRational {
        &self.coords[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    fn same(&self, o: &Element) -> Result<()> {
        if self.algebra != o.algebra {
            return Err(Error::Domain(format!(
                "cannot combine an element of {} with one of {}",
                self.algebra, o.algebra
            )));
        }
        Ok(())
    }

    pub fn add(&self, o: &Element) -> Result<Element> {
        self.same(o)?;
        let coords = self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect();
        Ok(Element { algebra: self.algebra, coords })
    }

    pub fn sub(&self, o: &Element) -> Result<Element> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Element {
        Element { algebra: self.algebra, coords: self.coords.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, k: &BigRational) -> Element {
        Element { algebra: self.algebra, coords: self.coords.iter().map(|c| c * k).collect() }
    }

    pub fn mul(&self, o: &Element) -> Result<Element> {
        self.same(o)?;
        let t = self.algebra.table();
        let mut out = vec![BigRational::zero(); self.algebra.dim()];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coords.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let (s, k) = t[i][j];
                let p = a * b;
                if s > 0 {
                    out[k] += p;
                } else {
                    out[k] -= p;
                }
            }
        }
        Ok(Element { algebra: self.algebra, coords: out })
    }

    pub fn conj(&self) -> Element {
        let coords = self.coords.iter().enumerate().map(|(i, c)| if i == 0 { c.clone() } else { -c }).collect();
        Element { algebra: self.algebra, coords }
    }

    pub fn norm(&self) -> BigRational {
        self.coords.iter().map(|c| c * c).sum()
    }

    /// `ā / N(a)`, absent for zero.
    pub fn inverse(&self) -> Option<Element> {
        if self.is_zero() {
            return None;
        }
        Some(self.conj().scale(&self.norm().recip()))
    }

    /// `(ab)c - a(bc)`.
    pub fn associator(a: &Element, b: &Element, c: &Element) -> Result<Element> {
        a.mul(b)?.mul(c)?.sub(&a.mul(&b.mul(c)?)?)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: &[&str] = match self.algebra {
            Algebra::H => &["", "i", "j", "k"],
            Algebra::O => &["", "e1", "e2", "e3", "e4", "e5", "e6", "e7"],
        };
        let mut first = true;
        for (c, name) in self.coords.iter().zip(names) {
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
            match (a.is_one(), name.is_empty()) {
                (true, false) => write!(f, "{name}")?,
                (_, true) => write!(f, "{a}")?,
                (false, false) => write!(f, "{a}{name}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl Serialize for Element {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Element", 3)?;
        st.serialize_field("algebra", &self.algebra)?;
        let c: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        st.serialize_field("coords", &c)?;
        st.serialize_field("display", &self.to_string())?;
        st.end()
    }
}

/// Parses comma-separated rationals such as `1,0,-1/2,3`.
pub fn parse_element(algebra: Algebra, text: &str) -> Result<Element> {
    let coords = text
        .split(',')
        .map(|t| t.trim().parse::<BigRational>().map_err(|_| Error::Invalid(format!("{t:?} is not a rational number"))))
        .collect::<Result<Vec<_>>>()?;
    Element::new(algebra, coords)
}

#[derive(Debug, Clone, Serialize)]
pub struct ConjNormInverse {
    pub conjugate: Element,
    pub norm: String,
    pub inverse: Option<Element>,
    /// `a · a⁻¹ = 1`, vacuous for zero.
    pub inverse_verified: bool,
}

pub fn conj_norm_inverse(a: &Element) -> Result<ConjNormInverse> {
    let inverse = a.inverse();
    let inverse_verified = match &inverse {
        Some(inv) => a.mul(inv)? == Element::one(a.algebra) && inv.mul(a)? == Element::one(a.algebra),
        None => true,
    };
    let n = a.conj().mul(a)?;
    if n.coords[1..].iter().any(|c| !c.is_zero()) || n.coords[0] != a.norm() {
        return Err(Error::Defect(format!("conj(a)·a is not the real number N(a) for a = {a}")));
    }
    Ok(ConjNormInverse { conjugate: a.conj(), norm: a.norm().to_string(), inverse, inverse_verified })
}

/// Structural checks on the multiplication table over basis elements.
pub fn validate_table(alg: Algebra) -> Result<()> {
    let n = alg.dim();
    let e: Vec<Element> = (0..n).map(|i| Element::basis(alg, i)).collect();
    let minus_one = Element::one(alg).neg();
    for i in 1..n {
        if e[i].mul(&e[i])? != minus_one {
            return Err(Error::Defect(format!("e{i}^2 != -1 in {alg}")));
        }
        for j in 1..n {
            if i != j && e[i].mul(&e[j])? != e[j].mul(&e[i])?.neg() {
                return Err(Error::Defect(format!("e{i}, e{j} do not anticommute in {alg}")));
            }
        }
    }
    for a in &e {
        for b in &e {
            if !Element::associator(a, a, b)?.is_zero() || !Element::associator(a, b, b)?.is_zero() {
                return Err(Error::Defect(format!("alternativity fails on ({a}, {b}) in {alg}")));
            }
            if a.mul(b)?.norm() != a.norm() * b.norm() {
                return Err(Error::Defect(format!("norm is not multiplicative on ({a}, {b})")));
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
pub struct ProbeReport {
    pub algebra: Algebra,
    pub samples: usize,
    pub seed: u64,
    pub associative_failures: usize,
    pub alternative_failures: usize,
    pub norm_failures: usize,
    pub conjugation_failures: usize,
    /// First basis triple `(i, j, k)` with a nonzero associator.
    pub nonassociative_basis_triple: Option<(usize, usize, usize)>,
    pub passed: bool,
}

pub const DEFAULT_PROBE_SEED: u64 = 0xa1_7e27;

pub fn random_element(alg: Algebra, rng: &mut impl Rng) -> Element {
    let coords = (0..alg.dim())
        .map(|_| BigRational::new(BigInt::from(rng.gen_range(-9i64..=9)), BigInt::from(rng.gen_range(1i64..=6))))
        .collect();
    Element { algebra: alg, coords }
}

/// For H, full associativity is required; for O, alternativity is required
/// and a non-associative basis triple must exist.
pub fn associativity_probe(alg: Algebra, sample_size: usize, seed: u64) -> Result<ProbeReport> {
    if sample_size == 0 {
        return Err(Error::Invalid("sample size must be at least 1".into()));
    }
    validate_table(alg)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut assoc, mut alt, mut norm, mut conj) = (0, 0, 0, 0);
    for _ in 0..sample_size {
        let a = random_element(alg, &mut rng);
        let b = random_element(alg, &mut rng);
        let c = random_element(alg, &mut rng);
        if !Element::associator(&a, &b, &c)?.is_zero() {
            assoc += 1;
        }
        if !Element::associator(&a, &a, &b)?.is_zero() || !Element::associator(&a, &b, &b)?.is_zero() {
            alt += 1;
        }
        let ab = a.mul(&b)?;
        if ab.norm() != a.norm() * b.norm() {
            norm += 1;
        }
        if ab.conj() != b.conj().mul(&a.conj())? {
            conj += 1;
        }
    }
    let n = alg.dim();
    let mut triple = None;
    'outer: for i in 1..n {
        for j in 1..n {
            for k in 1..n {
                let (a, b, c) = (Element::basis(alg, i), Element::basis(alg, j), Element::basis(alg, k));
                if !Element::associator(&a, &b, &c)?.is_zero() {
                    triple = Some((i, j, k));
                    break 'outer;
                }
            }
        }
    }
    let passed = alt == 0
        && norm == 0
        && conj == 0
        && match alg {
            Algebra::H => assoc == 0 && triple.is_none(),
            Algebra::O => triple.is_some(),
        };
    Ok(ProbeReport {
        algebra: alg,
        samples: sample_size,
        seed,
        associative_failures: assoc,
        alternative_failures: alt,
        norm_failures: norm,
        conjugation_failures: conj,
        nonassociative_basis_triple: triple,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(alg: Algebra, i: usize) -> Element {
        Element::basis(alg, i)
    }

    #[test]
    fn quaternion_units() {
        let (i, j, k) = (e(Algebra::H, 1), e(Algebra::H, 2), e(Algebra::H, 3));
        assert_eq!(i.mul(&j).unwrap(), k);
        assert_eq!(j.mul(&i).unwrap(), k.neg());
        assert!(i.mul(&j).unwrap().add(&j.mul(&i).unwrap()).unwrap().is_zero());
        assert_eq!(i.inverse().unwrap(), i.neg());
        let x = Element::from_ints(Algebra::H, &[1, 2, -3, 4]).unwrap();
        assert_eq!(Element::one(Algebra::H).mul(&x).unwrap(), x);
        assert_eq!(x.to_string(), "1 + 2i - 3j + 4k");
    }

    /// `(u + x)(u' + x') = uu' - x·x' + ux' + u'x + x × x'`.
    #[test]
    fn quaternion_vector_formula() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let a = random_element(Algebra::H, &mut rng);
            let b = random_element(Algebra::H, &mut rng);
            let (u, x) = (&a.coords[0], &a.coords[1..]);
            let (v, y) = (&b.coords[0], &b.coords[1..]);
            let dot: BigRational = x.iter().zip(y).map(|(p, q)| p * q).sum();
            let cross = [&x[1] * &y[2] - &x[2] * &y[1], &x[2] * &y[0] - &x[0] * &y[2], &x[0] * &y[1] - &x[1] * &y[0]];
            let mut want = vec![u * v - dot];
            for t in 0..3 {
                want.push(u * &y[t] + v * &x[t] + &cross[t]);
            }
            assert_eq!(a.mul(&b).unwrap().coords, want);
        }
    }

    #[test]
    fn octonion_units() {
        let o = |i| e(Algebra::O, i);
        let left = o(1).mul(&o(2)).unwrap().mul(&o(4)).unwrap();
        let right = o(1).mul(&o(2).mul(&o(4)).unwrap()).unwrap();
        assert_eq!(left, right.neg());
        assert_eq!(left, o(7));
        // Points on one line span a quaternion subalgebra.
        assert!(Element::associator(&o(1), &o(2), &o(3)).unwrap().is_zero());
        for i in 1..8 {
            assert_eq!(o(i).mul(&o(i)).unwrap(), Element::one(Algebra::O).neg());
        }
    }

    #[test]
    fn tables_validate() {
        validate_table(Algebra::H).unwrap();
        validate_table(Algebra::O).unwrap();
    }

    #[test]
    fn probes() {
        let h = associativity_probe(Algebra::H, 100, DEFAULT_PROBE_SEED).unwrap();
        assert!(h.passed && h.associative_failures == 0, "{h:?}");
        let o = associativity_probe(Algebra::O, 100, DEFAULT_PROBE_SEED).unwrap();
        assert!(o.passed, "{o:?}");
        assert!(o.associative_failures > 90);
        assert_eq!(o.nonassociative_basis_triple, Some((1, 2, 4)));
        assert!(associativity_probe(Algebra::O, 0, 1).is_err());
    }

    #[test]
    fn inverses_and_domains() {
        let a = parse_element(Algebra::O, "1,-1/2,0,0,3,0,0,2").unwrap();
        let r = conj_norm_inverse(&a).unwrap();
        assert!(r.inverse_verified);
        assert_eq!(r.norm, "57/4");
        assert!(conj_norm_inverse(&Element::zero(Algebra::H)).unwrap().inverse.is_none());
        let h = Element::one(Algebra::H);
        assert!(matches!(h.mul(&Element::one(Algebra::O)), Err(Error::Domain(_))));
        assert!(parse_element(Algebra::H, "1,2,3").is_err());
        assert!(parse_element(Algebra::H, "1,x,3,4").is_err());
    }
}
