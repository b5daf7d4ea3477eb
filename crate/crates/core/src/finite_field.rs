//! Exact arithmetic in `F_p` and `F_{p^f}`.
//!
//! Elements are dense coefficient vectors in the polynomial basis
//! `1, t, ..., t^(f-1)` modulo a monic irreducible polynomial. The modulus is
//! the lexicographically smallest monic irreducible of degree `f`, comparing
//! coefficient sequences from the constant term upward, so every field is
//! reproducible without external tables.
//!
//! Elements are enumerated by their *index* `c_0 + c_1 p + ... + c_{f-1} p^(f-1)`.
//! For `F_4` (modulus `t^2 + t + 1`) this gives the labelling `0, 1, 2 = t,
//! 3 = t + 1`, under which Frobenius swaps 2 and 3.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::numtheory::{factorize, smallest_divisor};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct FieldSpec {
    p: u64,
    f: u32,
    /// `f + 1` coefficients, constant term first, leading coefficient 1.
    modulus: Vec<u64>,
    q: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FieldElement {
    coeffs: Vec<u64>,
}

impl FieldElement {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Neg,
    Inv,
    Pow,
}

/// Second operand of [`FieldSpec::apply`]: another element, an exponent, or nothing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Operand {
    Element(FieldElement),
    Exponent(i64),
    None,
}

pub fn make_field(p: u64, f: u32) -> Result<FieldSpec> {
    FieldSpec::new(p, f)
}

impl FieldSpec {
    pub fn new(p: u64, f: u32) -> Result<Self> {
        Self::with_limit(p, f, Limits::default().max_field_size)
    }

    pub fn with_limit(p: u64, f: u32, max_q: u64) -> Result<Self> {
        match smallest_divisor(p) {
            None => return Err(Error::Invalid(format!("{p} is not a prime (must be >= 2)"))),
            Some(d) if d != p => return Err(Error::NotPrime { value: p, divisor: d }),
            _ => {}
        }
        if f == 0 {
            return Err(Error::Invalid("field degree f must be at least 1".into()));
        }
        let q = (p as u128).checked_pow(f).filter(|&q| q <= max_q as u128);
        let q = match q {
            Some(q) => q as u64,
            None => return Err(Error::resource("field size p^f", format!("{p}^{f}"), max_q)),
        };
        let modulus = if f == 1 { vec![0, 1] } else { smallest_irreducible(p, f) };
        Ok(FieldSpec { p, f, modulus, q })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn f(&self) -> u32 {
        self.f
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { coeffs: vec![0; self.f as usize] }
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    /// The image of an integer in the prime field.
    pub fn from_int(&self, n: i64) -> FieldElement {
        let mut e = self.zero();
        e.coeffs[0] = n.rem_euclid(self.p as i64) as u64;
        e
    }

    /// The generator `t` of the polynomial basis (equal to 0 when `f = 1`).
    pub fn t(&self) -> FieldElement {
        if self.f == 1 {
            return self.zero();
        }
        let mut e = self.zero();
        e.coeffs[1] = 1;
        e
    }

    pub fn element(&self, coeffs: &[u64]) -> Result<FieldElement> {
        let e = FieldElement { coeffs: coeffs.to_vec() };
        self.check(&e)?;
        Ok(e)
    }

    pub fn from_index(&self, mut index: u64) -> FieldElement {
        assert!(index < self.q, "element index {index} out of range for F_{}", self.q);
        let mut coeffs = Vec::with_capacity(self.f as usize);
        for _ in 0..self.f {
            coeffs.push(index % self.p);
            index /= self.p;
        }
        FieldElement { coeffs }
    }

    pub fn index(&self, a: &FieldElement) -> u64 {
        a.coeffs.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    /// All elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q).map(move |i| self.from_index(i))
    }

    pub fn contains(&self, a: &FieldElement) -> bool {
        a.coeffs.len() == self.f as usize && a.coeffs.iter().all(|&c| c < self.p)
    }

    fn check(&self, a: &FieldElement) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::Domain(format!("element {:?} does not belong to F_{}^{}", a.coeffs, self.p, self.f)))
        }
    }

    pub fn is_zero(&self, a: &FieldElement) -> bool {
        a.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add_unchecked(a, b))
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add_unchecked(a, &self.neg_unchecked(b)))
    }

    pub fn neg(&self, a: &FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        Ok(self.neg_unchecked(a))
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul_unchecked(a, b))
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(self.inv_unchecked(a))
    }

    /// `a^e`; negative exponents go through the inverse.
    pub fn pow(&self, a: &FieldElement, e: i64) -> Result<FieldElement> {
        self.check(a)?;
        let base = if e < 0 {
            if self.is_zero(a) {
                return Err(Error::DivisionByZero);
            }
            self.inv_unchecked(a)
        } else {
            a.clone()
        };
        Ok(self.pow_unchecked(&base, e.unsigned_abs()))
    }

    /// Dispatch on an operation tag; unary operations ignore `b`.
    pub fn apply(&self, op: FieldOp, a: &FieldElement, b: &Operand) -> Result<FieldElement> {
        match (op, b) {
            (FieldOp::Neg, _) => self.neg(a),
            (FieldOp::Inv, _) => self.inv(a),
            (FieldOp::Pow, Operand::Exponent(e)) => self.pow(a, *e),
            (FieldOp::Add, Operand::Element(b)) => self.add(a, b),
            (FieldOp::Sub, Operand::Element(b)) => self.sub(a, b),
            (FieldOp::Mul, Operand::Element(b)) => self.mul(a, b),
            (op, b) => Err(Error::Invalid(format!("operation {op:?} cannot take operand {b:?}"))),
        }
    }

    fn add_unchecked(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(&x, &y)| (x + y) % self.p).collect();
        FieldElement { coeffs }
    }

    fn neg_unchecked(&self, a: &FieldElement) -> FieldElement {
        let coeffs = a.coeffs.iter().map(|&x| (self.p - x) % self.p).collect();
        FieldElement { coeffs }
    }

    fn mul_unchecked(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let prod = poly_mul(&a.coeffs, &b.coeffs, self.p);
        let mut r = poly_rem(&prod, &self.modulus, self.p);
        r.resize(self.f as usize, 0);
        FieldElement { coeffs: r }
    }

    fn pow_unchecked(&self, a: &FieldElement, mut e: u64) -> FieldElement {
        let mut result = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul_unchecked(&result, &base);
            }
            base = self.mul_unchecked(&base, &base);
            e >>= 1;
        }
        result
    }

    /// Extended Euclid on `a(t)` and the modulus.
    fn inv_unchecked(&self, a: &FieldElement) -> FieldElement {
        let p = self.p;
        let (mut r0, mut r1) = (self.modulus.clone(), trim(a.coeffs.clone()));
        let (mut s0, mut s1) = (vec![0u64], vec![1u64]);
        while !(r1.len() == 1 && r1[0] == 0) && !r1.is_empty() {
            let (quot, rem) = poly_divrem(&r0, &r1, p);
            let s2 = poly_sub(&s0, &poly_mul(&quot, &s1, p), p);
            r0 = std::mem::replace(&mut r1, rem);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r0 is a nonzero constant c; the inverse is s0 / c.
        let c_inv = mod_inv(r0[0], p);
        let mut coeffs: Vec<u64> = s0.iter().map(|&x| x * c_inv % p).collect();
        coeffs = poly_rem(&coeffs, &self.modulus, p);
        coeffs.resize(self.f as usize, 0);
        FieldElement { coeffs }
    }

    /// Smallest `n >= 1` with `a^n = 1`. Panics on zero.
    pub fn multiplicative_order(&self, a: &FieldElement) -> u64 {
        assert!(!self.is_zero(a), "zero has no multiplicative order");
        let n = self.q - 1;
        let mut order = n;
        for (r, _) in factorize(n) {
            while order.is_multiple_of(r) && self.pow_unchecked(a, order / r) == self.one() {
                order /= r;
            }
        }
        order
    }

    /// Smallest-index element of multiplicative order `q - 1`.
    pub fn multiplicative_generator(&self) -> FieldElement {
        let n = self.q - 1;
        let primes: Vec<u64> = factorize(n).into_iter().map(|(r, _)| r).collect();
        let one = self.one();
        for i in 1..self.q {
            let g = self.from_index(i);
            if primes.iter().all(|&r| self.pow_unchecked(&g, n / r) != one) {
                return g;
            }
        }
        unreachable!("the multiplicative group of a finite field is cyclic")
    }

    pub fn frobenius(&self, a: &FieldElement) -> FieldElement {
        self.pow_unchecked(a, self.p)
    }

    /// Orbit of `a` under `x -> x^p`, starting at `a`.
    pub fn frobenius_orbit(&self, a: &FieldElement) -> Result<Vec<FieldElement>> {
        self.check(a)?;
        let mut orbit = vec![a.clone()];
        loop {
            let next = self.frobenius(orbit.last().unwrap());
            if &next == a {
                return Ok(orbit);
            }
            orbit.push(next);
        }
    }

    /// Exhaustively checks that `x -> x^p` is additive, multiplicative and bijective.
    pub fn frobenius_is_automorphism(&self) -> bool {
        let elems: Vec<FieldElement> = self.elements().collect();
        let images: Vec<FieldElement> = elems.iter().map(|x| self.frobenius(x)).collect();
        let mut seen = vec![false; self.q as usize];
        for im in &images {
            let i = self.index(im) as usize;
            if seen[i] {
                return false;
            }
            seen[i] = true;
        }
        for (i, a) in elems.iter().enumerate() {
            for (j, b) in elems.iter().enumerate() {
                let s = self.index(&self.add_unchecked(a, b)) as usize;
                let m = self.index(&self.mul_unchecked(a, b)) as usize;
                if images[s] != self.add_unchecked(&images[i], &images[j])
                    || images[m] != self.mul_unchecked(&images[i], &images[j])
                {
                    return false;
                }
            }
        }
        true
    }

    /// Order of the Frobenius map in the group of field automorphisms.
    pub fn frobenius_order(&self) -> u32 {
        let elems: Vec<FieldElement> = self.elements().collect();
        let mut current = elems.clone();
        for k in 1..=self.f {
            current = current.iter().map(|x| self.frobenius(x)).collect();
            if current == elems {
                return k;
            }
        }
        unreachable!("Frobenius has order dividing f")
    }

    /// Number of times `a` must be added to itself to reach zero.
    pub fn additive_order(&self, a: &FieldElement) -> u64 {
        let mut acc = a.clone();
        let mut n = 1;
        while !self.is_zero(&acc) {
            acc = self.add_unchecked(&acc, a);
            n += 1;
        }
        n
    }

    /// Precomputed index tables for the inner loops of matrix-group code.
    pub fn tables(&self) -> FieldTables {
        FieldTables::new(self)
    }
}

/// Addition and multiplication tables over element indices.
#[derive(Debug, Clone)]
pub struct FieldTables {
    q: usize,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

impl FieldTables {
    fn new(spec: &FieldSpec) -> Self {
        let q = spec.q as usize;
        let elems: Vec<FieldElement> = spec.elements().collect();
        let mut add = vec![0u32; q * q];
        let mut mul = vec![0u32; q * q];
        for (i, a) in elems.iter().enumerate() {
            for (j, b) in elems.iter().enumerate().skip(i) {
                let s = spec.index(&spec.add_unchecked(a, b)) as u32;
                let m = spec.index(&spec.mul_unchecked(a, b)) as u32;
                add[i * q + j] = s;
                add[j * q + i] = s;
                mul[i * q + j] = m;
                mul[j * q + i] = m;
            }
        }
        let neg = (0..q).map(|i| (0..q).find(|&j| add[i * q + j] == 0).unwrap() as u32).collect();
        let mut inv = vec![0u32; q];
        for i in 1..q {
            inv[i] = (1..q).find(|&j| mul[i * q + j] == 1).unwrap() as u32;
        }
        FieldTables { q, add, mul, neg, inv }
    }

    pub fn q(&self) -> usize {
        self.q
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    /// Inverse of a nonzero index; `inv(0)` is reported as 0.
    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }
}

fn mod_inv(a: u64, p: u64) -> u64 {
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
    if v.is_empty() {
        v.push(0);
    }
    v
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

fn poly_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(out)
}

fn poly_divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let b = trim(b.to_vec());
    let mut rem = trim(a.to_vec());
    let db = b.len() - 1;
    let lead_inv = mod_inv(b[db], p);
    if rem.len() < b.len() {
        return (vec![0], rem);
    }
    let mut quot = vec![0u64; rem.len() - db];
    while rem.len() >= b.len() && !(rem.len() == 1 && rem[0] == 0) {
        let shift = rem.len() - 1 - db;
        let c = rem[rem.len() - 1] * lead_inv % p;
        quot[shift] = c;
        for (i, &bc) in b.iter().enumerate() {
            let idx = shift + i;
            rem[idx] = (rem[idx] + p - c * bc % p) % p;
        }
        rem = trim(rem);
        if rem.len() == 1 {
            break;
        }
    }
    if rem.len() >= b.len() && rem.len() == 1 && db == 0 {
        rem = vec![0];
    }
    (trim(quot), rem)
}

fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    poly_divrem(a, m, p).1
}

/// True when the monic polynomial has no monic factor of degree `1..=deg/2`.
fn is_irreducible(poly: &[u64], p: u64) -> bool {
    let deg = poly.len() - 1;
    for d in 1..=deg / 2 {
        let count = p.pow(d as u32);
        for idx in 0..count {
            let mut cand = Vec::with_capacity(d + 1);
            let mut k = idx;
            for _ in 0..d {
                cand.push(k % p);
                k /= p;
            }
            cand.push(1);
            let (_, rem) = poly_divrem(poly, &cand, p);
            if rem.len() == 1 && rem[0] == 0 {
                return false;
            }
        }
    }
    true
}

/// Lexicographically smallest monic irreducible of degree `f`, comparing
/// `(c_0, c_1, ..., c_{f-1})` with `c_0` most significant.
fn smallest_irreducible(p: u64, f: u32) -> Vec<u64> {
    let count = p.pow(f);
    for idx in 0..count {
        // c_0 is the most significant digit of idx.
        let mut coeffs = vec![0u64; f as usize];
        let mut k = idx;
        for slot in coeffs.iter_mut().rev() {
            *slot = k % p;
            k /= p;
        }
        coeffs.push(1);
        if coeffs[0] != 0 && is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f2_addition_table() {
        let f2 = make_field(2, 1).unwrap();
        let (zero, one) = (f2.zero(), f2.one());
        assert_eq!(f2.add(&zero, &zero).unwrap(), zero);
        assert_eq!(f2.add(&zero, &one).unwrap(), one);
        assert_eq!(f2.add(&one, &one).unwrap(), zero);
        assert_eq!(f2.q(), 2);
    }

    #[test]
    fn f4_modulus_and_product() {
        let f4 = make_field(2, 2).unwrap();
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        let t = f4.t();
        assert_eq!(f4.mul(&t, &t).unwrap(), f4.element(&[1, 1]).unwrap());
    }

    #[test]
    fn f4_additive_group_is_klein() {
        let f4 = make_field(2, 2).unwrap();
        for a in f4.elements() {
            assert!(f4.is_zero(&f4.add(&a, &a).unwrap()));
        }
    }

    #[test]
    fn f5_inverse_and_generator() {
        let f5 = make_field(5, 1).unwrap();
        assert_eq!(f5.inv(&f5.from_int(2)).unwrap(), f5.from_int(3));
        let g = f5.multiplicative_generator();
        assert_eq!(g, f5.from_int(2));
        let powers: Vec<u64> = (1..=4).map(|k| f5.index(&f5.pow(&g, k).unwrap())).collect();
        assert_eq!(powers, vec![2, 4, 3, 1]);
    }

    #[test]
    fn f7_generator_is_three() {
        let f7 = make_field(7, 1).unwrap();
        assert_eq!(f7.multiplicative_order(&f7.from_int(2)), 3);
        assert_eq!(f7.multiplicative_generator(), f7.from_int(3));
    }

    #[test]
    fn f2_generator_is_one() {
        let f2 = make_field(2, 1).unwrap();
        assert_eq!(f2.multiplicative_generator(), f2.one());
    }

    #[test]
    fn f9_multiplicative_group_cyclic_of_order_8() {
        let f9 = make_field(3, 2).unwrap();
        let g = f9.multiplicative_generator();
        let mut seen = std::collections::BTreeSet::new();
        for k in 0..8 {
            seen.insert(f9.index(&f9.pow(&g, k).unwrap()));
        }
        assert_eq!(seen.len(), 8);
        assert!(!seen.contains(&0));
    }

    #[test]
    fn f4_frobenius_swaps_outer_elements() {
        let f4 = make_field(2, 2).unwrap();
        let two = f4.from_index(2);
        let three = f4.from_index(3);
        assert_eq!(f4.frobenius(&two), three);
        assert_eq!(f4.frobenius(&three), two);
        assert_eq!(f4.frobenius_orbit(&two).unwrap(), vec![two, three]);
        assert_eq!(f4.frobenius_orbit(&f4.one()).unwrap().len(), 1);
    }

    #[test]
    fn prime_field_frobenius_is_identity() {
        let f11 = make_field(11, 1).unwrap();
        for a in f11.elements() {
            assert_eq!(f11.frobenius_orbit(&a).unwrap().len(), 1);
        }
    }

    #[test]
    fn f9_frobenius_is_involution() {
        let f9 = make_field(3, 2).unwrap();
        assert_eq!(f9.frobenius_order(), 2);
        assert!(f9.frobenius_is_automorphism());
    }

    #[test]
    fn errors() {
        assert!(matches!(make_field(9, 1), Err(Error::NotPrime { value: 9, divisor: 3 })));
        assert!(matches!(make_field(1, 1), Err(Error::Invalid(_))));
        assert!(matches!(make_field(2, 0), Err(Error::Invalid(_))));
        assert!(matches!(make_field(2, 21), Err(Error::Resource { .. })));
        let f5 = make_field(5, 1).unwrap();
        assert!(matches!(f5.inv(&f5.zero()), Err(Error::DivisionByZero)));
        let f4 = make_field(2, 2).unwrap();
        assert!(matches!(f5.add(&f5.one(), &f4.one()), Err(Error::Domain(_))));
        let bad = FieldElement { coeffs: vec![7] };
        assert!(matches!(f5.mul(&bad, &f5.one()), Err(Error::Domain(_))));
    }

    #[test]
    fn apply_dispatch() {
        let f7 = make_field(7, 1).unwrap();
        let a = f7.from_int(3);
        let r = f7.apply(FieldOp::Pow, &a, &Operand::Exponent(-1)).unwrap();
        assert_eq!(r, f7.from_int(5));
        let r = f7.apply(FieldOp::Mul, &a, &Operand::Element(f7.one())).unwrap();
        assert_eq!(r, a);
        assert!(f7.apply(FieldOp::Add, &a, &Operand::Exponent(2)).is_err());
    }

    #[test]
    fn moduli_are_irreducible() {
        for (p, f) in [(2, 3), (2, 4), (2, 8), (3, 3), (5, 2), (7, 2)] {
            let spec = make_field(p, f).unwrap();
            assert_eq!(spec.modulus().len(), f as usize + 1);
            assert!(is_irreducible(spec.modulus(), p));
        }
    }
}
