//! Matrix groups over finite fields: order formulas for the Lie-type
//! families, explicit projective actions, and the small simple-group census.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::finite_field::{FieldElement, FieldSpec};
use crate::group_zoo::{construct_named, Family};
use crate::limits::Limits;
use crate::numtheory::{self, pow_big};
use crate::perm_group::{PermGroup, Permutation};
use crate::sporadic_data::sporadic_table;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixGF {
    n: usize,
    spec: FieldSpec,
    entries: Vec<FieldElement>,
}

impl MatrixGF {
    pub fn new(spec: &FieldSpec, n: usize, entries: Vec<FieldElement>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::Invalid(format!("{n}x{n} matrix needs {} entries", n * n)));
        }
        if let Some(bad) = entries.iter().find(|e| !spec.contains(e)) {
            return Err(Error::Domain(format!("entry {bad:?} is not in F_{}", spec.q())));
        }
        Ok(MatrixGF { n, spec: spec.clone(), entries })
    }

    pub fn from_ints(spec: &FieldSpec, n: usize, entries: &[i64]) -> Result<Self> {
        Self::new(spec, n, entries.iter().map(|&x| spec.from_int(x)).collect())
    }

    pub fn identity(spec: &FieldSpec, n: usize) -> Self {
        let entries = (0..n * n).map(|k| if k / n == k % n { spec.one() } else { spec.zero() }).collect();
        MatrixGF { n, spec: spec.clone(), entries }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElement {
        &self.entries[i * self.n + j]
    }

    pub fn mul(&self, o: &MatrixGF) -> Result<MatrixGF> {
        if self.n != o.n || self.spec != o.spec {
            return Err(Error::Domain("matrix dimension or field mismatch".into()));
        }
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = self.spec.zero();
                for k in 0..n {
                    acc = self.spec.add(&acc, &self.spec.mul(self.get(i, k), o.get(k, j))?)?;
                }
                entries.push(acc);
            }
        }
        Ok(MatrixGF { n, spec: self.spec.clone(), entries })
    }

    pub fn transpose(&self) -> MatrixGF {
        let n = self.n;
        let entries = (0..n * n).map(|k| self.get(k % n, k / n).clone()).collect();
        MatrixGF { n, spec: self.spec.clone(), entries }
    }

    /// Determinant by Gaussian elimination.
    pub fn det(&self) -> FieldElement {
        let f = &self.spec;
        let n = self.n;
        let mut m: Vec<Vec<FieldElement>> = (0..n).map(|i| (0..n).map(|j| self.get(i, j).clone()).collect()).collect();
        let mut det = f.one();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !f.is_zero(&m[r][col])) else {
                return f.zero();
            };
            if piv != col {
                m.swap(piv, col);
                det = f.neg(&det).unwrap();
            }
            let pv = m[col][col].clone();
            det = f.mul(&det, &pv).unwrap();
            let inv = f.inv(&pv).unwrap();
            for r in col + 1..n {
                let factor = f.mul(&m[r][col], &inv).unwrap();
                if f.is_zero(&factor) {
                    continue;
                }
                for c in col..n {
                    let t = f.mul(&factor, &m[col][c]).unwrap();
                    m[r][c] = f.sub(&m[r][c], &t).unwrap();
                }
            }
        }
        det
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LieFamily {
    GL,
    SL,
    PSL,
    PSp,
    POmegaOdd,
    POmegaEvenPlus,
    POmegaEvenMinus,
    PSU,
    G2,
    F4,
    E6,
    E7,
    E8,
    TwistedA,
    TwistedD,
    Triality,
    TwistedE6,
    Suzuki,
    ReeG2,
    ReeF4,
}

const FAMILY_NAMES: &[(LieFamily, &str)] = &[
    (LieFamily::GL, "GL"),
    (LieFamily::SL, "SL"),
    (LieFamily::PSL, "PSL"),
    (LieFamily::PSp, "PSp"),
    (LieFamily::POmegaOdd, "POmega_odd"),
    (LieFamily::POmegaEvenPlus, "POmega_even_plus"),
    (LieFamily::POmegaEvenMinus, "POmega_even_minus"),
    (LieFamily::PSU, "PSU"),
    (LieFamily::G2, "G2"),
    (LieFamily::F4, "F4"),
    (LieFamily::E6, "E6"),
    (LieFamily::E7, "E7"),
    (LieFamily::E8, "E8"),
    (LieFamily::TwistedA, "2An"),
    (LieFamily::TwistedD, "2Dn"),
    (LieFamily::Triality, "3D4"),
    (LieFamily::TwistedE6, "2E6"),
    (LieFamily::Suzuki, "2B2"),
    (LieFamily::ReeG2, "2G2"),
    (LieFamily::ReeF4, "2F4"),
];

impl LieFamily {
    pub fn all() -> impl Iterator<Item = LieFamily> {
        FAMILY_NAMES.iter().map(|&(f, _)| f)
    }

    pub fn name(self) -> &'static str {
        FAMILY_NAMES.iter().find(|(f, _)| *f == self).unwrap().1
    }

    /// Families indexed by a rank or dimension as well as `q`.
    pub fn has_rank(self) -> bool {
        use LieFamily::*;
        matches!(self, GL | SL | PSL | PSp | POmegaOdd | POmegaEvenPlus | POmegaEvenMinus | PSU | TwistedA | TwistedD)
    }
}

impl fmt::Display for LieFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LieFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        FAMILY_NAMES.iter().find(|(_, n)| n.eq_ignore_ascii_case(s.trim())).map(|&(f, _)| f).ok_or_else(|| {
            let names: Vec<&str> = FAMILY_NAMES.iter().map(|x| x.1).collect();
            Error::Invalid(format!("unknown family {s:?}; expected one of {}", names.join(", ")))
        })
    }
}

/// `n` is the matrix dimension for GL/SL/PSL/PSU, the half-dimension for
/// PSp (`Sp_n ⊂ SL_2n`), and the Witt index `l` for the orthogonal families
/// (dimension `2l+1` or `2l`). For PSU, `q` is the field size `Q = q0²`;
/// for the twisted families it is the base `q` of the order tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamilyOrderQuery {
    pub family: LieFamily,
    pub n: u32,
    pub q: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrderReport {
    pub family: String,
    pub n: Option<u32>,
    pub q: u64,
    #[serde(serialize_with = "crate::serde_util::big_as_string")]
    pub order: BigUint,
    /// Order of the center divided out, when the family is projective.
    pub center: u64,
    pub simple: bool,
    /// Order with the conventional center when it differs from `order`.
    #[serde(serialize_with = "crate::serde_util::opt_big_as_string")]
    pub standard_order: Option<BigUint>,
    pub exceptions: Vec<String>,
}

fn big(q: u64) -> BigUint {
    BigUint::from(q)
}

/// `q^e - s` for `s = ±1`.
fn qe_minus(q: u64, e: u32, s: i32) -> BigUint {
    let v = pow_big(q, e);
    if s > 0 {
        v - 1u32
    } else {
        v + 1u32
    }
}

fn prod_even(q: u64, upto: u32) -> BigUint {
    (1..=upto).map(|i| qe_minus(q, 2 * i, 1)).product()
}

fn pow_mod(q: u64, e: u32, m: u64) -> u64 {
    (0..e).fold(1u64, |acc, _| acc * (q % m) % m)
}

fn gl_order(n: u32, q: u64) -> BigUint {
    let qn = pow_big(q, n);
    (0..n).map(|i| &qn - pow_big(q, i)).product()
}

fn psl_simple(n: u32, q: u64) -> bool {
    n >= 2 && !(n == 2 && (q == 2 || q == 3))
}

fn sqrt_prime_power(q: u64) -> Option<u64> {
    let (p, f) = numtheory::prime_power(q)?;
    (f % 2 == 0).then(|| p.pow(f / 2))
}

fn psu_order(n: u32, q0: u64) -> (BigUint, u64) {
    let mut o = pow_big(q0, n * (n - 1) / 2);
    for i in 2..=n {
        o *= qe_minus(q0, i, if i % 2 == 0 { 1 } else { -1 });
    }
    let c = numtheory::gcd(n as u64, q0 + 1);
    (o / c, c)
}

pub fn order_formula(query: FamilyOrderQuery) -> Result<OrderReport> {
    use LieFamily::*;
    let FamilyOrderQuery { family, n, q } = query;
    let (p, f) = numtheory::prime_power(q).ok_or_else(|| Error::Invalid(format!("q = {q} is not a prime power")))?;
    let mut exceptions = Vec::new();
    let mut standard_order = None;
    let need_rank = |min: u32| -> Result<()> {
        if n < min {
            Err(Error::Invalid(format!("{family} needs rank parameter >= {min}, got {n}")))
        } else {
            Ok(())
        }
    };
    let odd_char = || -> Result<()> {
        if p == 2 {
            Err(Error::Unsupported(format!(
                "{family} in characteristic 2 is not covered; its orders coincide with other families"
            )))
        } else {
            Ok(())
        }
    };
    let (order, center, simple) = match family {
        GL => {
            need_rank(1)?;
            let o = gl_order(n, q);
            let simple = if n == 1 { numtheory::is_prime(q - 1) } else { q == 2 && psl_simple(n, q) };
            (o, 1, simple)
        }
        SL => {
            need_rank(1)?;
            let o = gl_order(n, q) / big(q - 1);
            (o, 1, numtheory::gcd(n as u64, q - 1) == 1 && psl_simple(n, q))
        }
        PSL => {
            need_rank(1)?;
            let c = numtheory::gcd(n as u64, q - 1);
            let o = gl_order(n, q) / big(q - 1) / big(c);
            let simple = psl_simple(n, q);
            if n == 2 && (q == 2 || q == 3) {
                exceptions
                    .push(format!("PSL_2({q}) is not simple (isomorphic to {})", if q == 2 { "S_3" } else { "A_4" }));
            }
            (o, c, simple)
        }
        PSp => {
            need_rank(1)?;
            let full = pow_big(q, n * n) * prod_even(q, n);
            let c = numtheory::gcd(n as u64, q - 1);
            let std_c = numtheory::gcd(2, q - 1);
            if c != std_c {
                standard_order = Some(&full / big(std_c));
                exceptions.push(format!(
                    "center divisor gcd(n, q-1) = {c} differs from the conventional gcd(2, q-1) = {std_c}"
                ));
            }
            let simple = !matches!((n, q), (1, 2) | (1, 3) | (2, 2));
            match (n, q) {
                (1, 2) => exceptions.push("PSp_1(2) = SL_2(2) is not simple (isomorphic to S_3)".into()),
                (1, 3) => exceptions.push("PSp_1(3) is not simple (PSL_2(3) is A_4)".into()),
                (2, 2) => {
                    exceptions.push("Sp_2(2) is isomorphic to S_6, not simple; its index-2 subgroup A_6 is".into())
                }
                _ => {}
            }
            (full / big(c), c, simple)
        }
        POmegaOdd => {
            need_rank(1)?;
            odd_char()?;
            let o = pow_big(q, n * n) * prod_even(q, n);
            if n == 1 && q == 3 {
                exceptions.push("POmega_3(3) is PSL_2(3), not simple".into());
            }
            (o / 2u32, 2, !(n == 1 && q == 3))
        }
        POmegaEvenPlus | POmegaEvenMinus => {
            need_rank(1)?;
            odd_char()?;
            let plus = family == POmegaEvenPlus;
            let tail = qe_minus(q, n, if plus { 1 } else { -1 });
            let o = pow_big(q, n * (n - 1)) * prod_even(q, n - 1) * tail;
            let ql = pow_mod(q, n, 4);
            let c = if plus { numtheory::gcd(4, (ql + 3) % 4) } else { numtheory::gcd(4, (ql + 1) % 4) };
            let c = if c == 0 { 4 } else { c };
            let simple = if plus { n >= 3 } else { n >= 2 };
            if !simple {
                exceptions.push(format!(
                    "{} in dimension {} is not simple",
                    if plus { "POmega+" } else { "POmega-" },
                    2 * n
                ));
            }
            (o / big(c), c, simple)
        }
        PSU => {
            need_rank(2)?;
            let q0 = sqrt_prime_power(q).ok_or_else(|| {
                Error::Invalid(format!("PSU takes the field size Q = q^2; {q} is not an even power of a prime"))
            })?;
            let (o, c) = psu_order(n, q0);
            let simple = !matches!((n, q), (2, 4) | (2, 9) | (3, 4));
            if !simple {
                exceptions.push(format!("PSU_{n}({q}) is one of the three non-simple cases"));
            }
            (o, c, simple)
        }
        G2 => {
            let o = pow_big(q, 6) * qe_minus(q, 6, 1) * qe_minus(q, 2, 1);
            if q == 2 {
                exceptions.push("G2(2) is not simple: it has a normal subgroup PSU_3(9) of index 2".into());
            }
            (o, 1, q != 2)
        }
        F4 => {
            let o = pow_big(q, 24) * [12, 8, 6, 2].iter().map(|&e| qe_minus(q, e, 1)).product::<BigUint>();
            (o, 1, true)
        }
        E6 => {
            let o = pow_big(q, 36) * [12, 9, 8, 6, 5, 2].iter().map(|&e| qe_minus(q, e, 1)).product::<BigUint>();
            let c = numtheory::gcd(3, q - 1);
            (o / big(c), c, true)
        }
        E7 => {
            let o = pow_big(q, 63) * [18, 14, 12, 10, 8, 6, 2].iter().map(|&e| qe_minus(q, e, 1)).product::<BigUint>();
            let c = numtheory::gcd(2, q - 1);
            (o / big(c), c, true)
        }
        E8 => {
            let o = pow_big(q, 120)
                * [30, 24, 20, 18, 14, 12, 8, 2].iter().map(|&e| qe_minus(q, e, 1)).product::<BigUint>();
            (o, 1, true)
        }
        TwistedA => {
            need_rank(2)?;
            let (o, c) = psu_order(n + 1, q);
            let simple = !(n == 2 && q == 2);
            if !simple {
                exceptions.push("2A2(2) = PSU_3(4) is not simple".into());
            }
            (o, c, simple)
        }
        TwistedD => {
            need_rank(4)?;
            let o = pow_big(q, n * (n - 1)) * qe_minus(q, n, -1) * prod_even(q, n - 1);
            let c = numtheory::gcd(4, (pow_mod(q, n, 4) + 1) % 4);
            let c = if c == 0 { 4 } else { c };
            (o / big(c), c, true)
        }
        Triality => {
            let o = pow_big(q, 12) * (pow_big(q, 8) + pow_big(q, 4) + 1u32) * qe_minus(q, 6, 1) * qe_minus(q, 2, 1);
            (o, 1, true)
        }
        TwistedE6 => {
            let o = pow_big(q, 36)
                * qe_minus(q, 12, 1)
                * qe_minus(q, 9, -1)
                * qe_minus(q, 8, 1)
                * qe_minus(q, 6, 1)
                * qe_minus(q, 5, -1)
                * qe_minus(q, 2, 1);
            let c = numtheory::gcd(3, q + 1);
            (o / big(c), c, true)
        }
        Suzuki | ReeG2 | ReeF4 => {
            let want = if family == ReeG2 { 3 } else { 2 };
            if p != want || f % 2 == 0 {
                return Err(Error::Invalid(format!("{family} requires q = {want}^(2m+1), got q = {q}")));
            }
            let qb = big(q);
            let o = match family {
                Suzuki => pow_big(q, 2) * (pow_big(q, 2) + 1u32) * (&qb - 1u32),
                ReeG2 => pow_big(q, 3) * (pow_big(q, 3) + 1u32) * (&qb - 1u32),
                _ => {
                    pow_big(q, 12) * (pow_big(q, 6) + 1u32) * qe_minus(q, 4, 1) * (pow_big(q, 3) + 1u32) * (&qb - 1u32)
                }
            };
            let smallest = q == want;
            if smallest {
                exceptions.push(match family {
                    Suzuki => "2B2(2) has order 20 and is solvable".to_string(),
                    ReeG2 => "2G2(3) is not simple (its derived group is PSL_2(8))".to_string(),
                    _ => "2F4(2) is not simple (its derived group, the Tits group, has index 2)".to_string(),
                });
            }
            (o, 1, !smallest)
        }
    };
    Ok(OrderReport {
        family: family.name().to_string(),
        n: family.has_rank().then_some(n),
        q,
        order,
        center,
        simple,
        standard_order,
        exceptions,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProjectiveVariant {
    PGL,
    PSL,
}

impl FromStr for ProjectiveVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "PGL" => Ok(ProjectiveVariant::PGL),
            "PSL" => Ok(ProjectiveVariant::PSL),
            _ => Err(Error::Invalid(format!("projective variant must be PGL or PSL, got {s:?}"))),
        }
    }
}

/// Points of `P^(n-1)(F_q)`, normalized so the first nonzero coordinate is 1,
/// in lexicographic order of their coordinate indices.
fn projective_points(n: usize, q: usize) -> Vec<Vec<u32>> {
    let total = q.pow(n as u32);
    let mut out = Vec::new();
    for code in 1..total {
        let mut v = vec![0u32; n];
        let mut c = code;
        for k in (0..n).rev() {
            v[k] = (c % q) as u32;
            c /= q;
        }
        if v.iter().find(|&&x| x != 0) == Some(&1) {
            out.push(v);
        }
    }
    out
}

/// `PGL_n(q)` or `PSL_n(q)` acting on the projective points. Generated by
/// elementary transvections `I + b·E_ij` with `b` running over an additive
/// basis of `F_q` (these generate `SL_n`), plus `diag(g, 1, …)` for a
/// primitive `g` in the PGL case. The result is checked against the order
/// formula.
pub fn projective_action(variant: ProjectiveVariant, n: usize, spec: &FieldSpec) -> Result<PermGroup> {
    projective_action_with(variant, n, spec, &Limits::default())
}

pub fn projective_action_with(
    variant: ProjectiveVariant,
    n: usize,
    spec: &FieldSpec,
    limits: &Limits,
) -> Result<PermGroup> {
    if n < 2 {
        return Err(Error::Invalid("projective action needs n >= 2".into()));
    }
    let q = spec.q();
    let count = (pow_big(q, n as u32) - 1u32) / big(q - 1);
    if count > big(limits.projective_points) {
        return Err(Error::resource("projective point count", count, limits.projective_points));
    }
    let t = spec.tables();
    let qs = q as usize;
    let points = projective_points(n, qs);
    let encode = |v: &[u32]| v.iter().fold(0usize, |acc, &x| acc * qs + x as usize);
    let mut lookup = vec![u32::MAX; qs.pow(n as u32)];
    for (i, v) in points.iter().enumerate() {
        lookup[encode(v)] = i as u32;
    }
    let act = |m: &[Vec<u32>]| -> Permutation {
        let images = points
            .iter()
            .map(|v| {
                let mut w: Vec<u32> =
                    (0..n).map(|j| (0..n).fold(0u32, |acc, i| t.add(acc, t.mul(v[i], m[i][j])))).collect();
                let lead = *w.iter().find(|&&x| x != 0).expect("invertible matrix");
                let inv = t.inv(lead);
                for x in w.iter_mut() {
                    *x = t.mul(*x, inv);
                }
                lookup[encode(&w)]
            })
            .collect();
        Permutation::from_images_unchecked(images)
    };
    let identity: Vec<Vec<u32>> = (0..n).map(|i| (0..n).map(|j| u32::from(i == j)).collect()).collect();
    let mut gens = Vec::new();
    let p = spec.p() as u32;
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            for k in 0..spec.f() {
                let mut m = identity.clone();
                m[i][j] = p.pow(k);
                gens.push(act(&m));
            }
        }
    }
    if variant == ProjectiveVariant::PGL {
        let mut m = identity.clone();
        m[0][0] = spec.index(&spec.multiplicative_generator()) as u32;
        gens.push(act(&m));
    }
    let g = PermGroup::new(points.len(), gens)?.with_limits(*limits);
    let expected = match variant {
        ProjectiveVariant::PGL => gl_order(n as u32, q) / big(q - 1),
        ProjectiveVariant::PSL => order_formula(FamilyOrderQuery { family: LieFamily::PSL, n: n as u32, q })?.order,
    };
    if g.order() != expected {
        return Err(Error::Defect(format!("projective action has order {}, formula gives {expected}", g.order())));
    }
    Ok(g)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusEntry {
    #[serde(serialize_with = "crate::serde_util::big_as_string")]
    pub order: BigUint,
    pub names: Vec<String>,
    pub is_sporadic: bool,
    pub is_abelian: bool,
}

/// Labels that form their own isomorphism class at an order shared with other
/// census members. Every other coincidence of orders below the census bound is
/// an isomorphism.
const NON_ISOMORPHIC: &[(u64, &[&str])] = &[(20160, &["PSL_3(4)"])];

/// Abelian simple groups are listed only for primes below this.
pub const CENSUS_ABELIAN_BELOW: u64 = 10;

pub const CENSUS_MAX_BOUND: u64 = 10_000_000;

fn prime_powers_from(min: u64) -> impl Iterator<Item = u64> {
    (min..).filter(|&q| numtheory::prime_power(q).is_some())
}

/// Nonabelian simple groups of Lie type and alternating groups up to `bound`,
/// merged with sporadic orders; grouped by isomorphism class.
pub fn simple_census(bound: u64) -> Result<Vec<CensusEntry>> {
    if bound > CENSUS_MAX_BOUND {
        return Err(Error::resource("census bound", bound, CENSUS_MAX_BOUND));
    }
    let b = big(bound);
    let mut found: Vec<(BigUint, String, bool)> = Vec::new();

    let mut n = 5u64;
    let mut fact = BigUint::from(60u32);
    while fact <= b {
        found.push((fact.clone(), format!("Alt_{n}"), false));
        n += 1;
        fact *= n;
    }

    // Classical families: scan q upward for each rank until the smallest q overflows.
    type Scan = (LieFamily, u32, fn(u32, u64) -> Vec<String>);
    let scans: [Scan; 5] = [
        (LieFamily::PSL, 2, |n, q| {
            let mut v = vec![format!("PSL_{n}({q})")];
            if numtheory::gcd(n as u64, q - 1) == 1 {
                v.push(format!("SL_{n}({q})"));
            }
            if q == 2 {
                v.push(format!("GL_{n}(2)"));
            }
            v
        }),
        (LieFamily::PSp, 2, |n, q| vec![format!("PSp_{n}({q})")]),
        (LieFamily::PSU, 3, |n, q| vec![format!("PSU_{n}({q})")]),
        (LieFamily::POmegaOdd, 3, |l, q| vec![format!("POmega_{}({q})", 2 * l + 1)]),
        (LieFamily::POmegaEvenPlus, 4, |l, q| vec![format!("POmega+_{}({q})", 2 * l)]),
    ];
    for (family, min_rank, label) in scans {
        let mut rank = min_rank;
        loop {
            let mut any = false;
            for q in prime_powers_from(2) {
                let q_arg = if family == LieFamily::PSU { q * q } else { q };
                let rep = match order_formula(FamilyOrderQuery { family, n: rank, q: q_arg }) {
                    Ok(r) => r,
                    Err(Error::Unsupported(_)) => continue,
                    Err(e) => return Err(e),
                };
                let order = rep.standard_order.clone().unwrap_or(rep.order.clone());
                if order > b {
                    break;
                }
                any = true;
                if rep.simple {
                    for name in label(rank, q_arg) {
                        found.push((order.clone(), name, false));
                    }
                }
            }
            // Non-simple small cases (e.g. PSU_3(4)) still count as "any" so the rank loop continues.
            let smallest = order_formula(FamilyOrderQuery {
                family,
                n: rank,
                q: if family == LieFamily::PSU {
                    4
                } else if matches!(family, LieFamily::POmegaOdd | LieFamily::POmegaEvenPlus) {
                    3
                } else {
                    2
                },
            })?;
            if !any && smallest.standard_order.unwrap_or(smallest.order) > b {
                break;
            }
            rank += 1;
        }
    }
    scan_minus_type(&b, &mut found)?;

    // Uniparametric families.
    let uni: [(LieFamily, &str, u64); 10] = [
        (LieFamily::G2, "G2", 3),
        (LieFamily::F4, "F4", 2),
        (LieFamily::E6, "E6", 2),
        (LieFamily::E7, "E7", 2),
        (LieFamily::E8, "E8", 2),
        (LieFamily::Triality, "3D4", 2),
        (LieFamily::TwistedE6, "2E6", 2),
        (LieFamily::Suzuki, "2B2", 8),
        (LieFamily::ReeG2, "2G2", 27),
        (LieFamily::ReeF4, "2F4", 8),
    ];
    for (family, label, qmin) in uni {
        for q in prime_powers_from(qmin) {
            let rep = match order_formula(FamilyOrderQuery { family, n: 0, q }) {
                Ok(r) => r,
                Err(Error::Invalid(_)) => continue,
                Err(e) => return Err(e),
            };
            if rep.order > b {
                break;
            }
            if rep.simple {
                found.push((rep.order, format!("{label}({q})"), false));
            }
        }
    }
    for e in sporadic_table() {
        if e.order <= b {
            found.push((e.order, e.symbol.to_string(), true));
        }
    }

    // Group by order, then split off the documented non-isomorphic labels.
    let mut by_key: BTreeMap<(BigUint, usize), (Vec<String>, bool)> = BTreeMap::new();
    for (order, name, sporadic) in found {
        let class = NON_ISOMORPHIC
            .iter()
            .find(|(o, names)| big(*o) == order && names.contains(&name.as_str()))
            .map_or(0, |_| 1);
        let slot = by_key.entry((order, class)).or_insert((Vec::new(), sporadic));
        if !slot.0.contains(&name) {
            slot.0.push(name);
        }
        slot.1 |= sporadic;
    }
    let mut out: Vec<CensusEntry> = numtheory::primes_up_to(CENSUS_ABELIAN_BELOW.min(bound + 1) - 1)
        .into_iter()
        .filter(|&p| p <= bound)
        .map(|p| CensusEntry { order: big(p), names: vec![format!("Z_{p}")], is_sporadic: false, is_abelian: true })
        .collect();
    for ((order, _), (names, is_sporadic)) in by_key {
        out.push(CensusEntry { order, names, is_sporadic, is_abelian: false });
    }
    out.sort_by(|a, b| (&a.order, a.is_abelian as u8 ^ 1, &a.names).cmp(&(&b.order, b.is_abelian as u8 ^ 1, &b.names)));
    Ok(out)
}

fn scan_minus_type(b: &BigUint, found: &mut Vec<(BigUint, String, bool)>) -> Result<()> {
    let mut l = 4u32;
    loop {
        let mut any = false;
        for q in prime_powers_from(3).filter(|q| q % 2 == 1) {
            let rep = order_formula(FamilyOrderQuery { family: LieFamily::POmegaEvenMinus, n: l, q })?;
            if &rep.order > b {
                break;
            }
            any = true;
            found.push((rep.order, format!("POmega-_{}({q})", 2 * l), false));
        }
        if !any {
            return Ok(());
        }
        l += 1;
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentificationCheck {
    pub claim: String,
    pub expected_isomorphic: bool,
    pub orders: Vec<u64>,
    pub class_counts: Vec<usize>,
    pub histograms_equal: bool,
    pub passed: bool,
}

fn field(q: u64) -> Result<FieldSpec> {
    let (p, f) = numtheory::prime_power(q).ok_or_else(|| Error::Invalid(format!("{q} is not a prime power")))?;
    FieldSpec::new(p, f)
}

fn psl(n: usize, q: u64) -> Result<PermGroup> {
    projective_action(ProjectiveVariant::PSL, n, &field(q)?)
}

fn compare(claim: &str, expected_isomorphic: bool, groups: &[PermGroup]) -> Result<IdentificationCheck> {
    let orders: Vec<u64> = groups.iter().map(|g| g.order_u64().unwrap()).collect();
    let class_counts =
        groups.iter().map(|g| g.conjugacy_classes().map(|c| c.num_classes)).collect::<Result<Vec<_>>>()?;
    let hists = groups.iter().map(PermGroup::element_order_histogram).collect::<Result<Vec<_>>>()?;
    let same_order = orders.windows(2).all(|w| w[0] == w[1]);
    let histograms_equal = hists.windows(2).all(|w| w[0] == w[1]);
    let same_classes = class_counts.windows(2).all(|w| w[0] == w[1]);
    let passed = if expected_isomorphic {
        same_order && same_classes && histograms_equal
    } else {
        same_order && !histograms_equal
    };
    Ok(IdentificationCheck {
        claim: claim.to_string(),
        expected_isomorphic,
        orders,
        class_counts,
        histograms_equal,
        passed,
    })
}

/// Invariant comparison for the stated isomorphisms among small groups, and
/// for the one stated non-isomorphism at order 20160.
pub fn verify_claimed_identifications() -> Result<Vec<IdentificationCheck>> {
    let alt = |n| construct_named(Family::Alternating(n));
    Ok(vec![
        compare("PSL_2(2) = GL_2(2) = S_3", true, &[psl(2, 2)?, construct_named(Family::Symmetric(3))?])?,
        compare("PSL_2(4) = PSL_2(5) = Alt_5", true, &[psl(2, 4)?, psl(2, 5)?, alt(5)?])?,
        compare("PSL_2(7) = GL_3(2)", true, &[psl(2, 7)?, psl(3, 2)?])?,
        compare("PSL_2(9) = Alt_6", true, &[psl(2, 9)?, alt(6)?])?,
        compare("GL_4(2) = Alt_8", true, &[psl(4, 2)?, alt(8)?])?,
        compare("Alt_8 != PSL_3(4)", false, &[alt(8)?, psl(3, 4)?])?,
    ])
}

/// Counts of `2×2` matrices over `F_q` preserving the standard symplectic form,
/// and of those with determinant 1.
pub fn symplectic_2x2_census(spec: &FieldSpec) -> Result<(u64, u64)> {
    let j = MatrixGF::from_ints(spec, 2, &[0, 1, -1, 0])?;
    let mut preserving = 0;
    let mut unimodular = 0;
    let elems: Vec<FieldElement> = spec.elements().collect();
    for a in &elems {
        for b in &elems {
            for c in &elems {
                for d in &elems {
                    let m = MatrixGF::new(spec, 2, vec![a.clone(), b.clone(), c.clone(), d.clone()])?;
                    if m.mul(&j)?.mul(&m.transpose())? == j {
                        preserving += 1;
                        if m.det() == spec.one() {
                            unimodular += 1;
                        }
                    }
                }
            }
        }
    }
    Ok((preserving, unimodular))
}

/// `|PGL_2(q)| = (q+1) q (q-1)`.
pub fn pgl2_order(q: u64) -> BigUint {
    big(q + 1) * big(q) * big(q - 1)
}

/// Distinct prime divisors of a census order.
pub fn prime_divisors(n: &BigUint) -> Vec<u64> {
    let mut rest = n.clone();
    let mut out = Vec::new();
    let mut p = 2u64;
    while rest > BigUint::one() {
        if (&rest % p).to_u64() == Some(0) {
            out.push(p);
            while (&rest % p).to_u64() == Some(0) {
                rest /= p;
            }
        }
        p += 1;
        if big(p) * big(p) > rest && rest > BigUint::one() {
            out.push(rest.to_u64().expect("cofactor fits"));
            break;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm_group::Transitivity;
    use num_integer::Integer;

    fn ord(family: LieFamily, n: u32, q: u64) -> BigUint {
        order_formula(FamilyOrderQuery { family, n, q }).unwrap().order
    }

    #[test]
    fn stated_orders() {
        use LieFamily::*;
        assert_eq!(ord(GL, 3, 2), big(168));
        assert_eq!(ord(GL, 4, 2), big(20160));
        assert_eq!(ord(PSL, 3, 4), big(20160));
        assert_eq!(ord(GL, 4, 3), big(24261120));
        assert_eq!(ord(SL, 4, 3), big(12130560));
        assert_eq!(ord(PSL, 4, 3), big(6065280));
        assert_eq!(ord(SL, 3, 3), big(5616));
        assert_eq!(ord(G2, 0, 2), big(12096));
        assert_eq!(ord(PSL, 2, 9), big(360));
        assert_eq!(ord(SL, 2, 8), big(504));
        assert_eq!(ord(PSL, 2, 11), big(660));
    }

    #[test]
    fn other_families() {
        use LieFamily::*;
        assert_eq!(ord(PSU, 3, 9), big(6048));
        assert_eq!(ord(TwistedA, 2, 3), big(6048));
        assert_eq!(ord(PSU, 4, 4), big(25920));
        assert_eq!(ord(Suzuki, 0, 8), big(29120));
        assert_eq!(ord(ReeG2, 0, 27), big(10073444472u64));
        assert_eq!(ord(Triality, 0, 2), big(211341312));
        assert_eq!(ord(POmegaOdd, 1, 5), big(60));
        assert_eq!(ord(POmegaOdd, 2, 3), big(25920));
        assert_eq!(ord(POmegaEvenPlus, 4, 3), big(4952179814400));
        assert_eq!(ord(POmegaEvenMinus, 4, 3), big(10151968619520));
        assert_eq!(ord(TwistedD, 4, 3), big(10151968619520));
        assert_eq!(ord(G2, 0, 3), big(4245696));
        assert_eq!(ord(E6, 0, 2).to_string(), "214841575522005575270400");
    }

    #[test]
    fn psp_center_note() {
        let r = order_formula(FamilyOrderQuery { family: LieFamily::PSp, n: 2, q: 3 }).unwrap();
        assert_eq!(r.order, big(25920));
        assert!(r.standard_order.is_none());
        let r = order_formula(FamilyOrderQuery { family: LieFamily::PSp, n: 3, q: 3 }).unwrap();
        assert_eq!(r.standard_order, Some(big(4585351680)));
        assert_eq!(r.order, big(9170703360));
        assert!(!order_formula(FamilyOrderQuery { family: LieFamily::PSp, n: 2, q: 2 }).unwrap().simple);
    }

    #[test]
    fn validation() {
        let e = order_formula(FamilyOrderQuery { family: LieFamily::ReeG2, n: 0, q: 8 }).unwrap_err();
        assert!(e.to_string().contains("3^(2m+1)"), "{e}");
        assert!(order_formula(FamilyOrderQuery { family: LieFamily::Suzuki, n: 0, q: 4 }).is_err());
        assert!(order_formula(FamilyOrderQuery { family: LieFamily::PSL, n: 2, q: 6 }).is_err());
        assert!(order_formula(FamilyOrderQuery { family: LieFamily::PSU, n: 3, q: 3 }).is_err());
        assert!(matches!(
            order_formula(FamilyOrderQuery { family: LieFamily::POmegaOdd, n: 3, q: 4 }),
            Err(Error::Unsupported(_))
        ));
        let r = order_formula(FamilyOrderQuery { family: LieFamily::PSL, n: 2, q: 3 }).unwrap();
        assert!(!r.simple && !r.exceptions.is_empty());
        for (n, q) in [(2, 4), (2, 9), (3, 4)] {
            assert!(!order_formula(FamilyOrderQuery { family: LieFamily::PSU, n, q }).unwrap().simple);
        }
    }

    #[test]
    fn family_names_roundtrip() {
        for f in LieFamily::all() {
            assert_eq!(f.name().parse::<LieFamily>().unwrap(), f);
        }
    }

    #[test]
    fn projective_examples() {
        let g = psl(2, 5).unwrap();
        assert_eq!((g.order_u64(), g.degree()), (Some(60), 6));
        assert!(g.is_simple().unwrap());
        let pgl9 = projective_action(ProjectiveVariant::PGL, 2, &field(9).unwrap()).unwrap();
        assert_eq!((pgl9.order_u64(), pgl9.degree()), (Some(720), 10));
        assert_eq!(pgl9.transitivity_degree(), Transitivity { k: 3, sharp: true });
        let s3 = psl(2, 2).unwrap();
        assert_eq!(s3.conjugacy_classes().unwrap().class_sizes, vec![1, 3, 2]);
        let g = psl(3, 4).unwrap();
        assert_eq!((g.order_u64(), g.degree()), (Some(20160), 21));
    }

    #[test]
    fn pgl2_orders() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13] {
            let g = projective_action(ProjectiveVariant::PGL, 2, &field(q).unwrap()).unwrap();
            assert_eq!(g.order(), pgl2_order(q));
            assert!(pgl2_order(q).is_multiple_of(&BigUint::from(6u32)));
            if q % 2 == 1 {
                assert!(pgl2_order(q).is_multiple_of(&BigUint::from(24u32)));
            }
        }
    }

    #[test]
    fn projective_bound() {
        let limits = Limits { projective_points: 10, ..Limits::default() };
        let e = projective_action_with(ProjectiveVariant::PSL, 2, &field(11).unwrap(), &limits).unwrap_err();
        assert!(matches!(e, Error::Resource { .. }));
    }

    #[test]
    fn census_small_bounds() {
        let c = simple_census(100).unwrap();
        let nonab: Vec<_> = c.iter().filter(|e| !e.is_abelian).collect();
        assert_eq!(nonab.len(), 1);
        assert_eq!(nonab[0].order, big(60));
        let names: Vec<&str> = nonab[0].names.iter().map(String::as_str).collect();
        assert!(names.contains(&"Alt_5") && names.contains(&"PSL_2(5)") && names.contains(&"SL_2(4)"));
        let c = simple_census(1000).unwrap();
        let orders: Vec<BigUint> = c.iter().filter(|e| !e.is_abelian).map(|e| e.order.clone()).collect();
        assert_eq!(orders, [60u32, 168, 360, 504, 660].map(BigUint::from).to_vec());
    }

    #[test]
    fn census_splits_20160() {
        let c = simple_census(20160).unwrap();
        let at: Vec<_> = c.iter().filter(|e| e.order == big(20160)).collect();
        assert_eq!(at.len(), 2);
        assert!(at.iter().any(|e| e.names.contains(&"Alt_8".to_string()) && e.names.contains(&"GL_4(2)".to_string())));
        assert!(at.iter().any(|e| e.names == vec!["PSL_3(4)".to_string()]));
    }

    #[test]
    fn census_orders_have_three_primes() {
        for e in simple_census(1_000_000).unwrap().iter().filter(|e| !e.is_abelian) {
            let ps = prime_divisors(&e.order);
            assert!(ps.len() >= 3 && ps[0] == 2, "{:?}", e.names);
        }
    }

    #[test]
    fn symplectic_is_unimodular() {
        for q in [2u64, 3, 4, 5] {
            let (pres, uni) = symplectic_2x2_census(&field(q).unwrap()).unwrap();
            assert_eq!(pres, uni);
            assert_eq!(big(pres), ord(LieFamily::SL, 2, q));
        }
    }

    #[test]
    fn dimension_identities() {
        for n in 1i64..50 {
            assert_eq!(n * n - n * (n + 1) / 2, n * (n - 1) / 2);
            assert_eq!(n * n - n * (n - 1) / 2, n * (n + 1) / 2);
        }
    }

    #[test]
    fn determinant() {
        let f = field(7).unwrap();
        let m = MatrixGF::from_ints(&f, 3, &[1, 2, 3, 0, 1, 4, 5, 6, 0]).unwrap();
        assert_eq!(m.det(), f.from_int(1));
        let s = MatrixGF::from_ints(&f, 2, &[1, 2, 2, 4]).unwrap();
        assert_eq!(s.det(), f.zero());
        assert_eq!(MatrixGF::identity(&f, 3).mul(&m).unwrap(), m);
    }
}
