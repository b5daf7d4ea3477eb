//! The binary Golay code, its octads, the Mathieu chain `M24 > M23 > M22`
//! as code automorphisms, and the Leech lattice minimal vectors.
//!
//! Coordinates are the projective line over `F_23`: `0..=22` for the field
//! elements and 23 for the point at infinity.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::moonshine::{self, IntegerSeries};
use crate::numtheory;
use crate::perm_group::{PermGroup, Permutation, Transitivity};

pub const LENGTH: usize = 24;
pub const INFINITY: usize = 23;
const P: u64 = 23;
const FULL: u32 = (1 << LENGTH) - 1;

/// Binary linear code of length at most 32; words are bitmasks.
#[derive(Debug, Clone, Serialize)]
pub struct BinaryCode {
    length: usize,
    generators: Vec<u32>,
    #[serde(skip)]
    words: Vec<u32>,
}

impl BinaryCode {
    /// Span of `rows`; the stored generators are a reduced basis.
    pub fn from_rows(length: usize, rows: &[u32]) -> Result<Self> {
        if length > 32 || rows.iter().any(|&r| length < 32 && r >> length != 0) {
            return Err(Error::Invalid(format!("rows do not fit in length {length}")));
        }
        let mut basis: Vec<u32> = Vec::new();
        for &r in rows {
            let mut x = r;
            for &b in &basis {
                x = x.min(x ^ b);
            }
            if x != 0 {
                for b in basis.iter_mut() {
                    if *b ^ x < *b {
                        *b ^= x;
                    }
                }
                basis.push(x);
                basis.sort_unstable_by(|a, b| b.cmp(a));
            }
        }
        if basis.len() > 20 {
            return Err(Error::resource("code dimension", basis.len(), 20));
        }
        let mut words = vec![0u32];
        for &b in &basis {
            let n = words.len();
            for i in 0..n {
                words.push(words[i] ^ b);
            }
        }
        words.sort_unstable();
        Ok(BinaryCode { length, generators: basis, words })
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn dimension(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn codewords(&self) -> &[u32] {
        &self.words
    }

    pub fn contains(&self, w: u32) -> bool {
        self.words.binary_search(&w).is_ok()
    }

    pub fn weight_distribution(&self) -> BTreeMap<u32, u64> {
        let mut m = BTreeMap::new();
        for w in &self.words {
            *m.entry(w.count_ones()).or_insert(0) += 1;
        }
        m
    }

    pub fn min_weight(&self) -> u32 {
        self.words.iter().filter(|&&w| w != 0).map(|w| w.count_ones()).min().unwrap_or(0)
    }

    /// Even pairwise overlaps among generators and dimension `length/2`.
    pub fn is_self_dual(&self) -> bool {
        2 * self.dimension() == self.length
            && self.generators.iter().all(|&a| self.generators.iter().all(|&b| (a & b).count_ones() % 2 == 0))
    }

    /// Exhaustive: every codeword maps to a codeword.
    pub fn is_automorphism(&self, g: &Permutation) -> bool {
        g.degree() == self.length && self.words.iter().all(|&w| self.contains(permute_word(g, w)))
    }

    pub fn words_of_weight(&self, k: u32) -> Vec<u32> {
        self.words.iter().copied().filter(|w| w.count_ones() == k).collect()
    }
}

pub fn permute_word(g: &Permutation, w: u32) -> u32 {
    let mut out = 0;
    let mut rest = w;
    while rest != 0 {
        let i = rest.trailing_zeros() as usize;
        out |= 1 << g.image(i);
        rest &= rest - 1;
    }
    out
}

pub fn word_hex(w: u32) -> String {
    format!("{w:06x}")
}

fn residues() -> Vec<u64> {
    let mut q: Vec<u64> = (1..P).map(|x| x * x % P).collect();
    q.sort_unstable();
    q.dedup();
    q
}

fn is_residue(x: u64) -> bool {
    !x.is_multiple_of(P) && pow_mod_p(x, (P - 1) / 2) == 1
}

fn pow_mod_p(mut b: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    b %= P;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    acc
}

fn inv_mod(x: u64) -> u64 {
    pow_mod_p(x, P - 2)
}

/// Extended quadratic-residue code of length 24: spanned by the words
/// `{∞} ∪ (i + Q)` for `i ∈ F_23`, with `Q` the nonzero squares.
pub fn build_golay() -> Result<BinaryCode> {
    let q = residues();
    let rows: Vec<u32> = (0..P).map(|i| q.iter().fold(1u32 << INFINITY, |w, &x| w | 1 << ((x + i) % P))).collect();
    let code = BinaryCode::from_rows(LENGTH, &rows)?;
    let dist = code.weight_distribution();
    let expected: BTreeMap<u32, u64> = [(0, 1), (8, 759), (12, 2576), (16, 759), (24, 1)].into();
    if code.dimension() != 12 || !code.is_self_dual() || dist != expected {
        return Err(Error::Defect(format!(
            "Golay construction gave dimension {} with weights {dist:?}",
            code.dimension()
        )));
    }
    Ok(code)
}

#[derive(Debug, Clone, Serialize)]
pub struct SteinerReport {
    pub octads: usize,
    /// `759 · C(8,5) = C(24,5)`.
    pub counting_identity: bool,
    /// Every 5-subset lies in exactly one octad, checked by listing them.
    pub exhaustive: bool,
    pub octads_per_point: Vec<usize>,
    pub octads_per_pair_min: usize,
    pub octads_per_pair_max: usize,
    pub passed: bool,
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn subsets_of(mask: u32, k: u32, out: &mut Vec<u32>) {
    fn go(rest: u32, k: u32, acc: u32, out: &mut Vec<u32>) {
        if k == 0 {
            out.push(acc);
            return;
        }
        if rest.count_ones() < k {
            return;
        }
        let low = rest & rest.wrapping_neg();
        go(rest ^ low, k - 1, acc | low, out);
        go(rest ^ low, k, acc, out);
    }
    go(mask, k, 0, out);
}

/// Steiner-system checks for the weight-8 words.
pub fn octad_steiner_check(code: &BinaryCode) -> SteinerReport {
    octad_steiner_check_with(code, true)
}

pub fn octad_steiner_check_with(code: &BinaryCode, exhaustive: bool) -> SteinerReport {
    let octads = code.words_of_weight(8);
    let counting_identity = octads.len() as u64 * binomial(8, 5) == binomial(24, 5);
    let exhaustive_ok = !exhaustive || {
        let mut seen = HashSet::with_capacity(binomial(24, 5) as usize);
        let mut buf = Vec::new();
        let mut unique = true;
        for &o in &octads {
            buf.clear();
            subsets_of(o, 5, &mut buf);
            for &s in &buf {
                unique &= seen.insert(s);
            }
        }
        unique && seen.len() as u64 == binomial(24, 5)
    };
    let octads_per_point: Vec<usize> =
        (0..LENGTH).map(|i| octads.iter().filter(|&&o| o >> i & 1 == 1).count()).collect();
    let mut pair_counts = Vec::new();
    for i in 0..LENGTH {
        for j in i + 1..LENGTH {
            let m = 1u32 << i | 1 << j;
            pair_counts.push(octads.iter().filter(|&&o| o & m == m).count());
        }
    }
    let (lo, hi) = (*pair_counts.iter().min().unwrap(), *pair_counts.iter().max().unwrap());
    let passed = counting_identity
        && exhaustive_ok
        && octads.len() == 759
        && octads_per_point.iter().all(|&c| c == 253)
        && (lo, hi) == (77, 77);
    SteinerReport {
        octads: octads.len(),
        counting_identity,
        exhaustive: exhaustive && exhaustive_ok,
        octads_per_point,
        octads_per_pair_min: lo,
        octads_per_pair_max: hi,
        passed,
    }
}

fn line_perm(f: impl Fn(Option<u64>) -> Option<u64>) -> Permutation {
    let images = (0..LENGTH)
        .map(|i| {
            let x = if i == INFINITY { None } else { Some(i as u64) };
            f(x).map_or(INFINITY, |y| y as usize)
        })
        .collect();
    Permutation::from_images(images).expect("projective map is a bijection")
}

/// `x ↦ x+1`, `x ↦ 2x` and `x ↦ -1/x` on the projective line over `F_23`.
pub fn psl2_23_generators() -> Vec<Permutation> {
    vec![
        line_perm(|x| x.map(|x| (x + 1) % P)),
        line_perm(|x| x.map(|x| 2 * x % P)),
        line_perm(|x| match x {
            None => Some(0),
            Some(0) => None,
            Some(x) => Some((P - inv_mod(x)) % P),
        }),
    ]
}

/// `x ↦ a x³` on squares, `x ↦ b x³` on non-squares, fixing 0 and ∞.
fn power_map(a: u64, b: u64) -> Option<Permutation> {
    let images: Vec<usize> = (0..LENGTH)
        .map(|i| {
            if i == INFINITY || i == 0 {
                return i;
            }
            let x = i as u64;
            let c = pow_mod_p(x, 3);
            (if is_residue(x) { a * c } else { b * c } % P) as usize
        })
        .collect();
    Permutation::from_images(images).ok()
}

#[derive(Debug, Clone, Serialize)]
pub struct MathieuChain {
    #[serde(skip)]
    pub group: PermGroup,
    #[serde(serialize_with = "crate::serde_util::big_as_string")]
    pub order: BigUint,
    pub order_factorization: Vec<(u64, u32)>,
    #[serde(serialize_with = "crate::serde_util::big_as_string")]
    pub point_stabilizer_order: BigUint,
    #[serde(serialize_with = "crate::serde_util::big_as_string")]
    pub two_point_stabilizer_order: BigUint,
    pub transitivity: Transitivity,
    /// Multipliers `(a, b)` of the power map adjoined to `PSL_2(23)`.
    pub extra_generator: (u64, u64),
    pub generators: Vec<String>,
}

/// Code automorphism group generated by `PSL_2(23)` and the first power map
/// `x ↦ a x³ / b x³` (in `(a, b)` order) that preserves the code and lies
/// outside `PSL_2(23)`.
pub fn mathieu_m24(code: &BinaryCode) -> Result<MathieuChain> {
    let mut gens = psl2_23_generators();
    for (i, g) in gens.iter().enumerate() {
        if !code.is_automorphism(g) {
            return Err(Error::Defect(format!("PSL_2(23) generator {i} ({g}) does not preserve the code")));
        }
    }
    let psl = PermGroup::new(LENGTH, gens.clone())?;
    if psl.order_u64() != Some(6072) {
        return Err(Error::Defect(format!("PSL_2(23) action has order {}", psl.order())));
    }
    let mut tried = Vec::new();
    let mut extra = None;
    'search: for a in 1..P {
        for b in 1..P {
            let Some(g) = power_map(a, b) else { continue };
            tried.push((a, b));
            if code.is_automorphism(&g) && !psl.contains(&g)? {
                extra = Some(((a, b), g));
                break 'search;
            }
        }
    }
    let Some((params, g)) = extra else {
        return Err(Error::Defect(format!(
            "no power map outside PSL_2(23) preserves the code; tried bijective (a, b) = {tried:?}"
        )));
    };
    gens.push(g);
    let group = PermGroup::with_base(LENGTH, gens.clone(), &[INFINITY, 0])?;
    let orders = group.stabilizer_orders();
    let order = group.order();
    let order_factorization = numtheory::factorize(order.to_u64().expect("fits in u64"));
    Ok(MathieuChain {
        order,
        order_factorization,
        point_stabilizer_order: orders[1].clone(),
        two_point_stabilizer_order: orders[2].clone(),
        transitivity: group.transitivity_degree(),
        extra_generator: params,
        generators: gens.iter().map(|g| g.to_string()).collect(),
        group,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Shape {
    FourFour,
    TwoOctad,
    ThreeOnes,
}

/// Minimal vectors of one shape. `norm` is `x·x/8` in integer coordinates,
/// so minimal vectors have `x·x = 32`.
#[derive(Debug, Clone, Serialize)]
pub struct LatticeShapeCount {
    pub shape: Shape,
    pub count: u64,
    pub closed_form: u64,
    pub norm: u32,
}

/// Membership in the Leech lattice, scaled by `√8`: all coordinates share a
/// parity `m`; the positions `≡ 2 (mod 4)` (m even) or `≡ 3 (mod 4)` (m odd)
/// form a codeword; the sum is `≡ 4m (mod 8)`.
pub fn is_leech_vector(code: &BinaryCode, x: &[i32; LENGTH]) -> bool {
    let m = x[0].rem_euclid(2);
    if x.iter().any(|v| v.rem_euclid(2) != m) {
        return false;
    }
    let target = if m == 0 { 2 } else { 3 };
    let w = x.iter().enumerate().filter(|(_, v)| v.rem_euclid(4) == target).fold(0u32, |w, (i, _)| w | 1 << i);
    let sum: i32 = x.iter().sum();
    code.contains(w) && (sum - 4 * m).rem_euclid(8) == 0
}

fn count_four_four(code: &BinaryCode) -> u64 {
    let mut n = 0;
    for i in 0..LENGTH {
        for j in i + 1..LENGTH {
            for (si, sj) in [(4, 4), (4, -4), (-4, 4), (-4, -4)] {
                let mut x = [0i32; LENGTH];
                x[i] = si;
                x[j] = sj;
                n += is_leech_vector(code, &x) as u64;
            }
        }
    }
    n
}

/// Vectors `±2` on a `k`-set with zeros elsewhere, over every `k`-subset
/// whose support is a codeword.
fn count_twos(code: &BinaryCode, k: u32) -> u64 {
    let mut n = 0;
    let mut set: u32 = (1 << k) - 1;
    while set <= FULL {
        if code.contains(set) {
            let pos: Vec<usize> = (0..LENGTH).filter(|i| set >> i & 1 == 1).collect();
            for signs in 0u32..1 << k {
                let mut x = [0i32; LENGTH];
                for (b, &i) in pos.iter().enumerate() {
                    x[i] = if signs >> b & 1 == 1 { -2 } else { 2 };
                }
                n += is_leech_vector(code, &x) as u64;
            }
        }
        let c = set & set.wrapping_neg();
        let r = set + c;
        set = (((r ^ set) >> 2) / c) | r;
    }
    n
}

/// For each codeword `c` and position `j`, the unique vector of shape
/// `(±3, ±1^23)` whose `≡ 3 (mod 4)` positions are `c`.
fn count_three_ones(code: &BinaryCode) -> u64 {
    let mut n = 0;
    for &c in code.codewords() {
        for j in 0..LENGTH {
            let mut x = [0i32; LENGTH];
            for (i, v) in x.iter_mut().enumerate() {
                let in_c = c >> i & 1 == 1;
                *v = match (i == j, in_c) {
                    (true, true) => 3,
                    (true, false) => -3,
                    (false, true) => -1,
                    (false, false) => 1,
                };
            }
            n += is_leech_vector(code, &x) as u64;
        }
    }
    n
}

pub fn leech_minimal_vectors(code: &BinaryCode) -> Vec<LatticeShapeCount> {
    vec![
        LatticeShapeCount {
            shape: Shape::FourFour,
            count: count_four_four(code),
            closed_form: binomial(24, 2) * 4,
            norm: 4,
        },
        LatticeShapeCount { shape: Shape::TwoOctad, count: count_twos(code, 8), closed_form: 759 * (1 << 7), norm: 4 },
        LatticeShapeCount {
            shape: Shape::ThreeOnes,
            count: count_three_ones(code),
            closed_form: 24 * (1 << 12),
            norm: 4,
        },
    ]
}

pub fn kissing_number(code: &BinaryCode) -> u64 {
    leech_minimal_vectors(code).iter().map(|s| s.count).sum()
}

/// Norm-6 vectors of shape `(±2^12, 0^12)` on dodecads.
pub fn dodecad_vectors(code: &BinaryCode) -> u64 {
    count_twos(code, 12)
}

/// Theta coefficients `N(2m)` at `q^m`, from `(J + 24)·Δ`.
pub fn leech_theta_prefix(num_terms: usize) -> Result<IntegerSeries> {
    moonshine::leech_theta_identity(num_terms)
}

#[derive(Debug, Clone, Serialize)]
pub struct ThetaCheck {
    pub theta: IntegerSeries,
    pub shape_total: u64,
    pub matches_kissing_number: bool,
    pub dodecad_vectors: u64,
    pub dodecad_bound_holds: bool,
}

pub fn leech_theta_check(code: &BinaryCode, num_terms: usize) -> Result<ThetaCheck> {
    let theta = leech_theta_prefix(num_terms.max(3))?;
    let shape_total = kissing_number(code);
    let n4 = theta.coeff(2).and_then(|c| c.to_u64());
    let n6 = theta.coeff(3).and_then(|c| c.to_u64()).unwrap_or(0);
    let d = dodecad_vectors(code);
    Ok(ThetaCheck {
        matches_kissing_number: n4 == Some(shape_total),
        dodecad_bound_holds: d <= n6,
        theta: theta.truncate(num_terms as i64 + 1),
        shape_total,
        dodecad_vectors: d,
    })
}
