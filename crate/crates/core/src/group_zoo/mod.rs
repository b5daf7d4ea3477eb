//! Named groups, products, automorphisms and the small-order catalog.

mod abelian;
mod catalog;
mod character;

pub use abelian::{count_abelian_groups, enumerate_abelian_types, partition_count, partitions, AbelianType};
pub use catalog::{catalog_json, small_group_catalog, CatalogEntry};
pub use character::{character_table, CharacterTable};

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::numtheory;
use crate::perm_group::{PermGroup, Permutation};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Cyclic(u32),
    Dihedral(u32),
    Dicyclic(u32),
    Clifford(u32),
    CliffordEven(u32),
    Symmetric(u32),
    Alternating(u32),
    Vierergruppe,
    Quaternion,
    Frobenius21,
    ElementaryAbelian { p: u32, m: u32 },
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Cyclic(n) => write!(f, "cyclic:{n}"),
            Family::Dihedral(n) => write!(f, "dihedral:{n}"),
            Family::Dicyclic(n) => write!(f, "dicyclic:{n}"),
            Family::Clifford(n) => write!(f, "clifford:{n}"),
            Family::CliffordEven(n) => write!(f, "clifford_even:{n}"),
            Family::Symmetric(n) => write!(f, "symmetric:{n}"),
            Family::Alternating(n) => write!(f, "alternating:{n}"),
            Family::Vierergruppe => write!(f, "vierergruppe"),
            Family::Quaternion => write!(f, "quaternion"),
            Family::Frobenius21 => write!(f, "frobenius21"),
            Family::ElementaryAbelian { p, m } => write!(f, "elementary_abelian:{p}:{m}"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    /// `name[:n]`, or `elementary_abelian:p:m`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let num = |i: usize| -> Result<u32> {
            parts
                .get(i)
                .ok_or_else(|| Error::Invalid(format!("family {s:?} needs a parameter")))?
                .parse()
                .map_err(|e| Error::Invalid(format!("bad parameter in {s:?}: {e}")))
        };
        let fam = match parts[0] {
            "cyclic" | "Z" => Family::Cyclic(num(1)?),
            "dihedral" | "D" => Family::Dihedral(num(1)?),
            "dicyclic" | "Dic" | "dic" => Family::Dicyclic(num(1)?),
            "clifford" => Family::Clifford(num(1)?),
            "clifford_even" => Family::CliffordEven(num(1)?),
            "symmetric" | "S" | "Sym" | "sym" => Family::Symmetric(num(1)?),
            "alternating" | "A" | "Alt" | "alt" => Family::Alternating(num(1)?),
            "vierergruppe" | "V" => Family::Vierergruppe,
            "quaternion" | "Q" => Family::Quaternion,
            "frobenius21" => Family::Frobenius21,
            "elementary_abelian" => Family::ElementaryAbelian { p: num(1)?, m: num(2)? },
            other => return Err(Error::Invalid(format!("unknown group family {other:?}"))),
        };
        Ok(fam)
    }
}

fn perm(images: impl IntoIterator<Item = usize>) -> Permutation {
    Permutation::from_images(images.into_iter().collect()).expect("constructed bijection")
}

fn cycle_on(degree: usize, points: std::ops::Range<usize>) -> Permutation {
    let pts: Vec<usize> = points.collect();
    Permutation::from_cycles(degree, &[pts]).expect("in range")
}

/// Right regular representation of a group given by its multiplication on `0..n`.
fn regular(n: usize, mul: impl Fn(usize, usize) -> usize, gens: &[usize]) -> Result<PermGroup> {
    let perms = gens.iter().map(|&g| perm((0..n).map(|x| mul(x, g)))).collect();
    PermGroup::new(n, perms)
}

const MAX_CLIFFORD_RANK: u32 = 16;

pub fn construct_named(family: Family) -> Result<PermGroup> {
    let g = match family {
        Family::Cyclic(n) => {
            if n == 0 {
                return Err(Error::Invalid("cyclic group needs n >= 1".into()));
            }
            let n = n as usize;
            PermGroup::new(n, vec![cycle_on(n, 0..n)])?
        }
        Family::Dihedral(n) => {
            if n < 3 {
                return Err(Error::Invalid(format!(
                    "dihedral family starts at n = 3: n = {n} would be Z_2 (n = 1) or the Klein group V (n = 2), \
                     since Z_2 has no nontrivial automorphism to twist by; use cyclic:2 or vierergruppe"
                )));
            }
            let n = n as usize;
            PermGroup::new(n, vec![cycle_on(n, 0..n), perm((0..n).map(|i| (n - i) % n))])?
        }
        Family::Dicyclic(n) => {
            if n < 2 {
                return Err(Error::Invalid(
                    "dicyclic family starts at n = 2; the n = 1 case is only a loose alias of V \
                     (its defining relations force a cyclic group of order 4)"
                        .into(),
                ));
            }
            dicyclic(n as usize)?
        }
        Family::Clifford(n) | Family::CliffordEven(n) => {
            if n == 0 {
                return Err(Error::Invalid("Clifford group needs n >= 1".into()));
            }
            if n > MAX_CLIFFORD_RANK {
                return Err(Error::resource("Clifford rank", n, MAX_CLIFFORD_RANK));
            }
            clifford(n as usize, matches!(family, Family::CliffordEven(_)))?
        }
        Family::Symmetric(n) => {
            let n = n.max(1) as usize;
            if n < 2 {
                PermGroup::trivial(n)
            } else {
                PermGroup::new(n, vec![cycle_on(n, 0..2), cycle_on(n, 0..n)])?
            }
        }
        Family::Alternating(n) => {
            let n = n.max(1) as usize;
            let gens = (2..n).map(|i| Permutation::from_cycles(n, &[vec![0, 1, i]]).unwrap()).collect();
            PermGroup::new(n, gens)?
        }
        Family::Vierergruppe => PermGroup::from_cycles(4, &["(0 1)(2 3)", "(0 2)(1 3)"])?,
        Family::Quaternion => dicyclic(2)?,
        Family::Frobenius21 => {
            PermGroup::new(7, vec![perm((0..7).map(|x| (x + 1) % 7)), perm((0..7).map(|x| (2 * x) % 7))])?
        }
        Family::ElementaryAbelian { p, m } => {
            if let Some(d) = numtheory::smallest_divisor(p as u64).filter(|&d| d != p as u64) {
                return Err(Error::NotPrime { value: p as u64, divisor: d });
            }
            if p < 2 || m == 0 {
                return Err(Error::Invalid("elementary abelian group needs p prime and m >= 1".into()));
            }
            let p = p as usize;
            let deg = p * m as usize;
            let gens = (0..m as usize).map(|i| cycle_on(deg, i * p..(i + 1) * p)).collect();
            PermGroup::new(deg, gens)?
        }
    };
    Ok(g)
}

/// `Q_n = <a, b | a^2n, a^n = b^2, b a b^-1 = a^-1>` on its 4n elements `a^k b^j`.
fn dicyclic(n: usize) -> Result<PermGroup> {
    let m = 2 * n;
    let enc = |k: usize, j: usize| k % m + m * j;
    let mul = |x: usize, y: usize| {
        let (k1, j1) = (x % m, x / m);
        let (k2, j2) = (y % m, y / m);
        match (j1, j2) {
            (0, _) => enc(k1 + k2, j2),
            (_, 0) => enc(k1 + m - k2, 1),
            _ => enc(k1 + m - k2 + n, 0),
        }
    };
    regular(2 * m, mul, &[enc(1, 0), enc(0, 1)])
}

/// `±γ_S` for subsets `S` of `{1..n}` with `γ_μ γ_ν = -γ_ν γ_μ` and `γ_μ^2 = -1`.
/// Element `(s, S)` is encoded as `S + 2^n s`.
fn clifford(n: usize, even: bool) -> Result<PermGroup> {
    let full = 1usize << n;
    let mul = |x: usize, y: usize| {
        let (s1, a) = (x / full, x % full);
        let (s2, b) = (y / full, y % full);
        let mut swaps = 0u32;
        for t in 0..n {
            if b >> t & 1 == 1 {
                swaps += (a >> (t + 1)).count_ones();
            }
        }
        let squares = (a & b).count_ones();
        let sign = (s1 + s2 + (swaps + squares) as usize) % 2;
        (a ^ b) + full * sign
    };
    if !even {
        let gens: Vec<usize> = (0..n).map(|i| 1 << i).collect();
        return regular(2 * full, mul, &gens);
    }
    // Even part: relabel the 2^n elements with |S| even.
    let members: Vec<usize> = (0..2 * full).filter(|x| (x % full).count_ones().is_multiple_of(2)).collect();
    let index: HashMap<usize, usize> = members.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let mut gens: Vec<usize> = (1..n).map(|i| index[&(1 | 1 << i)]).collect();
    // -1, needed when n = 1 and harmless otherwise.
    gens.push(index[&full]);
    regular(members.len(), |x, y| index[&mul(members[x], members[y])], &gens)
}

pub fn direct_product(a: &PermGroup, b: &PermGroup) -> Result<PermGroup> {
    let (da, db) = (a.degree(), b.degree());
    let n = da + db;
    let mut gens = Vec::new();
    for g in a.generators() {
        gens.push(perm((0..n).map(|x| if x < da { g.image(x) } else { x })));
    }
    for g in b.generators() {
        gens.push(perm((0..n).map(|x| if x < da { x } else { da + g.image(x - da) })));
    }
    PermGroup::new(n, gens)
}

pub fn abelian_group(t: &AbelianType) -> Result<PermGroup> {
    let mut g = PermGroup::trivial(1);
    for &f in t.factors() {
        g = direct_product(&g, &construct_named(Family::Cyclic(f as u32))?)?;
    }
    Ok(g)
}

/// Multiplication table over the elements of a group in sorted order;
/// index 0 is the identity.
#[derive(Debug, Clone)]
pub struct CayleyTable {
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    table: Vec<u32>,
    inverse: Vec<u32>,
}

impl CayleyTable {
    pub fn new(g: &PermGroup) -> Result<Self> {
        let elements = g.elements()?;
        let n = elements.len();
        let index: HashMap<Permutation, usize> = elements.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        let mut table = vec![0u32; n * n];
        for (i, x) in elements.iter().enumerate() {
            for (j, y) in elements.iter().enumerate() {
                table[i * n + j] = index[&x.mul(y)] as u32;
            }
        }
        let mut inverse = vec![0u32; n];
        for i in 0..n {
            for j in 0..n {
                if table[i * n + j] == 0 {
                    inverse[i] = j as u32;
                    break;
                }
            }
        }
        Ok(CayleyTable { elements, index, table, inverse })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    #[inline]
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.table[i * self.elements.len() + j] as usize
    }

    pub fn inv(&self, i: usize) -> usize {
        self.inverse[i] as usize
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn pow(&self, i: usize, k: u64) -> usize {
        (0..k).fold(0, |acc, _| self.mul(acc, i))
    }

    pub fn element_order(&self, i: usize) -> u64 {
        let mut x = i;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, i);
            k += 1;
        }
        k
    }

    pub fn is_central(&self, i: usize) -> bool {
        (0..self.len()).all(|j| self.mul(i, j) == self.mul(j, i))
    }

    /// Returns the first `(x, y)` with `f(xy) != f(x) f(y)`, if any.
    pub fn homomorphism_violation(&self, f: &Permutation) -> Option<(usize, usize)> {
        let n = self.len();
        for x in 0..n {
            for y in 0..n {
                if f.image(self.mul(x, y)) != self.mul(f.image(x), f.image(y)) {
                    return Some((x, y));
                }
            }
        }
        None
    }
}

/// Assignment of automorphisms of `A` (as permutations of `A`'s sorted
/// element indices) to the generators of `B`, in order.
#[derive(Debug, Clone)]
pub struct ActionMap {
    images: Vec<Permutation>,
}

impl ActionMap {
    pub fn new(images: Vec<Permutation>) -> Self {
        ActionMap { images }
    }

    pub fn images(&self) -> &[Permutation] {
        &self.images
    }

    pub fn trivial(a: &PermGroup, b: &PermGroup) -> Result<Self> {
        let n = a.order_u64().unwrap_or(u64::MAX) as usize;
        Ok(ActionMap { images: vec![Permutation::identity(n); b.generators().len()] })
    }

    /// Each generator of `B` acts by `x -> x^k` with its own exponent.
    pub fn power_map(a: &PermGroup, exponents: &[i64]) -> Result<Self> {
        let table = CayleyTable::new(a)?;
        let n = table.len();
        let images = exponents
            .iter()
            .map(|&k| {
                let images = (0..n)
                    .map(|x| {
                        let o = table.element_order(x) as i64;
                        table.pow(x, k.rem_euclid(o) as u64)
                    })
                    .collect();
                Permutation::from_images(images)
                    .map_err(|_| Error::Invalid(format!("x -> x^{k} is not a bijection of A")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ActionMap { images })
    }
}

/// `A ⋊ B` with `(a, b)(a', b') = (a μ_b(a'), b b')`, realized on the
/// `|A|·|B|` pairs by right multiplication.
pub fn semidirect_product(a: &PermGroup, b: &PermGroup, action: &ActionMap) -> Result<PermGroup> {
    let ta = CayleyTable::new(a)?;
    let tb = CayleyTable::new(b)?;
    let (na, nb) = (ta.len(), tb.len());
    let bound = a.limits().class_bound as usize;
    if na * nb > bound {
        return Err(Error::resource("semidirect product order", na * nb, bound));
    }
    if action.images.len() != b.generators().len() {
        return Err(Error::Invalid(format!(
            "action assigns {} maps but B has {} generators",
            action.images.len(),
            b.generators().len()
        )));
    }
    for (i, f) in action.images.iter().enumerate() {
        if f.degree() != na {
            return Err(Error::Domain(format!(
                "map for generator {i} acts on {} points, A has {na} elements",
                f.degree()
            )));
        }
        if let Some((x, y)) = ta.homomorphism_violation(f) {
            return Err(Error::Invalid(format!(
                "map for generator {i} is not an automorphism of A: \
                 f({} * {}) != f({}) * f({})",
                ta.elements[x], ta.elements[y], ta.elements[x], ta.elements[y]
            )));
        }
    }
    let bgens: Vec<usize> = b.generators().iter().map(|g| tb.index_of(g).expect("generator is an element")).collect();
    // μ on all of B, checked edge by edge: μ_{b s} = μ_b ∘ μ_s.
    let mut mu: Vec<Option<Permutation>> = vec![None; nb];
    mu[0] = Some(Permutation::identity(na));
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        let mx = mu[x].clone().unwrap();
        for (s, f) in bgens.iter().zip(&action.images) {
            let y = tb.mul(x, *s);
            let my = f.mul(&mx);
            match &mu[y] {
                None => {
                    mu[y] = Some(my);
                    queue.push_back(y);
                }
                Some(existing) if *existing != my => {
                    return Err(Error::Invalid(format!(
                        "action does not respect the relations of B: element {} acts in two different ways",
                        tb.elements[y]
                    )));
                }
                _ => {}
            }
        }
    }
    let mu: Vec<Permutation> = mu.into_iter().map(|m| m.unwrap()).collect();
    let right_mul = |ap: usize, bp: usize| {
        perm((0..na * nb).map(|pt| {
            let (x, y) = (pt / nb, pt % nb);
            ta.mul(x, mu[y].image(ap)) * nb + tb.mul(y, bp)
        }))
    };
    let mut gens = Vec::new();
    for g in a.generators() {
        gens.push(right_mul(ta.index_of(g).unwrap(), 0));
    }
    for &s in &bgens {
        gens.push(right_mul(0, s));
    }
    let g = PermGroup::new(na * nb, gens)?.with_limits(*a.limits());
    if g.order_u64() != Some((na * nb) as u64) {
        return Err(Error::Defect(format!("semidirect product has order {}, expected {}", g.order(), na * nb)));
    }
    Ok(g)
}

#[derive(Debug, Clone)]
pub struct AutomorphismData {
    /// `Aut(G)` acting on the sorted elements of `G`.
    pub group: PermGroup,
    pub aut_order: u64,
    pub inn_order: u64,
    pub out_order: u64,
}

/// Elements whose span is the whole group, picked greedily by largest order.
fn generating_sequence(t: &CayleyTable) -> Vec<usize> {
    let n = t.len();
    let mut in_h = vec![false; n];
    in_h[0] = true;
    let mut gens = Vec::new();
    loop {
        let pick = (0..n).filter(|&x| !in_h[x]).max_by_key(|&x| (t.element_order(x), std::cmp::Reverse(x)));
        let Some(x) = pick else { break };
        gens.push(x);
        // closure of the current span
        let mut h: Vec<usize> = (0..n).filter(|&y| in_h[y]).collect();
        let mut i = 0;
        while i < h.len() {
            for &s in &gens {
                let z = t.mul(h[i], s);
                if !in_h[z] {
                    in_h[z] = true;
                    h.push(z);
                }
            }
            i += 1;
        }
    }
    gens
}

/// Extends generator images to the subgroup they span; `None` if the
/// assignment is not an injective homomorphism there.
fn extend_map(t: &CayleyTable, gens: &[usize], images: &[usize]) -> Option<Vec<Option<usize>>> {
    let n = t.len();
    let mut phi: Vec<Option<usize>> = vec![None; n];
    let mut used = vec![false; n];
    phi[0] = Some(0);
    used[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        let fx = phi[x].unwrap();
        for (&s, &fs) in gens.iter().zip(images) {
            let y = t.mul(x, s);
            let fy = t.mul(fx, fs);
            match phi[y] {
                None => {
                    if used[fy] {
                        return None;
                    }
                    used[fy] = true;
                    phi[y] = Some(fy);
                    queue.push_back(y);
                }
                Some(v) if v != fy => return None,
                _ => {}
            }
        }
    }
    Some(phi)
}

pub fn automorphism_group(g: &PermGroup) -> Result<AutomorphismData> {
    let limits = *g.limits();
    let order = g.order();
    if order > limits.automorphism_bound.into() {
        return Err(Error::resource("group order for automorphism search", order, limits.automorphism_bound));
    }
    let t = CayleyTable::new(g)?;
    let n = t.len();
    let orders: Vec<u64> = (0..n).map(|x| t.element_order(x)).collect();
    let gens = generating_sequence(&t);
    let candidates: Vec<Vec<usize>> =
        gens.iter().map(|&s| (0..n).filter(|&x| orders[x] == orders[s]).collect()).collect();

    let mut auts: Vec<Permutation> = Vec::new();
    let mut images: Vec<usize> = Vec::new();
    let mut cursor: Vec<usize> = if gens.is_empty() { Vec::new() } else { vec![0] };
    // Iterative backtracking over generator images.
    while let Some(&c) = cursor.last() {
        let depth = cursor.len() - 1;
        if c >= candidates[depth].len() {
            cursor.pop();
            images.pop();
            if let Some(last) = cursor.last_mut() {
                *last += 1;
            }
            continue;
        }
        images.push(candidates[depth][c]);
        let phi = extend_map(&t, &gens[..=depth], &images);
        match phi {
            Some(phi) if depth + 1 == gens.len() => {
                let f = Permutation::from_images(phi.into_iter().map(Option::unwrap).collect())
                    .map_err(|e| Error::Defect(format!("automorphism candidate: {e}")))?;
                if let Some((x, y)) = t.homomorphism_violation(&f) {
                    return Err(Error::Defect(format!("extension fails at ({x}, {y})")));
                }
                auts.push(f);
                if auts.len() as u64 > limits.automorphism_count {
                    return Err(Error::resource(
                        "automorphism count",
                        format!("more than {}", limits.automorphism_count),
                        limits.automorphism_count,
                    ));
                }
                images.pop();
                *cursor.last_mut().unwrap() += 1;
            }
            Some(_) => cursor.push(0),
            None => {
                images.pop();
                *cursor.last_mut().unwrap() += 1;
            }
        }
    }
    if n == 1 {
        auts = vec![Permutation::identity(1)];
    }

    let mut group = PermGroup::trivial(n).with_limits(limits);
    for f in &auts {
        group.add_generator(f.clone())?;
    }
    let aut_order = auts.len() as u64;
    if group.order_u64() != Some(aut_order) {
        return Err(Error::Defect(format!(
            "found {aut_order} automorphisms but they generate a group of order {}",
            group.order()
        )));
    }
    let center = (0..n).filter(|&x| t.is_central(x)).count() as u64;
    let inn_order = n as u64 / center;
    Ok(AutomorphismData { group, aut_order, inn_order, out_order: aut_order / inn_order })
}

/// `A ⋊ Aut(A)` for abelian `A`.
pub fn holomorph(a: &PermGroup) -> Result<PermGroup> {
    if !a.is_abelian() {
        return Err(Error::Invalid(
            "holomorph is built only for abelian groups; for nonabelian G the inner part repeats G".into(),
        ));
    }
    let aut = automorphism_group(a)?;
    // Right-action composition reverses order, so assign s -> s^-1 to get a homomorphism.
    let images = aut.group.generators().iter().map(|s| s.inverse()).collect();
    semidirect_product(a, &aut.group, &ActionMap::new(images))
}

/// The nonabelian group `Z_q ⋊ Z_p` for primes `p < q`, when one exists.
pub fn nonabelian_pq(p: u64, q: u64) -> Result<PermGroup> {
    if !(numtheory::is_prime(p) && numtheory::is_prime(q) && p < q) {
        return Err(Error::Invalid(format!("need primes p < q, got p = {p}, q = {q}")));
    }
    let k = (2..q).find(|&k| {
        let mut x = 1u64;
        for _ in 0..p {
            x = x * k % q;
        }
        x == 1
    });
    let Some(k) = k else {
        return Err(Error::Invalid(format!("no nonabelian group of order {}: {p} does not divide {} - 1", p * q, q)));
    };
    let a = construct_named(Family::Cyclic(q as u32))?;
    let b = construct_named(Family::Cyclic(p as u32))?;
    semidirect_product(&a, &b, &ActionMap::power_map(&a, &[k as i64])?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn order(g: &PermGroup) -> u64 {
        g.order_u64().unwrap()
    }

    #[test]
    fn family_orders() {
        for n in 3..10 {
            assert_eq!(order(&construct_named(Family::Dihedral(n)).unwrap()), 2 * n as u64);
        }
        for n in 2..8 {
            assert_eq!(order(&construct_named(Family::Dicyclic(n)).unwrap()), 4 * n as u64);
        }
        for n in 1..6 {
            assert_eq!(order(&construct_named(Family::Clifford(n)).unwrap()), 1 << (n + 1));
            assert_eq!(order(&construct_named(Family::CliffordEven(n)).unwrap()), 1 << n);
        }
        assert_eq!(order(&construct_named(Family::Symmetric(5)).unwrap()), 120);
        assert_eq!(order(&construct_named(Family::Alternating(6)).unwrap()), 360);
        assert_eq!(order(&construct_named(Family::Alternating(2)).unwrap()), 1);
        assert_eq!(order(&construct_named(Family::ElementaryAbelian { p: 3, m: 2 }).unwrap()), 9);
    }

    #[test]
    fn degenerate_parameters() {
        let e = construct_named(Family::Dihedral(2)).unwrap_err();
        assert!(e.to_string().contains("vierergruppe"), "{e}");
        assert!(construct_named(Family::Dicyclic(1)).is_err());
        assert!(matches!(
            construct_named(Family::ElementaryAbelian { p: 6, m: 1 }),
            Err(Error::NotPrime { value: 6, divisor: 2 })
        ));
    }

    #[test]
    fn parse_family() {
        assert_eq!("dihedral:4".parse::<Family>().unwrap(), Family::Dihedral(4));
        assert_eq!("elementary_abelian:2:3".parse::<Family>().unwrap(), Family::ElementaryAbelian { p: 2, m: 3 });
        assert!("dihedral".parse::<Family>().is_err());
        assert!("bogus:1".parse::<Family>().is_err());
    }

    #[test]
    fn dihedral4_classes() {
        let c = construct_named(Family::Dihedral(4)).unwrap().conjugacy_classes().unwrap();
        let mut sizes = c.class_sizes.clone();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 1, 2, 2, 2]);
    }

    #[test]
    fn quaternion_is_dicyclic2_and_clifford2() {
        let q = construct_named(Family::Quaternion).unwrap();
        let c = q.conjugacy_classes().unwrap();
        assert_eq!(c.class_sizes, vec![1, 1, 2, 2, 2]);
        assert_eq!(c.class_rep_orders, vec![1, 2, 4, 4, 4]);
        let h = q.element_order_histogram().unwrap();
        let g2 = construct_named(Family::Clifford(2)).unwrap();
        assert_eq!(g2.element_order_histogram().unwrap(), h);
        let r = q.structure_report().unwrap();
        assert_eq!((r.center_order, r.derived_order, r.abelianization_order), (2, 2, 4));
    }

    #[test]
    fn frobenius21() {
        let g = construct_named(Family::Frobenius21).unwrap();
        assert_eq!(order(&g), 21);
        assert!(!g.is_abelian());
    }

    #[test]
    fn semidirect_examples() {
        let z3 = construct_named(Family::Cyclic(3)).unwrap();
        let z2 = construct_named(Family::Cyclic(2)).unwrap();
        let s3 = semidirect_product(&z3, &z2, &ActionMap::power_map(&z3, &[-1]).unwrap()).unwrap();
        assert_eq!(order(&s3), 6);
        assert!(!s3.is_abelian());

        let z7 = construct_named(Family::Cyclic(7)).unwrap();
        let z3b = construct_named(Family::Cyclic(3)).unwrap();
        let g = semidirect_product(&z7, &z3b, &ActionMap::power_map(&z7, &[2]).unwrap()).unwrap();
        assert_eq!(order(&g), 21);
        assert!(!g.is_abelian());

        let v = construct_named(Family::Vierergruppe).unwrap();
        let d = semidirect_product(&v, &z3b, &ActionMap::trivial(&v, &z3b).unwrap()).unwrap();
        assert_eq!(order(&d), 12);
        assert!(d.is_abelian());
    }

    #[test]
    fn invalid_actions_are_rejected() {
        // x -> x^2 on Z_7 has order 3, so it cannot be assigned to a generator of Z_2.
        let z7 = construct_named(Family::Cyclic(7)).unwrap();
        let z2 = construct_named(Family::Cyclic(2)).unwrap();
        let e = semidirect_product(&z7, &z2, &ActionMap::power_map(&z7, &[2]).unwrap()).unwrap_err();
        assert!(e.to_string().contains("relations"), "{e}");
        // x -> x^2 on Z_4 is not a bijection.
        let z4 = construct_named(Family::Cyclic(4)).unwrap();
        assert!(ActionMap::power_map(&z4, &[2]).is_err());
        // A non-automorphism bijection.
        let bad = Permutation::parse_cycles(4, "(0 1)").unwrap();
        let e = semidirect_product(&z4, &z2, &ActionMap::new(vec![bad])).unwrap_err();
        assert!(e.to_string().contains("not an automorphism"), "{e}");
    }

    #[test]
    fn automorphism_orders() {
        let cases = [
            (Family::Vierergruppe, 6, 1),
            (Family::Cyclic(7), 6, 1),
            (Family::Cyclic(2), 1, 1),
            (Family::Quaternion, 24, 4),
            (Family::Dihedral(4), 8, 4),
            (Family::Symmetric(3), 6, 6),
        ];
        for (fam, aut, inn) in cases {
            let d = automorphism_group(&construct_named(fam).unwrap()).unwrap();
            assert_eq!((d.aut_order, d.inn_order), (aut, inn), "{fam}");
        }
        let q = automorphism_group(&construct_named(Family::Quaternion).unwrap()).unwrap();
        assert_eq!(q.out_order, 6);
        let d4 = automorphism_group(&construct_named(Family::Dihedral(4)).unwrap()).unwrap();
        assert_eq!(d4.out_order, 2);
        assert_eq!(automorphism_group(&PermGroup::trivial(1)).unwrap().aut_order, 1);
    }

    #[test]
    fn automorphism_bound() {
        let g = construct_named(Family::Symmetric(5)).unwrap();
        assert!(matches!(automorphism_group(&g), Err(Error::Resource { .. })));
    }

    #[test]
    fn holomorphs() {
        let v = construct_named(Family::Vierergruppe).unwrap();
        let hol = holomorph(&v).unwrap();
        assert_eq!(order(&hol), 24);
        let s4 = construct_named(Family::Symmetric(4)).unwrap();
        assert_eq!(hol.conjugacy_classes().unwrap().class_sizes, s4.conjugacy_classes().unwrap().class_sizes);
        assert_eq!(order(&holomorph(&construct_named(Family::Cyclic(5)).unwrap()).unwrap()), 20);
        let h3 = holomorph(&construct_named(Family::Cyclic(3)).unwrap()).unwrap();
        assert_eq!(order(&h3), 6);
        assert!(!h3.is_abelian());
        assert!(holomorph(&s4).is_err());
        let hol8 = holomorph(&construct_named(Family::ElementaryAbelian { p: 2, m: 3 }).unwrap()).unwrap();
        assert_eq!(hol8.order(), BigUint::from(1344u32));
    }

    #[test]
    fn pq_compatibility() {
        let primes = numtheory::primes_up_to(100);
        for &p in &primes {
            for &q in primes.iter().filter(|&&q| q > p && p * q < 200) {
                // Oracle: try every exponent and let the action validation decide.
                let a = construct_named(Family::Cyclic(q as u32)).unwrap();
                let b = construct_named(Family::Cyclic(p as u32)).unwrap();
                let any = (2..q as i64).any(|k| {
                    ActionMap::power_map(&a, &[k])
                        .and_then(|m| semidirect_product(&a, &b, &m))
                        .map(|g| !g.is_abelian())
                        .unwrap_or(false)
                });
                let built = nonabelian_pq(p, q);
                assert_eq!(built.is_ok(), any, "p = {p}, q = {q}");
                assert_eq!(any, (q - 1) % p == 0);
                if let Ok(g) = built {
                    assert_eq!(order(&g), p * q);
                    assert!(!g.is_abelian());
                }
            }
        }
    }
}
