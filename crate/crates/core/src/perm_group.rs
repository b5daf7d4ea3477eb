//! Permutations and permutation groups backed by a stabilizer chain.
//!
//! Permutations act on the right: `x^(gh) = (x^g)^h`, so `g.mul(&h)` applies
//! `g` first. Groups are built with a deterministic Schreier–Sims over
//! explicit transversals; the base is extended with the smallest point moved
//! by each new strong generator, after an optional caller-supplied prefix.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limits::Limits;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation { images: (0..degree as u32).collect() }
    }

    /// Validates that `images` is a bijection on `0..images.len()`.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for (i, &x) in images.iter().enumerate() {
            if x >= n {
                return Err(Error::Invalid(format!("image {x} of point {i} is outside 0..{n}")));
            }
            if seen[x] {
                return Err(Error::Invalid(format!("image {x} is repeated; not a bijection")));
            }
            seen[x] = true;
        }
        Ok(Permutation { images: images.into_iter().map(|x| x as u32).collect() })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        Permutation { images }
    }

    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for &x in cycle {
                if x >= degree {
                    return Err(Error::Invalid(format!("point {x} is outside 0..{degree}")));
                }
                if used[x] {
                    return Err(Error::Invalid(format!("point {x} appears in two cycles")));
                }
                used[x] = true;
            }
            for (i, &x) in cycle.iter().enumerate() {
                images[x] = cycle[(i + 1) % cycle.len()];
            }
        }
        Self::from_images(images)
    }

    /// Parses cycle notation such as `(0 1 2)(3,4)`; `()` is the identity.
    pub fn parse_cycles(degree: usize, text: &str) -> Result<Self> {
        let mut cycles = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::Invalid(format!("expected '(' in cycle notation: {text:?}")))?;
            let close = open.find(')').ok_or_else(|| Error::Invalid(format!("unclosed cycle in {text:?}")))?;
            let body = &open[..close];
            let points: std::result::Result<Vec<usize>, _> =
                body.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()).map(str::parse).collect();
            let points = points.map_err(|e| Error::Invalid(format!("bad point in cycle {body:?}: {e}")))?;
            if !points.is_empty() {
                cycles.push(points);
            }
            rest = open[close + 1..].trim_start();
        }
        Self::from_cycles(degree, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// `self` followed by `other`.
    pub fn mul(&self, other: &Permutation) -> Self {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation { images: self.images.iter().map(|&x| other.images[x as usize]).collect() }
    }

    pub fn pow(&self, mut k: i64) -> Self {
        let mut base = if k < 0 { self.inverse() } else { self.clone() };
        k = k.abs();
        let mut acc = Permutation::identity(self.degree());
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    /// `g^-1 self g`.
    pub fn conjugate_by(&self, g: &Permutation) -> Self {
        g.inverse().mul(self).mul(g)
    }

    pub fn commutator(&self, other: &Permutation) -> Self {
        self.inverse().mul(&other.inverse()).mul(self).mul(other)
    }

    /// Nontrivial cycles, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.image(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.image(x);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Least common multiple of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycles().iter().fold(1u64, |acc, c| {
            let l = c.len() as u64;
            let g = num_integer::gcd(acc, l);
            (acc / g).checked_mul(l).expect("element order overflows u64")
        })
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }

    pub fn first_moved_point(&self) -> Option<usize> {
        self.images.iter().enumerate().find(|&(i, &x)| i as u32 != x).map(|(i, _)| i)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let body: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", body.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
struct Level {
    base: usize,
    gens: Vec<Permutation>,
    orbit: Vec<usize>,
    /// Point -> index into `reps`.
    slot: Vec<Option<u32>>,
    reps: Vec<Permutation>,
    rep_invs: Vec<Permutation>,
    /// Per orbit position: how many generators have had their Schreier generator sifted.
    checked: Vec<usize>,
}

impl Level {
    fn new(degree: usize, base: usize) -> Self {
        let mut slot = vec![None; degree];
        slot[base] = Some(0);
        Level {
            base,
            gens: Vec::new(),
            orbit: vec![base],
            slot,
            reps: vec![Permutation::identity(degree)],
            rep_invs: vec![Permutation::identity(degree)],
            checked: vec![0],
        }
    }

    /// Breadth-first extension of the orbit; existing transversal entries never change.
    fn extend_orbit(&mut self) {
        let mut i = 0;
        while i < self.orbit.len() {
            let pt = self.orbit[i];
            let rep_idx = self.slot[pt].unwrap() as usize;
            for g in &self.gens {
                let img = g.image(pt);
                if self.slot[img].is_none() {
                    let rep = self.reps[rep_idx].mul(g);
                    self.slot[img] = Some(self.reps.len() as u32);
                    self.rep_invs.push(rep.inverse());
                    self.reps.push(rep);
                    self.orbit.push(img);
                    self.checked.push(0);
                }
            }
            i += 1;
        }
    }
}

#[derive(Debug, Clone)]
struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    fn new(degree: usize, base_prefix: &[usize]) -> Self {
        StabChain { degree, levels: base_prefix.iter().map(|&b| Level::new(degree, b)).collect() }
    }

    /// Sifts `g` from level `from`; returns the residue and the level where it
    /// stopped, or `None` when it reduces to the identity.
    fn sift(&self, g: &Permutation, from: usize) -> Option<(Permutation, usize)> {
        let mut h = g.clone();
        for (l, level) in self.levels.iter().enumerate().skip(from) {
            let b = h.image(level.base);
            match level.slot[b] {
                None => return Some((h, l)),
                Some(idx) => h = h.mul(&level.rep_invs[idx as usize]),
            }
        }
        if h.is_identity() {
            None
        } else {
            Some((h, self.levels.len()))
        }
    }

    fn extend(&mut self, g: &Permutation) {
        if let Some((r, lvl)) = self.sift(g, 0) {
            self.add_strong(r, lvl);
        }
    }

    fn add_strong(&mut self, h: Permutation, j: usize) {
        if j == self.levels.len() {
            let base = h.first_moved_point().expect("sift residue is never the identity");
            self.levels.push(Level::new(self.degree, base));
        }
        for l in 0..=j {
            self.levels[l].gens.push(h.clone());
        }
        for l in (0..=j).rev() {
            self.close(l);
        }
    }

    fn close(&mut self, l: usize) {
        loop {
            self.levels[l].extend_orbit();
            let level = &self.levels[l];
            let ngens = level.gens.len();
            let pending = level.checked.iter().position(|&c| c < ngens);
            let Some(i) = pending else { break };
            let k = level.checked[i];
            self.levels[l].checked[i] = k + 1;
            let level = &self.levels[l];
            let pt = level.orbit[i];
            let rep = &level.reps[level.slot[pt].unwrap() as usize];
            let g = &level.gens[k];
            let img = g.image(pt);
            let back = &level.rep_invs[level.slot[img].unwrap() as usize];
            let schreier = rep.mul(g).mul(back);
            if let Some((r, m)) = self.sift(&schreier, l + 1) {
                self.add_strong(r, m);
            }
        }
    }

    fn order(&self) -> BigUint {
        self.levels.iter().fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }
}

/// Conjugacy-class data, classes sorted by element order and then by the
/// lexicographically smallest member.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassData {
    pub class_sizes: Vec<u64>,
    pub class_rep_orders: Vec<u64>,
    pub center_size: u64,
    pub num_classes: usize,
    /// Lexicographically smallest element of each class.
    #[serde(skip)]
    pub representatives: Vec<Permutation>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub center_order: u64,
    pub derived_order: u64,
    pub abelianization_order: u64,
    pub is_perfect: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Transitivity {
    pub k: usize,
    pub sharp: bool,
}

#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: StabChain,
    limits: Limits,
}

pub fn group_from_generators(degree: usize, gens: Vec<Permutation>) -> Result<PermGroup> {
    PermGroup::new(degree, gens)
}

impl PermGroup {
    pub fn new(degree: usize, gens: Vec<Permutation>) -> Result<Self> {
        Self::with_base(degree, gens, &[])
    }

    /// Builds the chain with `base_prefix` as the first base points (levels
    /// may have trivial orbits).
    pub fn with_base(degree: usize, gens: Vec<Permutation>, base_prefix: &[usize]) -> Result<Self> {
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::Domain(format!("generator {g} has degree {}, expected {degree}", g.degree())));
            }
        }
        if let Some(&b) = base_prefix.iter().find(|&&b| b >= degree) {
            return Err(Error::Invalid(format!("base point {b} outside 0..{degree}")));
        }
        let gens: Vec<Permutation> = gens.into_iter().filter(|g| !g.is_identity()).collect();
        let mut chain = StabChain::new(degree, base_prefix);
        for g in &gens {
            chain.extend(g);
        }
        Ok(PermGroup { degree, generators: gens, chain, limits: Limits::default() })
    }

    pub fn from_cycles(degree: usize, gens: &[&str]) -> Result<Self> {
        let perms = gens.iter().map(|s| Permutation::parse_cycles(degree, s)).collect::<Result<Vec<_>>>()?;
        Self::new(degree, perms)
    }

    pub fn trivial(degree: usize) -> Self {
        Self::new(degree, Vec::new()).unwrap()
    }

    pub fn with_limits(mut self, limits: Limits) -> Self {
        self.limits = limits;
        self
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub fn order(&self) -> BigUint {
        self.chain.order()
    }

    pub fn order_u64(&self) -> Option<u64> {
        self.order().to_u64()
    }

    pub fn base(&self) -> Vec<usize> {
        self.chain.levels.iter().map(|l| l.base).collect()
    }

    /// Fundamental orbit lengths, one per base point.
    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.chain.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// Orders of `G = G^(0) >= G^(1) >= ...`, where `G^(i)` fixes the first `i` base points.
    pub fn stabilizer_orders(&self) -> Vec<BigUint> {
        let lens = self.orbit_lengths();
        (0..=lens.len()).map(|i| lens[i..].iter().fold(BigUint::one(), |acc, &l| acc * BigUint::from(l))).collect()
    }

    /// Strong generators of `G^(i)`.
    pub fn stabilizer_generators(&self, i: usize) -> Vec<Permutation> {
        self.chain.levels.get(i).map(|l| l.gens.clone()).unwrap_or_default()
    }

    pub fn contains(&self, g: &Permutation) -> Result<bool> {
        if g.degree() != self.degree {
            return Err(Error::Domain(format!(
                "permutation of degree {} tested against group of degree {}",
                g.degree(),
                self.degree
            )));
        }
        Ok(self.chain.sift(g, 0).is_none())
    }

    pub(crate) fn contains_unchecked(&self, g: &Permutation) -> bool {
        self.chain.sift(g, 0).is_none()
    }

    /// Adds a generator, extending the chain in place.
    pub fn add_generator(&mut self, g: Permutation) -> Result<()> {
        if g.degree() != self.degree {
            return Err(Error::Domain("generator degree mismatch".into()));
        }
        if !self.contains_unchecked(&g) {
            self.chain.extend(&g);
            self.generators.push(g);
        }
        Ok(())
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.generators;
        (0..g.len()).all(|i| (i + 1..g.len()).all(|j| g[i].mul(&g[j]) == g[j].mul(&g[i])))
    }

    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        let mut out = vec![point];
        seen[point] = true;
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            for g in &self.generators {
                let y = g.image(x);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                }
            }
            i += 1;
        }
        out.sort_unstable();
        out
    }

    /// Orbits on `0..degree`, each sorted, ordered by smallest point.
    pub fn orbit_partition(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for x in 0..self.degree {
            if !seen[x] {
                let orbit = self.orbit(x);
                for &y in &orbit {
                    seen[y] = true;
                }
                out.push(orbit);
            }
        }
        out
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.degree).filter(|&x| self.generators.iter().any(|g| g.image(x) != x)).collect()
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || self.orbit(0).len() == self.degree
    }

    /// Point stabilizer, built as a fresh group whose base starts at `point`.
    pub fn stabilizer(&self, point: usize) -> PermGroup {
        let g = PermGroup::with_base(self.degree, self.generators.clone(), &[point]).expect("point in range");
        let gens = g.stabilizer_generators(1);
        PermGroup::new(self.degree, gens).expect("same degree").with_limits(self.limits)
    }

    /// Largest `k` with `G` transitive on ordered `k`-tuples of distinct
    /// support points, and whether the `k`-point stabilizer is trivial.
    pub fn transitivity_degree(&self) -> Transitivity {
        let support = self.support();
        if support.is_empty() || self.orbit(support[0]).len() != support.len() {
            return Transitivity { k: 0, sharp: false };
        }
        let g = PermGroup::with_base(self.degree, self.generators.clone(), &support).expect("support points in range");
        let lens = g.orbit_lengths();
        let mut k = 0;
        while k < support.len() && lens[k] == support.len() - k {
            k += 1;
        }
        let rest: BigUint = lens[k..].iter().fold(BigUint::one(), |acc, &l| acc * BigUint::from(l));
        Transitivity { k, sharp: rest.is_one() }
    }

    fn bounded_order(&self, bound: u64, what: &'static str) -> Result<u64> {
        let order = self.order();
        match order.to_u64() {
            Some(n) if n <= bound => Ok(n),
            _ => Err(Error::resource(what, order, bound)),
        }
    }

    /// Calls `f` on every element, in chain order.
    pub fn for_each_element(&self, mut f: impl FnMut(&Permutation)) {
        fn walk(levels: &[Level], depth: usize, acc: &Permutation, f: &mut dyn FnMut(&Permutation)) {
            if depth == 0 {
                f(acc);
                return;
            }
            for rep in &levels[depth - 1].reps {
                walk(levels, depth - 1, &acc.mul(rep), f);
            }
        }
        let levels = &self.chain.levels;
        walk(levels, levels.len(), &self.identity(), &mut f);
    }

    /// All elements, sorted lexicographically by image sequence (identity first).
    pub fn elements(&self) -> Result<Vec<Permutation>> {
        let n = self.bounded_order(self.limits.class_bound, "group order for enumeration")?;
        let mut out = Vec::with_capacity(n as usize);
        self.for_each_element(|g| out.push(g.clone()));
        out.sort_unstable();
        Ok(out)
    }

    /// Uniform random element from the chain.
    pub fn random_element(&self, rng: &mut impl Rng) -> Permutation {
        let mut acc = self.identity();
        for level in self.chain.levels.iter().rev() {
            let rep = &level.reps[rng.gen_range(0..level.reps.len())];
            acc = acc.mul(rep);
        }
        acc
    }

    fn conjugacy_class_of(&self, x: &Permutation) -> Vec<Permutation> {
        let mut seen: HashSet<Permutation> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(x.clone());
        queue.push_back(x.clone());
        let invs: Vec<Permutation> = self.generators.iter().map(|g| g.inverse()).collect();
        while let Some(y) = queue.pop_front() {
            for (g, gi) in self.generators.iter().zip(&invs) {
                let z = gi.mul(&y).mul(g);
                if seen.insert(z.clone()) {
                    queue.push_back(z);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Conjugacy classes as member lists, in [`ClassData`] order.
    pub fn class_members(&self) -> Result<Vec<Vec<Permutation>>> {
        let order = self.bounded_order(self.limits.class_bound, "group order for classes")?;
        let mut classes: Vec<Vec<Permutation>> = Vec::new();
        if order <= self.limits.exhaustive_enumeration {
            let elements = self.elements()?;
            let mut assigned: HashSet<Permutation> = HashSet::with_capacity(elements.len());
            for e in &elements {
                if assigned.contains(e) {
                    continue;
                }
                let class = self.conjugacy_class_of(e);
                assigned.extend(class.iter().cloned());
                classes.push(class);
            }
        } else {
            // Seeded random sampling; complete once the class sizes sum to |G|.
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_c1a55);
            let mut assigned: HashSet<Permutation> = HashSet::new();
            let mut total = 0u64;
            let max_draws = order.saturating_mul(20).max(10_000);
            let mut draws = 0u64;
            let id = self.identity();
            let class = self.conjugacy_class_of(&id);
            total += class.len() as u64;
            assigned.extend(class.iter().cloned());
            classes.push(class);
            while total < order {
                draws += 1;
                if draws > max_draws {
                    return Err(Error::Defect(format!("class sampling stalled at {total} of {order} elements")));
                }
                let x = self.random_element(&mut rng);
                if assigned.contains(&x) {
                    continue;
                }
                let class = self.conjugacy_class_of(&x);
                total += class.len() as u64;
                assigned.extend(class.iter().cloned());
                classes.push(class);
            }
            if total != order {
                return Err(Error::Defect(format!("class sizes sum to {total}, group order is {order}")));
            }
        }
        for c in classes.iter_mut() {
            c.sort_unstable();
        }
        classes.sort_by(|a, b| (a[0].order(), &a[0]).cmp(&(b[0].order(), &b[0])));
        Ok(classes)
    }

    pub fn conjugacy_classes(&self) -> Result<ClassData> {
        let classes = self.class_members()?;
        let class_sizes: Vec<u64> = classes.iter().map(|c| c.len() as u64).collect();
        let class_rep_orders = classes.iter().map(|c| c[0].order()).collect();
        let center_size = class_sizes.iter().filter(|&&s| s == 1).count() as u64;
        Ok(ClassData {
            num_classes: classes.len(),
            class_sizes,
            class_rep_orders,
            center_size,
            representatives: classes.into_iter().map(|mut c| c.swap_remove(0)).collect(),
        })
    }

    /// Smallest normal subgroup containing `elems`.
    pub fn normal_closure(&self, elems: &[Permutation]) -> PermGroup {
        let mut n = PermGroup::trivial(self.degree).with_limits(self.limits);
        let mut queue: Vec<Permutation> = elems.to_vec();
        let invs: Vec<Permutation> = self.generators.iter().map(|g| g.inverse()).collect();
        while let Some(x) = queue.pop() {
            if x.is_identity() || n.contains_unchecked(&x) {
                continue;
            }
            for (g, gi) in self.generators.iter().zip(&invs) {
                queue.push(gi.mul(&x).mul(g));
            }
            n.chain.extend(&x);
            n.generators.push(x);
        }
        n
    }

    pub fn derived_subgroup(&self) -> PermGroup {
        let g = &self.generators;
        let mut comms = Vec::new();
        for i in 0..g.len() {
            for j in i + 1..g.len() {
                comms.push(g[i].commutator(&g[j]));
            }
        }
        self.normal_closure(&comms)
    }

    pub fn center_order(&self) -> Result<u64> {
        self.bounded_order(self.limits.class_bound, "group order for center")?;
        let mut count = 0u64;
        self.for_each_element(|x| {
            if self.generators.iter().all(|g| x.mul(g) == g.mul(x)) {
                count += 1;
            }
        });
        Ok(count)
    }

    pub fn structure_report(&self) -> Result<StructureReport> {
        let order = self.bounded_order(self.limits.class_bound, "group order for structure report")?;
        let center_order = self.center_order()?;
        let derived_order = self.derived_subgroup().order().to_u64().unwrap();
        let abelianization_order = order / derived_order;
        Ok(StructureReport { center_order, derived_order, abelianization_order, is_perfect: abelianization_order == 1 })
    }

    pub fn is_simple(&self) -> Result<bool> {
        let order = self.bounded_order(self.limits.class_bound, "group order for simplicity test")?;
        if order == 1 {
            return Ok(false);
        }
        if self.is_abelian() {
            return Ok(crate::numtheory::is_prime(order));
        }
        let classes = self.conjugacy_classes()?;
        for rep in classes.representatives.iter().skip(1) {
            if self.normal_closure(std::slice::from_ref(rep)).order() != self.order() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn element_order_histogram(&self) -> Result<BTreeMap<u64, u64>> {
        self.bounded_order(self.limits.class_bound, "group order for histogram")?;
        let mut hist = BTreeMap::new();
        self.for_each_element(|g| *hist.entry(g.order()).or_insert(0) += 1);
        Ok(hist)
    }

    /// The action of `G` on its own elements by conjugation, `x -> g^-1 x g`.
    /// Points are the elements in sorted order.
    pub fn conjugation_action(&self) -> Result<PermGroup> {
        let elements = self.elements()?;
        let index: HashMap<&Permutation, usize> = elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let gens = self
            .generators
            .iter()
            .map(|g| {
                let images = elements.iter().map(|x| index[&x.conjugate_by(g)] as u32).collect();
                Permutation::from_images_unchecked(images)
            })
            .collect();
        PermGroup::new(elements.len(), gens)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(n: usize) -> PermGroup {
        let cycle: Vec<usize> = (0..n).collect();
        PermGroup::new(
            n,
            vec![Permutation::from_cycles(n, &[vec![0, 1]]).unwrap(), Permutation::from_cycles(n, &[cycle]).unwrap()],
        )
        .unwrap()
    }

    fn alt(n: usize) -> PermGroup {
        let gens = (2..n).map(|i| Permutation::from_cycles(n, &[vec![0, 1, i]]).unwrap()).collect();
        PermGroup::new(n, gens).unwrap()
    }

    #[test]
    fn permutation_basics() {
        let p = Permutation::parse_cycles(5, "(0 1 2)(3,4)").unwrap();
        assert_eq!(p.order(), 6);
        assert_eq!(p.to_string(), "(0 1 2)(3 4)");
        assert!(p.mul(&p.inverse()).is_identity());
        assert_eq!(p.pow(6), Permutation::identity(5));
        assert_eq!(p.pow(-1), p.inverse());
        assert!(!p.is_even());
        assert_eq!(Permutation::parse_cycles(3, "()").unwrap(), Permutation::identity(3));
    }

    #[test]
    fn right_action_convention() {
        let a = Permutation::parse_cycles(3, "(0 1)").unwrap();
        let b = Permutation::parse_cycles(3, "(1 2)").unwrap();
        // 0 -a-> 1 -b-> 2
        assert_eq!(a.mul(&b).image(0), 2);
    }

    #[test]
    fn malformed_permutation_names_repeated_image() {
        let err = Permutation::from_images(vec![0, 1, 1]).unwrap_err();
        assert!(err.to_string().contains("image 1 is repeated"), "{err}");
        assert!(Permutation::parse_cycles(3, "(0 1)(1 2)").is_err());
        assert!(Permutation::parse_cycles(3, "(0 3)").is_err());
    }

    #[test]
    fn degree_mismatch_is_domain_error() {
        let g = sym(4);
        let p = Permutation::identity(5);
        assert!(matches!(g.contains(&p), Err(Error::Domain(_))));
        assert!(matches!(PermGroup::new(4, vec![p]), Err(Error::Domain(_))));
    }

    #[test]
    fn symmetric_group_order() {
        let g = PermGroup::from_cycles(4, &["(0 1)", "(0 1 2 3)"]).unwrap();
        assert_eq!(g.order(), BigUint::from(24u32));
        assert_eq!(sym(6).order(), BigUint::from(720u32));
    }

    #[test]
    fn alt5_from_two_three_cycles() {
        let g = PermGroup::from_cycles(5, &["(0 1 2)", "(2 3 4)"]).unwrap();
        assert_eq!(g.order(), BigUint::from(60u32));
    }

    #[test]
    fn trivial_group() {
        let g = PermGroup::new(3, vec![]).unwrap();
        assert_eq!(g.order(), BigUint::one());
        assert!(g.generators().is_empty());
        assert!(g.contains(&Permutation::identity(3)).unwrap());
        assert!(!g.is_simple().unwrap());
    }

    #[test]
    fn membership() {
        let a4 = alt(4);
        assert!(a4.contains(&Permutation::identity(4)).unwrap());
        assert!(!a4.contains(&Permutation::parse_cycles(4, "(0 1)").unwrap()).unwrap());
        let a6 = alt(6);
        assert!(a6.contains(&Permutation::parse_cycles(6, "(0 1 2)(3 4 5)").unwrap()).unwrap());
        for g in a4.generators() {
            assert!(a4.contains(g).unwrap());
        }
    }

    #[test]
    fn orbits() {
        let z3 = PermGroup::from_cycles(5, &["(0 1 2)"]).unwrap();
        assert_eq!(z3.orbit_partition(), vec![vec![0, 1, 2], vec![3], vec![4]]);
        assert_eq!(sym(4).orbit_partition(), vec![vec![0, 1, 2, 3]]);
    }

    #[test]
    fn alt4_conjugation_orbits_are_classes() {
        let action = alt(4).conjugation_action().unwrap();
        let mut sizes: Vec<usize> = action.orbit_partition().iter().map(Vec::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 3, 4, 4]);
    }

    #[test]
    fn transitivity() {
        assert_eq!(sym(5).transitivity_degree(), Transitivity { k: 5, sharp: true });
        assert_eq!(alt(5).transitivity_degree(), Transitivity { k: 3, sharp: true });
        assert_eq!(alt(6).transitivity_degree(), Transitivity { k: 4, sharp: true });
        let z3 = PermGroup::from_cycles(5, &["(0 1 2)", "(3 4)"]).unwrap();
        assert_eq!(z3.transitivity_degree().k, 0);
    }

    #[test]
    fn class_equations() {
        let s4 = sym(4).conjugacy_classes().unwrap();
        assert_eq!(s4.class_sizes, vec![1, 6, 3, 8, 6]);
        assert_eq!(s4.class_rep_orders, vec![1, 2, 2, 3, 4]);
        let a5 = alt(5).conjugacy_classes().unwrap();
        assert_eq!(a5.class_sizes, vec![1, 15, 20, 12, 12]);
        let z3 = PermGroup::from_cycles(3, &["(0 1 2)"]).unwrap();
        let c = z3.conjugacy_classes().unwrap();
        assert_eq!(c.class_sizes, vec![1, 1, 1]);
        assert_eq!(c.center_size, 3);
    }

    #[test]
    fn sampled_classes_match_exhaustive() {
        let s6 = sym(6);
        let exhaustive = s6.conjugacy_classes().unwrap();
        let limits = Limits { exhaustive_enumeration: 10, ..Limits::default() };
        let sampled = s6.clone().with_limits(limits).conjugacy_classes().unwrap();
        assert_eq!(exhaustive, sampled);
        assert_eq!(sampled.num_classes, 11);
    }

    #[test]
    fn class_bound_is_resource_error() {
        let limits = Limits { class_bound: 100, ..Limits::default() };
        let err = sym(6).with_limits(limits).conjugacy_classes().unwrap_err();
        assert!(matches!(err, Error::Resource { .. }));
    }

    #[test]
    fn structure_of_s4() {
        let r = sym(4).structure_report().unwrap();
        assert_eq!(
            r,
            StructureReport { center_order: 1, derived_order: 12, abelianization_order: 2, is_perfect: false }
        );
        assert!(alt(5).structure_report().unwrap().is_perfect);
    }

    #[test]
    fn simplicity() {
        assert!(alt(5).is_simple().unwrap());
        assert!(!alt(4).is_simple().unwrap());
        assert!(!sym(5).is_simple().unwrap());
        let z7 = PermGroup::from_cycles(7, &["(0 1 2 3 4 5 6)"]).unwrap();
        assert!(z7.is_simple().unwrap());
        let z4 = PermGroup::from_cycles(4, &["(0 1 2 3)"]).unwrap();
        assert!(!z4.is_simple().unwrap());
    }

    #[test]
    fn z4_histogram() {
        let z4 = PermGroup::from_cycles(4, &["(0 1 2 3)"]).unwrap();
        let h = z4.element_order_histogram().unwrap();
        assert_eq!(h, BTreeMap::from([(1, 1), (2, 1), (4, 2)]));
    }

    #[test]
    fn stabilizer_descends() {
        let s5 = sym(5);
        let st = s5.stabilizer(2);
        assert_eq!(st.order(), BigUint::from(24u32));
        assert_eq!(st.orbit(2), vec![2]);
    }
}
