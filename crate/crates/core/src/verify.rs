//! The end-to-end acceptance checks, shared by the test suite and the CLI.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::time::Instant;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::codes_lattices as cl;
use crate::division_algebras::{associativity_probe, Algebra, DEFAULT_PROBE_SEED};
use crate::error::Result;
use crate::finite_field::FieldSpec;
use crate::group_zoo::{character_table, construct_named, small_group_catalog, Family};
use crate::matrix_group::{
    order_formula, projective_action, simple_census, FamilyOrderQuery, LieFamily, ProjectiveVariant,
};
use crate::moonshine;
use crate::numtheory;
use crate::perm_group::{PermGroup, Permutation};

#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
}

type Check = fn() -> std::result::Result<String, String>;

pub const CHECKS: [(u8, &str, Check); 11] = [
    (1, "order formulas", check_order_formulas),
    (2, "simple census to 10000", check_census),
    (3, "Mathieu chain from the Golay code", check_mathieu),
    (4, "Golay weights and Steiner system", check_golay),
    (5, "Leech kissing number", check_leech),
    (6, "moonshine coefficients and decompositions", check_moonshine),
    (7, "Monster order constants", check_monster),
    (8, "small group catalog", check_catalog),
    (9, "S3 and S4 character tables", check_character_tables),
    (10, "Alt_8 versus PSL_3(4)", check_order_20160),
    (11, "property suites", check_properties),
];

fn run_check(id: u8, name: &'static str, f: Check) -> CheckOutcome {
    let t = Instant::now();
    let r = f();
    let millis = t.elapsed().as_millis();
    let (passed, detail) = match r {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    CheckOutcome { id, name, passed, detail, millis }
}

pub fn run(id: u8) -> Option<CheckOutcome> {
    CHECKS.iter().find(|c| c.0 == id).map(|&(id, name, f)| run_check(id, name, f))
}

pub fn run_all() -> Vec<CheckOutcome> {
    CHECKS.iter().map(|&(id, name, f)| run_check(id, name, f)).collect()
}

pub fn format_line(o: &CheckOutcome) -> String {
    format!("[{}] {:>2} {:<44} {:>7} ms  {}", if o.passed { "PASS" } else { "FAIL" }, o.id, o.name, o.millis, o.detail)
}

fn e2s<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn check_order_formulas() -> std::result::Result<String, String> {
    use LieFamily::*;
    let cases: [(LieFamily, u32, u64, u64); 11] = [
        (GL, 3, 2, 168),
        (GL, 4, 2, 20160),
        (PSL, 3, 4, 20160),
        (GL, 4, 3, 24261120),
        (SL, 4, 3, 12130560),
        (PSL, 4, 3, 6065280),
        (SL, 3, 3, 5616),
        (G2, 0, 2, 12096),
        (PSL, 2, 9, 360),
        (SL, 2, 8, 504),
        (PSL, 2, 11, 660),
    ];
    for (family, n, q, want) in cases {
        let got = e2s(order_formula(FamilyOrderQuery { family, n, q }))?.order;
        ensure(got == BigUint::from(want), || format!("{family}(n={n}, q={q}) = {got}, expected {want}"))?;
    }
    Ok(format!("{} orders reproduced", cases.len()))
}

const CENSUS_10000: [u64; 16] =
    [60, 168, 360, 504, 660, 1092, 2448, 2520, 3420, 4080, 5616, 6048, 6072, 7800, 7920, 9828];

fn check_census() -> std::result::Result<String, String> {
    let c = e2s(simple_census(10000))?;
    let abelian: Vec<u64> = c.iter().filter(|e| e.is_abelian).map(|e| e.order.to_u64().unwrap()).collect();
    let nonab: Vec<u64> = c.iter().filter(|e| !e.is_abelian).map(|e| e.order.to_u64().unwrap()).collect();
    ensure(abelian == [2, 3, 5, 7], || format!("abelian entries {abelian:?}"))?;
    ensure(nonab == CENSUS_10000, || format!("nonabelian orders {nonab:?}"))?;
    let has =
        |order: u64, name: &str| c.iter().any(|e| e.order == BigUint::from(order) && e.names.iter().any(|n| n == name));
    for (o, n) in
        [(60, "Alt_5"), (168, "GL_3(2)"), (360, "Alt_6"), (360, "PSL_2(9)"), (2520, "Alt_7"), (6048, "PSU_3(9)")]
    {
        ensure(has(o, n), || format!("{n} missing at order {o}"))?;
    }
    ensure(c.iter().any(|e| e.is_sporadic && e.order == BigUint::from(7920u32) && e.names == ["M11"]), || {
        "M11 missing at 7920".into()
    })?;
    Ok(format!("{} entries ({} nonabelian)", c.len(), nonab.len()))
}

fn check_mathieu() -> std::result::Result<String, String> {
    let code = e2s(cl::build_golay())?;
    let m = e2s(cl::mathieu_m24(&code))?;
    let want = [244823040u64, 10200960, 443520].map(BigUint::from);
    let got = [m.order.clone(), m.point_stabilizer_order.clone(), m.two_point_stabilizer_order.clone()];
    ensure(got == want, || format!("chain orders {got:?}"))?;
    ensure(m.transitivity.k == 5 && !m.transitivity.sharp, || format!("transitivity {:?}", m.transitivity))?;
    ensure(m.order_factorization == [(2, 10), (3, 3), (5, 1), (7, 1), (11, 1), (23, 1)], || {
        format!("factorization {:?}", m.order_factorization)
    })?;
    Ok("244823040 > 10200960 > 443520, 5-transitive".into())
}

fn check_golay() -> std::result::Result<String, String> {
    let code = e2s(cl::build_golay())?;
    let dist: Vec<(u32, u64)> = code.weight_distribution().into_iter().collect();
    ensure(dist == [(0, 1), (8, 759), (12, 2576), (16, 759), (24, 1)], || format!("weights {dist:?}"))?;
    let r = cl::octad_steiner_check(&code);
    ensure(r.passed && r.exhaustive && r.counting_identity, || format!("{r:?}"))?;
    Ok("weights 1/759/2576/759/1, S(5,8,24) exhaustive".into())
}

fn check_leech() -> std::result::Result<String, String> {
    let code = e2s(cl::build_golay())?;
    let shapes = cl::leech_minimal_vectors(&code);
    for s in &shapes {
        ensure(s.count == s.closed_form, || format!("{:?}: {} vs {}", s.shape, s.count, s.closed_form))?;
    }
    let total: u64 = shapes.iter().map(|s| s.count).sum();
    let theta = e2s(cl::leech_theta_prefix(3))?;
    let n4 = theta.coeff(2).and_then(|c| c.to_u64());
    ensure(total == 196560 && n4 == Some(total), || format!("shapes {total}, theta {n4:?}"))?;
    Ok("1104 + 97152 + 98304 = 196560 = theta q^2".into())
}

fn check_moonshine() -> std::result::Result<String, String> {
    let j = e2s(moonshine::j_expansion(3))?;
    let jc: Vec<String> = j.coeffs().iter().map(|c| c.to_string()).collect();
    ensure(jc == ["1", "744", "196884", "21493760", "864299970"], || format!("j = {jc:?}"))?;
    let s = e2s(moonshine::j_cube_root(3))?;
    let sc: Vec<String> = s.coeffs().iter().map(|c| c.to_string()).collect();
    ensure(sc == ["1", "248", "4124", "34752"], || format!("cube root = {sc:?}"))?;
    let ids = e2s(moonshine::moonshine_decompositions())?;
    if let Some(bad) = ids.iter().find(|i| !i.passed) {
        return Err(format!("{} fails: {} != {}", bad.label, bad.lhs, bad.rhs));
    }
    Ok(format!("{} identities exact", ids.len()))
}

fn check_monster() -> std::result::Result<String, String> {
    let m = moonshine::monster_order();
    let digits = m.to_string().len();
    ensure(digits == 54, || format!("{digits} digits"))?;
    let divides = |p: u32| (&m % p).to_u64() == Some(0);
    ensure(divides(71), || "71 does not divide".into())?;
    for p in [37, 43, 53, 61, 67] {
        ensure(!divides(p), || format!("{p} divides"))?;
    }
    ensure([47u64, 59, 71].iter().product::<u64>() == 196883, || "196883 factorization".into())?;
    ensure(numtheory::factorize(196883) == [(47, 1), (59, 1), (71, 1)], || "196883 factorization".into())?;
    Ok("54 digits, 71 | M, no 37/43/53/61/67".into())
}

fn check_catalog() -> std::result::Result<String, String> {
    let cat = e2s(small_group_catalog())?;
    let abelian = cat.iter().filter(|e| e.is_abelian).count();
    ensure(cat.len() == 28 && abelian == 20, || format!("{} entries, {abelian} abelian", cat.len()))?;
    for e in &cat {
        let class_sum: u64 = e.class_sizes.iter().sum();
        let burnside: u64 = e.irrep_degrees.iter().map(|d| d * d).sum();
        ensure(class_sum == e.order && burnside == e.order && e.irrep_degrees.len() == e.class_sizes.len(), || {
            format!("{}: classes {:?}, degrees {:?}", e.name, e.class_sizes, e.irrep_degrees)
        })?;
    }
    let get = |name: &str| cat.iter().find(|e| e.name == name).ok_or(format!("{name} missing"));
    let sorted = |v: &[u64]| {
        let mut v = v.to_vec();
        v.sort_unstable();
        v
    };
    let d4 = get("D4")?;
    ensure(sorted(&d4.class_sizes) == [1, 1, 2, 2, 2], || format!("D4 classes {:?}", d4.class_sizes))?;
    let q = get("Q")?;
    ensure(sorted(&q.class_sizes) == [1, 1, 2, 2, 2], || format!("Q classes {:?}", q.class_sizes))?;
    let order4: Vec<u64> =
        q.class_sizes.iter().zip(&q.class_rep_orders).filter(|(_, &o)| o == 4).map(|(&s, _)| s).collect();
    ensure(order4 == [2, 2, 2], || format!("Q order-4 classes {order4:?}"))?;
    let d5 = get("D5")?;
    ensure(sorted(&d5.irrep_degrees) == [1, 1, 2, 2], || format!("D5 degrees {:?}", d5.irrep_degrees))?;
    Ok("28 entries, 20 abelian, Burnside sums exact".into())
}

/// Rows of a printed table, with columns keyed by `(class size, element order)`.
fn compare_table(g: &PermGroup, columns: &[(u64, u64)], rows: &[&[i64]]) -> std::result::Result<(), String> {
    let t = e2s(character_table(g))?;
    e2s(t.check_orthogonality())?;
    let perm: Vec<usize> = columns
        .iter()
        .map(|key| {
            (0..t.num_classes())
                .find(|&k| (t.class_sizes[k], t.class_rep_orders[k]) == *key)
                .ok_or(format!("no class with size/order {key:?}"))
        })
        .collect::<std::result::Result<_, _>>()?;
    ensure(t.num_classes() == rows.len(), || format!("{} classes", t.num_classes()))?;
    let ours: Vec<Vec<i64>> = (0..t.num_classes())
        .map(|i| {
            let r = t.integer_row(i).ok_or(format!("row {i} is not rational"))?;
            Ok(perm.iter().map(|&k| r[k]).collect())
        })
        .collect::<std::result::Result<_, String>>()?;
    for row in rows {
        ensure(ours.iter().any(|r| r == row), || format!("printed row {row:?} not found in {ours:?}"))?;
    }
    Ok(())
}

fn check_character_tables() -> std::result::Result<String, String> {
    let s3 = e2s(construct_named(Family::Symmetric(3)))?;
    compare_table(&s3, &[(1, 1), (3, 2), (2, 3)], &[&[1, 1, 1], &[1, -1, 1], &[2, 0, -1]])?;
    let s4 = e2s(construct_named(Family::Symmetric(4)))?;
    // The printed 2A column holds the values on double transpositions.
    compare_table(
        &s4,
        &[(1, 1), (3, 2), (6, 2), (8, 3), (6, 4)],
        &[&[1, 1, 1, 1, 1], &[1, 1, -1, 1, -1], &[2, 2, 0, -1, 0], &[3, -1, 1, 0, -1], &[3, -1, -1, 0, 1]],
    )?;
    Ok("both tables match, orthogonality exact".into())
}

fn check_order_20160() -> std::result::Result<String, String> {
    let alt8 = e2s(construct_named(Family::Alternating(8)))?;
    let psl34 = e2s(projective_action(ProjectiveVariant::PSL, 3, &e2s(FieldSpec::new(2, 2))?))?;
    ensure(alt8.order_u64() == Some(20160) && psl34.order_u64() == Some(20160), || "orders differ".into())?;
    let ha = e2s(alt8.element_order_histogram())?;
    let hp = e2s(psl34.element_order_histogram())?;
    let a15 = ha.get(&15).copied().unwrap_or(0);
    let p15 = hp.get(&15).copied().unwrap_or(0);
    ensure(ha != hp && a15 > 0 && p15 == 0, || format!("order-15 counts {a15} vs {p15}"))?;
    Ok(format!("Alt_8 has {a15} elements of order 15, PSL_3(4) none"))
}

/// Ring and field axioms over every element pair and triple.
pub fn field_axioms_exhaustive(spec: &FieldSpec) -> std::result::Result<(), String> {
    let t = spec.tables();
    let q = t.q() as u32;
    for a in 0..q {
        if t.add(a, 0) != a || t.mul(a, 1) != a || t.add(a, t.neg(a)) != 0 {
            return Err(format!("identity or negation fails at {a} in F_{q}"));
        }
        if a != 0 && t.mul(a, t.inv(a)) != 1 {
            return Err(format!("no inverse for {a} in F_{q}"));
        }
        for b in 0..q {
            if t.add(a, b) != t.add(b, a) || t.mul(a, b) != t.mul(b, a) {
                return Err(format!("commutativity fails at ({a}, {b}) in F_{q}"));
            }
            let (ab, mab) = (t.add(a, b), t.mul(a, b));
            for c in 0..q {
                if t.add(ab, c) != t.add(a, t.add(b, c))
                    || t.mul(mab, c) != t.mul(a, t.mul(b, c))
                    || t.mul(a, t.add(b, c)) != t.add(mab, t.mul(a, c))
                {
                    return Err(format!("associativity or distributivity fails at ({a}, {b}, {c}) in F_{q}"));
                }
            }
        }
    }
    let x = spec.from_index(q as u64 - 1);
    let y = spec.from_index(q as u64 / 2);
    let direct = spec.mul(&x, &y).map_err(|e| e.to_string())?;
    if spec.index(&direct) as u32 != t.mul(q - 1, q / 2) {
        return Err(format!("tables disagree with direct arithmetic in F_{q}"));
    }
    Ok(())
}

fn zoo() -> Vec<Family> {
    let mut v = Vec::new();
    v.extend((1..=12).map(Family::Cyclic));
    v.extend((3..=10).map(Family::Dihedral));
    v.extend((2..=6).map(Family::Dicyclic));
    v.extend((1..=4).map(Family::Clifford));
    v.extend((1..=5).map(Family::CliffordEven));
    v.extend((1..=7).map(Family::Symmetric));
    v.extend((3..=7).map(Family::Alternating));
    v.extend([Family::Vierergruppe, Family::Quaternion, Family::Frobenius21]);
    v.extend([(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2)].map(|(p, m)| Family::ElementaryAbelian { p, m }));
    v
}

fn closure_size(g: &PermGroup) -> usize {
    let mut seen: HashSet<Permutation> = HashSet::new();
    let id = g.identity();
    let mut queue = VecDeque::from([id.clone()]);
    seen.insert(id);
    while let Some(x) = queue.pop_front() {
        for s in g.generators() {
            let y = x.mul(s);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen.len()
}

fn check_group_laws(family: Family) -> std::result::Result<(), String> {
    let g = e2s(construct_named(family))?;
    let n = g.order_u64().ok_or("order overflow")?;
    let hist: BTreeMap<u64, u64> = e2s(g.element_order_histogram())?;
    ensure(hist.values().sum::<u64>() == n, || format!("{family}: histogram total"))?;
    ensure(hist.keys().all(|o| n % o == 0), || format!("{family}: element order not dividing {n}"))?;
    for (p, _) in numtheory::factorize(n) {
        ensure(hist.contains_key(&p), || format!("{family}: no element of order {p}"))?;
    }
    if let Some((_, e)) = numtheory::prime_power(n).filter(|_| n > 1) {
        let z = e2s(g.center_order())?;
        ensure(z > 1, || format!("{family}: p-group of exponent {e} with trivial center"))?;
    }
    if n <= 5040 {
        let c = closure_size(&g) as u64;
        ensure(c == n, || format!("{family}: BSGS order {n}, enumeration {c}"))?;
    }
    Ok(())
}

fn check_properties() -> std::result::Result<String, String> {
    let qs: Vec<(u64, u32)> = (2..=256u64).filter_map(numtheory::prime_power).collect();
    let workers = std::thread::available_parallelism().map_or(4, |n| n.get()).min(16);
    let failures: Vec<String> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let qs = &qs;
                s.spawn(move || {
                    let mut errs = Vec::new();
                    for &(p, f) in qs.iter().skip(w).step_by(workers) {
                        let spec = match FieldSpec::new(p, f) {
                            Ok(s) => s,
                            Err(e) => {
                                errs.push(e.to_string());
                                continue;
                            }
                        };
                        if let Err(e) = field_axioms_exhaustive(&spec) {
                            errs.push(e);
                        }
                        if spec.frobenius_order() != f {
                            errs.push(format!("Frobenius order on F_{} is not {f}", spec.q()));
                        }
                    }
                    errs
                })
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
    });
    if let Some(e) = failures.first() {
        return Err(e.clone());
    }
    let families = zoo();
    for &f in &families {
        check_group_laws(f)?;
    }
    for alg in [Algebra::H, Algebra::O] {
        let r = e2s(associativity_probe(alg, 100, DEFAULT_PROBE_SEED))?;
        ensure(r.passed, || format!("{alg} probe: {r:?}"))?;
    }
    Ok(format!("{} fields, {} zoo groups, H and O probes", qs.len(), families.len()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_and_formulas() {
        assert!(run(1).unwrap().passed);
        assert!(run(7).unwrap().passed);
        assert!(run(99).is_none());
    }

    #[test]
    fn small_field_axioms() {
        for (p, f) in [(2, 1), (2, 3), (3, 2), (7, 1)] {
            field_axioms_exhaustive(&FieldSpec::new(p, f).unwrap()).unwrap();
        }
    }

    #[test]
    fn zoo_laws() {
        for f in [Family::Quaternion, Family::Dihedral(5), Family::Clifford(3)] {
            check_group_laws(f).unwrap();
        }
    }
}
