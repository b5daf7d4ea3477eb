use fsgkit::codes_lattices::{build_golay, is_leech_vector, permute_word, psl2_23_generators};
use fsgkit::division_algebras::{Algebra, Element};
use fsgkit::moonshine::{delta_expansion, j_expansion, leech_theta_identity};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

#[test]
fn leech_closed_under_code_automorphisms() {
    let code = build_golay().unwrap();
    let gens = psl2_23_generators();
    for &w in code.words_of_weight(8).iter().take(50) {
        for g in &gens {
            assert!(code.contains(permute_word(g, w)));
        }
        let mut x = [0i32; 24];
        for (i, v) in x.iter_mut().enumerate() {
            if w >> i & 1 == 1 {
                *v = 2;
            }
        }
        assert!(is_leech_vector(&code, &x));
    }
}

#[test]
fn theta_has_no_norm_two_vectors() {
    let t = leech_theta_identity(6).unwrap();
    assert_eq!(t.coeff(1).unwrap(), BigInt::from(0));
    assert!(t.is_nonnegative());
}

#[test]
fn ramanujan_congruence() {
    // τ(n) ≡ σ_11(n) (mod 691).
    let d = delta_expansion(30).unwrap();
    for n in 1..=30i64 {
        let s: BigInt = (1..=n).filter(|k| n % k == 0).map(|k| BigInt::from(k).pow(11)).sum();
        let diff = d.coeff(n).unwrap() - s;
        assert_eq!(diff % 691, BigInt::from(0), "n = {n}");
    }
}

#[test]
fn j_coefficients_are_positive() {
    let j = j_expansion(30).unwrap();
    assert!(j.is_nonnegative());
}

fn element(alg: Algebra) -> impl Strategy<Value = Element> {
    proptest::collection::vec((-20i64..20, 1i64..8), alg.dim()).prop_map(move |v| {
        let coords = v.into_iter().map(|(n, d)| BigRational::new(n.into(), d.into())).collect();
        Element::new(alg, coords).unwrap()
    })
}

proptest! {
    #[test]
    fn octonion_norm_and_alternativity(a in element(Algebra::O), b in element(Algebra::O)) {
        prop_assert_eq!(a.mul(&b).unwrap().norm(), a.norm() * b.norm());
        prop_assert!(Element::associator(&a, &a, &b).unwrap().is_zero());
        prop_assert!(Element::associator(&a, &b, &b).unwrap().is_zero());
        prop_assert_eq!(a.mul(&b).unwrap().conj(), b.conj().mul(&a.conj()).unwrap());
    }

    #[test]
    fn quaternion_associativity(a in element(Algebra::H), b in element(Algebra::H), c in element(Algebra::H)) {
        prop_assert!(Element::associator(&a, &b, &c).unwrap().is_zero());
        if let Some(inv) = a.inverse() {
            prop_assert_eq!(a.mul(&inv).unwrap(), Element::one(Algebra::H));
        }
    }
}
