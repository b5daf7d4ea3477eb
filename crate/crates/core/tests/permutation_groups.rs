use fsgkit::group_zoo::{construct_named, Family};
use fsgkit::perm_group::{PermGroup, Permutation, Transitivity};
use proptest::prelude::*;

fn m12() -> PermGroup {
    PermGroup::from_cycles(12, &["(0 1 2 3 4 5 6 7 8 9 10)", "(2 6 10 7)(3 9 4 5)", "(0 11)(1 10)(2 5)(3 7)(4 8)(6 9)"])
        .unwrap()
}

#[test]
fn m12_is_sharply_five_transitive() {
    let g = m12();
    assert_eq!(g.order_u64(), Some(95040));
    assert_eq!(g.transitivity_degree(), Transitivity { k: 5, sharp: true });
    assert_eq!(g.stabilizer(11).order_u64(), Some(7920));
    assert!(g.is_simple().unwrap());
}

#[test]
fn alternating_report() {
    let a5 = construct_named(Family::Alternating(5)).unwrap();
    let c = a5.conjugacy_classes().unwrap();
    let mut sizes = c.class_sizes.clone();
    sizes.sort_unstable();
    assert_eq!(sizes, vec![1, 12, 12, 15, 20]);
    let r = a5.structure_report().unwrap();
    assert!(r.is_perfect);
    assert_eq!(r.center_order, 1);
}

#[test]
fn symmetric_six_class_count() {
    let s6 = construct_named(Family::Symmetric(6)).unwrap();
    assert_eq!(s6.conjugacy_classes().unwrap().num_classes, 11);
    assert_eq!(s6.derived_subgroup().order_u64(), Some(360));
}

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<usize>>()).prop_shuffle().prop_map(|v| Permutation::from_images(v).unwrap())
}

proptest! {
    #[test]
    fn permutation_laws(a in perm(7), b in perm(7), c in perm(7)) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert!(a.mul(&a.inverse()).is_identity());
        prop_assert!(a.pow(a.order() as i64).is_identity());
        prop_assert_eq!(a.mul(&b).is_even(), a.is_even() == b.is_even());
        let round = Permutation::parse_cycles(7, &a.to_string()).unwrap();
        prop_assert_eq!(round, a);
    }

    #[test]
    fn orbit_stabilizer(a in perm(6), b in perm(6)) {
        let g = PermGroup::new(6, vec![a, b]).unwrap();
        let n = g.order_u64().unwrap();
        prop_assert_eq!(120 * 6 % n, 0);
        for x in 0..6 {
            prop_assert_eq!(g.orbit(x).len() as u64 * g.stabilizer(x).order_u64().unwrap(), n);
        }
        let classes = g.conjugacy_classes().unwrap();
        prop_assert_eq!(classes.class_sizes.iter().sum::<u64>(), n);
        prop_assert!(classes.class_sizes.iter().all(|s| n.is_multiple_of(*s)));
        prop_assert_eq!(g.elements().unwrap().len() as u64, n);
    }
}
