use proptest::prelude::*;
use ql_core::lattice::MAX_POINTS;
use ql_core::{DivisorClass, SurfaceModel};

fn surface_and_classes(count: usize) -> impl Strategy<Value = (SurfaceModel, Vec<DivisorClass>)> {
    (0..=MAX_POINTS).prop_flat_map(move |n| {
        let class = (-1000i64..=1000, prop::collection::vec(-1000i64..=1000, n))
            .prop_map(|(h, e)| DivisorClass::new(h, e));
        (Just(SurfaceModel::new(n).unwrap()), prop::collection::vec(class, count))
    })
}

proptest! {
    #[test]
    fn intersection_is_symmetric((s, c) in surface_and_classes(2)) {
        prop_assert_eq!(s.intersect(&c[0], &c[1]).unwrap(), s.intersect(&c[1], &c[0]).unwrap());
    }

    #[test]
    fn intersection_is_additive((s, c) in surface_and_classes(3)) {
        let sum = c[0].checked_add(&c[1]).unwrap();
        let lhs = s.intersect(&sum, &c[2]).unwrap();
        let rhs = s.intersect(&c[0], &c[2]).unwrap() + s.intersect(&c[1], &c[2]).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn negation_flips_sign((s, c) in surface_and_classes(2)) {
        prop_assert_eq!(s.intersect(&-&c[0], &c[1]).unwrap(), -s.intersect(&c[0], &c[1]).unwrap());
    }

    #[test]
    fn hodge_index_against_anticanonical((s, c) in surface_and_classes(1)) {
        let k = s.canonical_class();
        let dk = s.intersect(&c[0], &k).unwrap();
        prop_assert!(dk * dk >= s.self_intersection(&c[0]).unwrap() * s.self_intersection(&k).unwrap());
    }

    #[test]
    fn permuting_indices_preserves_the_form(
        (s, c) in surface_and_classes(2),
        seed in any::<u64>(),
    ) {
        let n = s.n();
        let mut perm: Vec<usize> = (0..n).collect();
        // Fisher-Yates with a tiny LCG; proptest shrinks the seed
        let mut state = seed;
        for i in (1..n).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (state >> 33) as usize % (i + 1));
        }
        let a = c[0].permuted(&perm).unwrap();
        let b = c[1].permuted(&perm).unwrap();
        prop_assert_eq!(s.intersect(&a, &b).unwrap(), s.intersect(&c[0], &c[1]).unwrap());
        prop_assert_eq!(s.anticanonical_degree(&a).unwrap(), s.anticanonical_degree(&c[0]).unwrap());
    }

    #[test]
    fn json_round_trip((_s, c) in surface_and_classes(1)) {
        let text = serde_json::to_string(&c[0]).unwrap();
        prop_assert_eq!(serde_json::from_str::<DivisorClass>(&text).unwrap(), c[0].clone());
    }
}
