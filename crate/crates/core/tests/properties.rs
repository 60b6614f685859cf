use std::sync::Arc;

use proptest::prelude::*;
use solenoid::charmap::{conjugated_subgroup, CharMap, ModularMap};
use solenoid::complex::scramble;
use solenoid::moebius::{eval_word, in_ccw_arc, solve_oriented_edge_map, Gen};
use solenoid::{ExtendedRational, MoebiusMap, OrientedGeodesic, Subgroup, Tessellation};

fn gen() -> impl Strategy<Value = Gen> {
    prop_oneof![Just(Gen::S), Just(Gen::R), Just(Gen::R2)]
}

fn element(max_len: usize) -> impl Strategy<Value = MoebiusMap> {
    prop::collection::vec(gen(), 0..max_len).prop_map(|w| eval_word(&w))
}

fn rational() -> impl Strategy<Value = ExtendedRational> {
    prop_oneof![
        1 => Just(ExtendedRational::infinity()),
        9 => (-60i64..60, 1i64..40).prop_map(|(p, q)| ExtendedRational::new(p, q).unwrap()),
    ]
}

fn gamma(level: u64) -> Arc<Subgroup> {
    Arc::new(Subgroup::congruence(level).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn inverse_cancels(g in element(30), h in element(30)) {
        prop_assert!(g.compose(&g.inverse()).is_identity());
        let gh = g.compose(&h);
        prop_assert_eq!(gh.inverse(), h.inverse().compose(&g.inverse()));
    }

    #[test]
    fn action_is_a_left_action(g in element(20), h in element(20), x in rational()) {
        prop_assert_eq!(g.compose(&h).apply(&x), g.apply(&h.apply(&x)));
        prop_assert_eq!(g.inverse().apply(&g.apply(&x)), x);
    }

    #[test]
    fn normal_form_evaluates_back(g in element(40)) {
        prop_assert_eq!(eval_word(&g.word_in_generators()), g);
    }

    #[test]
    fn oriented_edge_map_is_unique(g in element(25)) {
        let e0 = OrientedGeodesic::standard();
        let image = g.apply_oriented(&e0);
        prop_assert_eq!(solve_oriented_edge_map(&e0, &image), Some(g.clone()));
        prop_assert_eq!(solve_oriented_edge_map(&image, &e0), Some(g.inverse()));
    }

    #[test]
    fn cyclic_order_is_preserved(g in element(20), a in rational(), y in rational(), b in rational()) {
        prop_assume!(a != y && y != b && a != b);
        prop_assert_eq!(in_ccw_arc(&a, &y, &b), in_ccw_arc(&g.apply(&a), &g.apply(&y), &g.apply(&b)));
    }

    #[test]
    fn congruence_membership_matches_reduction(g in element(30), level in 2u64..8) {
        let k = Subgroup::congruence(level).unwrap();
        let n = num_bigint::BigInt::from(level);
        let r = |x: &num_bigint::BigInt| ((x % &n) + &n) % &n;
        let [a, b, c, d] = g.entries();
        let one = num_bigint::BigInt::from(1);
        let minus_one = r(&(-one.clone()));
        let zero = num_bigint::BigInt::from(0);
        let diagonal = (r(a) == one && r(d) == one) || (r(a) == minus_one && r(d) == minus_one);
        let expected = diagonal && r(b) == zero && r(c) == zero;
        prop_assert_eq!(k.contains(&g), expected);
    }

    #[test]
    fn group_elements_preserve_the_farey_tessellation(g in element(20), level in 2u64..6) {
        let k = gamma(level);
        let t = Tessellation::farey_arc(k.clone());
        prop_assert!(t.is_preserved_by(&g));
        if k.contains(&g) {
            prop_assert!(t.transform(&g).equals(&t));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn flipping_twice_restores(seed in any::<u64>(), n in 0usize..4, level in 2u64..4) {
        let t = scramble(&Tessellation::farey_arc(gamma(level)), n, seed).unwrap();
        t.validate().unwrap();
        for l in 0..t.label_count() {
            let Ok((f, _)) = t.flip(l) else { continue };
            f.validate().unwrap();
            prop_assert!(!f.equals(&t));
            let back = f.flip(l).unwrap().0;
            prop_assert!(back.equals(&t));
            prop_assert_eq!(back.fingerprint(), t.fingerprint());
        }
    }

    #[test]
    fn json_round_trip(seed in any::<u64>(), n in 0usize..4) {
        let t = scramble(&Tessellation::farey_arc(gamma(3)), n, seed).unwrap();
        let back = Tessellation::from_json(&t.to_json()).unwrap();
        prop_assert!(back.equals(&t));
        prop_assert_eq!(back.distinguished(), t.distinguished());
    }

    #[test]
    fn characteristic_map_carries_farey_onto_the_tessellation(
        seed in any::<u64>(), n in 1usize..4, g in element(12), x in rational(),
    ) {
        let t = Arc::new(scramble(&Tessellation::farey_arc(gamma(2)), n, seed).unwrap());
        let h = Arc::new(CharMap::distinguished(t.clone()));
        let m = ModularMap::characteristic(h.clone());
        prop_assert_eq!(m.eval_oriented(&OrientedGeodesic::standard()), t.distinguished().clone());
        // Farey edges go to edges of t, and h is a bijection on the boundary
        let farey_edge = g.apply_geodesic(&OrientedGeodesic::standard().unoriented());
        prop_assert!(t.contains_edge(&m.eval_geodesic(&farey_edge)));
        prop_assert_eq!(h.eval_inverse(&h.eval(&x)), x.clone());
        prop_assert_eq!(m.inverse().compose(&m).eval(&x), x);
    }

    #[test]
    fn conjugated_subgroup_keeps_the_index(seed in any::<u64>(), n in 0usize..4, level in 2u64..4) {
        let t = Arc::new(scramble(&Tessellation::farey_arc(gamma(level)), n, seed).unwrap());
        let h = Arc::new(CharMap::distinguished(t.clone()));
        let conj = conjugated_subgroup(&h).unwrap();
        prop_assert_eq!(conj.index(), t.group().index());
        prop_assert!(conj.is_torsion_free());
    }
}
