mod common;

use cyclo::equiv::{are_equivalent, canonical_key, CanonicalKey, EquivFlags};
use cyclo::graph::HGraph;
use cyclo::poly::{count_real_roots, IntPoly};
use cyclo::ring::{QuadInt, RingId};
use cyclo::spectra::is_cyclotomic_fast;
use proptest::prelude::*;

fn quad() -> impl Strategy<Value = QuadInt> {
    (common::ring_strategy(), -50i64..=50, -50i64..=50)
        .prop_map(|(r, a, b)| QuadInt::new(a, if r == RingId::Rational { 0 } else { b }, r).unwrap())
}

fn quad_triple() -> impl Strategy<Value = (QuadInt, QuadInt, QuadInt)> {
    common::ring_strategy().prop_flat_map(|r| {
        let b = if r == RingId::Rational { 0..=0 } else { -30i64..=30 };
        let one = (-30i64..=30, b).prop_map(move |(a, b)| QuadInt::new(a, b, r).unwrap());
        (one.clone(), one.clone(), one)
    })
}

fn monic_poly() -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(-9i64..=9, 0..5).prop_map(|mut c| {
        c.push(1);
        IntPoly::from_i64s(&c)
    })
}

fn small_poly() -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(-9i64..=9, 1..8).prop_map(|c| IntPoly::from_i64s(&c))
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn ring_laws((x, y, z) in quad_triple()) {
        prop_assert_eq!(x * y, y * x);
        prop_assert_eq!((x * y) * z, x * (y * z));
        prop_assert_eq!(x * (y + z), x * y + x * z);
        prop_assert_eq!((x * y).norm(), x.norm() * y.norm());
        prop_assert_eq!((x * y).conj(), x.conj() * y.conj());
    }

    #[test]
    fn conjugation_is_an_involution(x in quad()) {
        prop_assert_eq!(x.conj().conj(), x);
        let n = x * x.conj();
        prop_assert_eq!(n, QuadInt::int(x.norm(), x.ring));
    }

    #[test]
    fn orbit_rep_is_a_class_function(x in quad()) {
        let (rep, u) = x.orbit_rep();
        prop_assert_eq!(u * x, rep);
        for v in cyclo::ring::units(x.ring) {
            prop_assert_eq!((v * x).orbit_rep().0, rep);
        }
    }

    #[test]
    fn quad_text_round_trip(x in quad()) {
        prop_assert_eq!(QuadInt::parse(&x.to_string(), x.ring).unwrap(), x);
    }

    #[test]
    fn taylor_shift_inverts(p in small_poly(), c in -5i64..=5) {
        prop_assert_eq!(p.taylor_shift(c).taylor_shift(-c), p);
    }

    #[test]
    fn exact_division_recovers_factor(p in small_poly(), q in monic_poly()) {
        prop_assert_eq!(p.mul(&q).div_exact(&q), Some(p));
    }

    #[test]
    fn real_roots_bounded_by_degree(p in small_poly()) {
        prop_assume!(!p.is_zero());
        prop_assert!(count_real_roots(&p).unwrap() <= p.degree());
    }

    #[test]
    fn poly_text_round_trip(p in small_poly()) {
        prop_assert_eq!(IntPoly::parse(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn charpoly_is_an_equivalence_invariant(g in common::any_graph(), seed in any::<u64>(), gal in any::<bool>()) {
        let h = common::scramble(&g, seed, gal, false);
        prop_assert_eq!(g.charpoly(), h.charpoly());
        prop_assert!(are_equivalent(&g, &h, EquivFlags::STRONG).unwrap());
    }

    #[test]
    fn negation_breaks_strong_equivalence_when_trace_nonzero(g in common::any_graph()) {
        let trace: i64 = g.charges().iter().sum();
        let neg = g.negate();
        prop_assert!(are_equivalent(&g, &neg, EquivFlags::FULL).unwrap());
        if trace != 0 {
            prop_assert!(!are_equivalent(&g, &neg, EquivFlags::STRONG).unwrap());
        }
    }

    #[test]
    fn key_hex_round_trip(g in common::any_graph()) {
        let k = canonical_key(&g, EquivFlags::FULL);
        prop_assert_eq!(CanonicalKey::from_hex(&k.to_hex()).unwrap(), k);
    }

    #[test]
    fn graph_json_round_trip(g in common::any_graph()) {
        let s = serde_json::to_string(&g).unwrap();
        let back: HGraph = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn induced_subgraphs_stay_cyclotomic(g in common::cyclotomic_graph(), mask in any::<u16>()) {
        let keep: Vec<usize> = (0..g.n()).filter(|v| mask >> v & 1 == 1).collect();
        prop_assume!(!keep.is_empty());
        prop_assert!(is_cyclotomic_fast(&g.induced_subgraph(&keep).unwrap()));
    }
}
