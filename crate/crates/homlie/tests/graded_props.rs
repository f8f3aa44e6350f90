mod common;

use common::{associativity, blocks_from_cuts, cocycle, space, symmetry, unitality};
use homlie::graded::{koszul_sign, signature, skew_normalize, sym_normalize, Permutation, Variant};
use proptest::prelude::*;

fn variants() -> impl Strategy<Value = Variant> {
    prop_oneof![Just(Variant::Skew), Just(Variant::Sym)]
}

/// Degrees of a small space and a key into it of the given length.
fn keyed(len: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = (Vec<i32>, Vec<u16>)> {
    (prop::collection::vec(-2i32..=2, 1..=4), len).prop_flat_map(|(degs, n)| {
        let d = degs.len() as u16;
        (Just(degs), prop::collection::vec(0..d, n))
    })
}

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::new(v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn shuffler_unitality(v in variants(), (degs, key) in keyed(2..=6), cut in 0usize..16) {
        let i = 1 + cut % (key.len() - 1);
        prop_assert!(unitality(v, &degs, &key, i));
    }

    #[test]
    fn shuffler_associativity(
        v in variants(),
        (degs, key) in keyed(1..=6),
        cuts in prop::collection::vec(0usize..7, 0..4),
        pick in 0usize..8,
    ) {
        let blocks = blocks_from_cuts(key.len(), &cuts);
        prop_assume!(blocks.len() >= 2);
        let k = pick % (blocks.len() - 1);
        prop_assert!(associativity(v, &degs, &key, &blocks, k));
    }

    #[test]
    fn shuffler_symmetry(
        v in variants(),
        (degs, key) in keyed(2..=6),
        cuts in prop::collection::vec(0usize..7, 1..4),
        pick in 0usize..8,
    ) {
        let blocks = blocks_from_cuts(key.len(), &cuts);
        prop_assume!(blocks.len() >= 2);
        let k = pick % (blocks.len() - 1);
        prop_assert!(symmetry(v, &degs, &key, &blocks, k));
    }

    #[test]
    fn koszul_sign_is_a_cocycle(
        (degs, p, q) in (0usize..=7).prop_flat_map(|n| {
            (prop::collection::vec(-3i32..=3, n), permutation(n), permutation(n))
        }),
    ) {
        let n = degs.len();
        prop_assert!(cocycle(&degs, &p, &q));
        prop_assert_eq!(koszul_sign(&Permutation::identity(n), &degs).unwrap(), 1);
        if n >= 2 {
            let t = Permutation::transposition(n, n - 2, n - 1);
            let odd = degs[n - 2] & degs[n - 1] & 1 == 1;
            prop_assert_eq!(koszul_sign(&t, &degs).unwrap(), if odd { -1 } else { 1 });
        }
    }

    #[test]
    fn normalization_is_idempotent_and_sign_consistent(
        v in variants(),
        ((degs, key), p) in keyed(0..=6).prop_flat_map(|(d, k)| {
            let n = k.len();
            (Just((d, k)), permutation(n))
        }),
    ) {
        let s = space(&degs);
        let norm = |k: &[u16]| match v {
            Variant::Skew => skew_normalize(&s, k),
            Variant::Sym => sym_normalize(&s, k),
        };
        let permuted = p.apply(&key);
        let key_degs: Vec<i32> = key.iter().map(|&i| s.degree(i)).collect();
        let eps = koszul_sign(&p, &key_degs).unwrap()
            * if v == Variant::Skew { signature(&p) } else { 1 };

        match (norm(&key), norm(&permuted)) {
            (Some((k1, o1)), Some((k2, o2))) => {
                prop_assert_eq!(&k1, &k2);
                // permuted = ±key in the (anti)symmetric power
                prop_assert_eq!(o1 ^ o2, eps < 0);
                prop_assert_eq!(norm(&k1), Some((k1.clone(), false)));
                prop_assert!(k1.windows(2).all(|w| w[0] <= w[1]));
            }
            (None, None) => {}
            (a, b) => prop_assert!(false, "vanishing disagrees: {:?} vs {:?}", a, b),
        }
    }
}
