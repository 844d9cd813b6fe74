use crosscap::oracle::word_matrix;
use crosscap::word::{commutator, conjugate, parse_word, Word};
use crosscap::{Generator, SurfaceSpec};
use proptest::prelude::*;

fn generator() -> impl Strategy<Value = Generator> {
    prop_oneof![
        (1usize..6).prop_map(|i| Generator::a(i).unwrap()),
        Just(Generator::y()),
        Just(Generator::b()),
    ]
}

fn word() -> impl Strategy<Value = Word> {
    prop::collection::vec((generator(), -3i64..=3), 0..20).prop_map(|parts| {
        parts
            .into_iter()
            .fold(Word::identity(), |w, (g, e)| w.concat(&Word::power(g, e)))
    })
}

proptest! {
    #[test]
    fn reduction_is_idempotent(w in word()) {
        let r = w.reduce();
        prop_assert!(r.is_reduced());
        prop_assert_eq!(r.reduce(), r);
    }

    #[test]
    fn inverse_cancels(w in word()) {
        prop_assert!((&w * &w.inverse()).is_empty());
        prop_assert_eq!(w.inverse().inverse().reduce(), w.reduce());
    }

    #[test]
    fn display_parses_back(w in word()) {
        let r = w.reduce();
        prop_assert_eq!(parse_word(&r.to_string()).unwrap(), r);
    }

    #[test]
    fn multiplication_is_associative(u in word(), v in word(), x in word()) {
        prop_assert_eq!(&(&u * &v) * &x, &u * &(&v * &x));
    }

    #[test]
    fn exponent_sum_is_additive(u in word(), v in word()) {
        let y = Generator::y();
        prop_assert_eq!((&u * &v).exponent_sum(&y), u.exponent_sum(&y) + v.exponent_sum(&y));
    }

    #[test]
    fn oracle_is_a_homomorphism(u in word(), v in word()) {
        let spec = SurfaceSpec::closed(7).unwrap();
        let m = word_matrix(&spec, &u.concat(&v)).unwrap();
        prop_assert_eq!(m, word_matrix(&spec, &u).unwrap().mul(&word_matrix(&spec, &v).unwrap()));
    }

    #[test]
    fn commutators_vanish_on_exponent_sums(u in word(), v in word()) {
        let c = commutator(&u, &v);
        for g in c.generators().cloned().collect::<Vec<_>>() {
            prop_assert_eq!(c.exponent_sum(&g), 0);
        }
        let k = conjugate(&u, &v);
        prop_assert_eq!(k.letter_len() % 2, v.reduce().letter_len() % 2);
    }
}
