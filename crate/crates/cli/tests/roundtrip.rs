use cyclic_descents::{to_canonical_cycles, ColoredPermutation, SignedPermutation};
use cyclic_descents_cli::{parse_colored, parse_permutation_text, parse_signed, PermText};
use proptest::prelude::*;

fn signed(max: usize) -> impl Strategy<Value = SignedPermutation> {
    (0..=max).prop_flat_map(|n| {
        let word = Just((1..=n as i32).collect::<Vec<_>>()).prop_shuffle();
        (word, proptest::collection::vec(any::<bool>(), n)).prop_map(|(w, signs)| {
            let v = w.into_iter().zip(signs).map(|(x, neg)| if neg { -x } else { x }).collect();
            SignedPermutation::new(v).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn one_line_text_round_trips(s in signed(20)) {
        prop_assert_eq!(parse_signed(&s.to_string()).unwrap(), s);
    }

    #[test]
    fn cycle_text_round_trips(s in signed(20).prop_filter("nonempty", |s| s.degree() > 0)) {
        let text = to_canonical_cycles(&s).to_string();
        match parse_permutation_text(&text).unwrap() {
            PermText::Cycles(c) => prop_assert_eq!(&c.to_string(), &text),
            other => prop_assert!(false, "parsed as {:?}", other),
        }
        prop_assert_eq!(parse_signed(&text).unwrap(), s);
    }

    #[test]
    fn colored_text_round_trips(
        s in signed(10).prop_map(|s| s.images().iter().map(|v| v.unsigned_abs()).collect::<Vec<_>>()),
        r in 1u32..6,
        seed in proptest::collection::vec(any::<u32>(), 10),
    ) {
        let tau = s.iter().zip(&seed).map(|(_, c)| c % r).collect();
        let p = ColoredPermutation::new(s, tau, r).unwrap();
        prop_assert_eq!(parse_colored(&p.to_string(), r).unwrap(), p.clone());
        prop_assert_eq!(parse_colored(&p.cycle_string(), r).unwrap(), p);
    }

    #[test]
    fn garbage_never_panics(text in "[\\[\\]()0-9,;+\\-^ ]{0,24}") {
        let _ = parse_permutation_text(&text);
        let _ = parse_colored(&text, 3);
    }
}
