use oostream::algebra::fl_subword;
use oostream::eval::{make_evaluator, EvaluatorKind, Subject};
use oostream::harness::{make_permutation, run_stream, PermKind, PermutationSpec};
use oostream::langkit::language;
use proptest::prelude::*;

fn agree(kind: EvaluatorKind, subject: &Subject, word: &[usize], seed: u64) -> bool {
    let n = word.len();
    let order = make_permutation(&PermutationSpec::new(PermKind::Random { seed }, n));
    let mut fast = make_evaluator(kind, subject, n).unwrap();
    let mut slow = make_evaluator(EvaluatorKind::Reference, subject, n).unwrap();
    run_stream(fast.as_mut(), word, &order).unwrap().0 == run_stream(slow.as_mut(), word, &order).unwrap().0
}

proptest! {
    #[test]
    fn random_orders_are_bijections(n in 0usize..200, seed: u64, block in 1usize..20) {
        for kind in [PermKind::Random { seed }, PermKind::BlockShuffle { block, seed }] {
            let mut order = make_permutation(&PermutationSpec::new(kind, n));
            order.sort_unstable();
            prop_assert_eq!(order, (1..=n).collect::<Vec<_>>());
        }
    }

    #[test]
    fn fl_subword_is_idempotent(u in prop::collection::vec(0usize..4, 0..40), k in 1usize..4) {
        let v = fl_subword(&u, k);
        prop_assert_eq!(fl_subword(&v, k), v.clone());
        prop_assert!(v.len() <= u.len());
    }

    #[test]
    fn interval_and_bitpacked_match_reference(word in prop::collection::vec(0usize..2, 0..80), seed: u64) {
        let subject = Subject::automaton(language("a*b*a*b*a*", "ab").unwrap());
        prop_assert!(agree(EvaluatorKind::Interval, &subject, &word, seed));
        prop_assert!(agree(EvaluatorKind::Bitpacked, &subject, &word, seed));
    }

    #[test]
    fn ad_hoc_evaluators_match_reference(word in prop::collection::vec(0usize..2, 0..80), seed: u64) {
        for (regex, kind) in [
            ("a*b*a*", EvaluatorKind::Aba),
            ("a*b*a*b*a*", EvaluatorKind::Ababa),
            ("a*b*a*b*a*b*", EvaluatorKind::Ababab),
            ("(ab)*", EvaluatorKind::Abstar),
        ] {
            let subject = Subject::automaton(language(regex, "ab").unwrap());
            prop_assert!(agree(kind, &subject, &word, seed), "{}", regex);
        }
    }

    #[test]
    fn flcom_matches_reference(word in prop::collection::vec(0usize..3, 0..60), seed: u64) {
        let subject = Subject::automaton(language("a.*b|c*", "abc").unwrap());
        prop_assert!(agree(EvaluatorKind::FlCom, &subject, &word, seed));
    }
}
