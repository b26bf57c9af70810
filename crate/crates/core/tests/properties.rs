use poslab::algebra::{classify, syntactic_quotient};
use poslab::random::random_trim_algebra;
use poslab::words::{UpWord, Word};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn positional_algebras_are_aperiodic(seed in any::<u64>()) {
        let r = classify(&random_trim_algebra(6, seed)).unwrap();
        prop_assert!(!r.edge_positional || (r.aperiodic_syntactic && r.one_player_positional));
        prop_assert!(!r.state_positional || r.aperiodic_syntactic);
    }

    #[test]
    fn quotient_and_normal_form_keep_membership(
        seed in any::<u64>(),
        prefix in prop::collection::vec(0usize..8, 0..6),
        period in prop::collection::vec(0usize..8, 1..6),
    ) {
        let a = random_trim_algebra(6, seed);
        let k = a.alphabet().len();
        let w = UpWord::new(Word(prefix.iter().map(|l| l % k).collect()), Word(period.iter().map(|l| l % k).collect())).unwrap();
        let m = a.up_membership(&w).unwrap();
        prop_assert_eq!(syntactic_quotient(&a).unwrap().up_membership(&w).unwrap(), m);
        prop_assert_eq!(a.up_membership(&w.normalize()).unwrap(), m);
    }
}
