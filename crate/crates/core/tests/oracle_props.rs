mod common;

use std::cmp::Ordering;

use proptest::prelude::*;
use sl2jsr::characters::radius_cmp;
use sl2jsr::classifier::classify_pair;
use sl2jsr::oracle::{brute_force_max, verify_classification};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn search_never_beats_the_classifier(p in common::ln_pair(5), max_len in 1usize..=9) {
        let (a, b) = (common::quad(&p.a), common::quad(&p.b));
        let c = classify_pair(&a, &b).unwrap();
        let report = c.report.as_ref().expect("nonnegative pairs are in scope");
        let found = brute_force_max(&p, max_len, 1, false).unwrap();
        prop_assert_ne!(radius_cmp(&found.radius, &report.radius), Ordering::Greater);
        let v = verify_classification(&a, &b, max_len, 1).unwrap();
        prop_assert!(v.agree, "{}", v);
    }

    #[test]
    fn workers_do_not_change_reports(p in common::ln_pair(5), workers in 2usize..6) {
        let one = brute_force_max(&p, 9, 1, true).unwrap();
        let many = brute_force_max(&p, 9, workers, true).unwrap();
        prop_assert_eq!(one, many);
    }
}
