//! Cross-module properties on randomly chosen small shapes.

use std::sync::Arc;

use proptest::prelude::*;

use charsub::classify::classify;
use charsub::group::{power_subgroup, socle, GroupShape};
use charsub::invariance::{fi_from_profiles, projection_profile, GroupContext};
use charsub::lattice::enumerate_subgroups;

fn small_shape() -> impl Strategy<Value = Arc<GroupShape>> {
    (
        prop::sample::select(vec![2u64, 3]),
        prop::collection::vec(1u32..=3, 1..=3),
    )
        .prop_filter("order ≤ 256", |(p, ks)| p.pow(ks.iter().sum()) <= 256)
        .prop_map(|(p, ks)| Arc::new(GroupShape::new(p, &ks).unwrap()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn fully_invariant_implies_characteristic(g in small_shape()) {
        let ctx = GroupContext::new(Arc::clone(&g));
        let ch = ctx.enumerate_characteristic();
        for h in ctx.enumerate_fully_invariant() {
            prop_assert!(ch.contains(&h));
            prop_assert!(ctx.is_characteristic(&h));
        }
    }

    #[test]
    fn classical_subgroups_are_fully_invariant(g in small_shape()) {
        let ctx = GroupContext::new(Arc::clone(&g));
        for n in 0..=g.max_exponent() {
            prop_assert!(ctx.is_fully_invariant(&power_subgroup(&g, n)));
            prop_assert!(ctx.is_fully_invariant(&socle(&g, n)));
        }
    }

    #[test]
    fn walk_agrees_with_filtered_enumeration(g in small_shape()) {
        let ctx = GroupContext::new(Arc::clone(&g));
        let all = enumerate_subgroups(&g, 256).unwrap();
        let ch: Vec<_> = all.iter().filter(|h| ctx.is_characteristic(h)).cloned().collect();
        prop_assert_eq!(ctx.enumerate_characteristic(), ch);
        prop_assert_eq!(fi_from_profiles(&ctx).unwrap(), ctx.enumerate_fully_invariant());
    }

    #[test]
    fn profiles_are_admissible(g in small_shape()) {
        let ctx = GroupContext::new(Arc::clone(&g));
        for h in ctx.enumerate_characteristic() {
            prop_assert!(projection_profile(&ctx, &h).unwrap().is_admissible());
        }
    }

    #[test]
    fn verdict_implications(g in small_shape()) {
        let v = classify(&g);
        prop_assert!(!v.is_strongly_ic || (v.is_ic && v.is_strongly_ifi));
        prop_assert!(!v.is_ic || v.is_ifi);
        prop_assert_eq!(v.is_ifi, v.criterion_ifi);
        prop_assert!(!v.is_weakly_ic);
    }
}
