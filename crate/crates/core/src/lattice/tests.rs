use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::group::{power_subgroup, socle, GroupShape};

fn shape(p: u64, ks: &[u32]) -> Arc<GroupShape> {
    Arc::new(GroupShape::new(p, ks).unwrap())
}

fn idx_set(h: &Subgroup) -> Vec<Vec<u64>> {
    h.elements().iter().map(|e| e.coords().to_vec()).collect()
}

#[test]
fn span_examples() {
    let g = shape(2, &[1, 3]);
    let h = Subgroup::span(&g, &[g.element(&[1, 2]).unwrap()]).unwrap();
    let mut got = idx_set(&h);
    got.sort();
    assert_eq!(got, vec![vec![0, 0], vec![0, 4], vec![1, 2], vec![1, 6]]);
    assert!(Subgroup::span(&g, &[]).unwrap().is_trivial());
    let basis: Vec<_> = (0..g.rank()).map(|i| g.basis(i)).collect();
    assert!(Subgroup::span(&g, &basis).unwrap().is_whole());
}

#[test]
fn power_and_socle_examples() {
    let g = shape(2, &[1, 3]);
    let p1 = power_subgroup(&g, 1);
    let mut got = idx_set(&p1);
    got.sort();
    assert_eq!(got, vec![vec![0, 0], vec![0, 2], vec![0, 4], vec![0, 6]]);
    assert_eq!(p1.iso_type(), GroupShape::new(2, &[2]).unwrap());
    let s = socle(&g, 1);
    let mut got = idx_set(&s);
    got.sort();
    assert_eq!(got, vec![vec![0, 0], vec![0, 4], vec![1, 0], vec![1, 4]]);
    assert!(power_subgroup(&g, 0).is_whole());
    assert!(power_subgroup(&g, 3).is_trivial());
    assert!(socle(&g, 3).is_whole());
}

#[test]
fn power_and_socle_match_brute_force_definitions() {
    for g in [shape(2, &[1, 3]), shape(3, &[1, 2]), shape(2, &[2, 2, 1])] {
        let p = g.prime() as i64;
        for n in 0..=g.max_exponent() {
            let pn = p.pow(n);
            let power: std::collections::BTreeSet<_> = g
                .elements()
                .map(|x| g.scalar_mul(pn, &x).unwrap())
                .collect();
            let killed: std::collections::BTreeSet<_> = g
                .elements()
                .filter(|x| g.scalar_mul(pn, x).unwrap().is_zero())
                .collect();
            let ps: std::collections::BTreeSet<_> =
                power_subgroup(&g, n).elements().into_iter().collect();
            let ss: std::collections::BTreeSet<_> = socle(&g, n).elements().into_iter().collect();
            assert_eq!(ps, power, "{g} n={n}");
            assert_eq!(ss, killed, "{g} m={n}");
        }
    }
}

#[test]
fn enumeration_counts() {
    let cap = 1 << 12;
    // Frozen from an independent brute-force closure enumeration.
    for (p, ks, count) in [
        (2, vec![1, 1], 5),
        (2, vec![1, 2], 8),
        (3, vec![1, 1], 6),
        (2, vec![1, 3], 11),
        (2, vec![2, 2], 15),
        (2, vec![1, 1, 2], 27),
        (2, vec![1, 1, 1], 16),
        (3, vec![1, 2], 10),
        (3, vec![1, 3], 14),
        (2, vec![1, 4], 14),
        (2, vec![1, 1, 3], 38),
        (2, vec![2, 3], 22),
    ] {
        let g = shape(p, &ks);
        assert_eq!(enumerate_subgroups(&g, cap).unwrap().len(), count, "{g}");
    }
}

#[test]
fn enumeration_cap() {
    let g = shape(2, &[1, 1, 1, 1, 1]);
    assert!(matches!(
        enumerate_subgroups(&g, 16),
        Err(crate::Error::EnumerationCapExceeded { .. })
    ));
}

fn gaussian_binomial(n: u32, k: u32, q: u128) -> u128 {
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..k {
        num *= q.pow(n - i) - 1;
        den *= q.pow(i + 1) - 1;
    }
    num / den
}

#[test]
fn elementary_counts_are_gaussian_binomial_sums() {
    for (p, r) in [
        (2u64, 1u32),
        (2, 2),
        (2, 3),
        (2, 4),
        (2, 5),
        (3, 2),
        (3, 3),
        (5, 2),
    ] {
        let g = shape(p, &vec![1; r as usize]);
        let expected: u128 = (0..=r).map(|k| gaussian_binomial(r, k, p as u128)).sum();
        let subs = enumerate_subgroups(&g, 1 << 12).unwrap();
        assert_eq!(subs.len() as u128, expected, "{g}");
    }
}

#[test]
fn enumeration_is_sorted_and_lagrange_holds() {
    for g in [shape(2, &[1, 1, 2]), shape(3, &[1, 2])] {
        let subs = enumerate_subgroups(&g, 1 << 12).unwrap();
        assert!(subs.first().unwrap().is_trivial());
        assert!(subs.last().unwrap().is_whole());
        for w in subs.windows(2) {
            assert_eq!(w[0].canonical_cmp(&w[1]), std::cmp::Ordering::Less);
        }
        for h in &subs {
            assert_eq!(g.order() % h.order(), 0);
            assert_eq!(Subgroup::span(&g, &h.generators()).unwrap(), *h);
        }
        let r = g.rank() as u32;
        let p = g.prime();
        let order_p = subs.iter().filter(|h| h.order() == p).count() as u64;
        assert_eq!(order_p, (p.pow(r) - 1) / (p - 1));
    }
}

#[test]
fn iso_type_examples() {
    let g = shape(2, &[1, 3]);
    let h = Subgroup::span(&g, &[g.element(&[1, 2]).unwrap()]).unwrap();
    assert_eq!(h.iso_type(), GroupShape::new(2, &[2]).unwrap());
    assert_eq!(Subgroup::whole(&g).iso_type(), *g);
    let t = Subgroup::trivial(&g).iso_type();
    assert!(t.is_trivial());
    assert_ne!(t, GroupShape::new(2, &[1]).unwrap());
}

#[test]
fn iso_type_round_trips_on_whole_group() {
    for ks in [
        vec![1],
        vec![1, 1, 2],
        vec![2, 3],
        vec![1, 2, 4],
        vec![3, 3],
    ] {
        for p in [2, 3] {
            let Ok(g) = GroupShape::new(p, &ks) else {
                continue;
            };
            let g = Arc::new(g);
            assert_eq!(Subgroup::whole(&g).iso_type(), *g);
        }
    }
}

#[test]
fn set_operations() {
    let g = shape(2, &[1, 3]);
    let s = socle(&g, 1);
    let pg = power_subgroup(&g, 1);
    let i = s.intersect(&pg).unwrap();
    let mut got = idx_set(&i);
    got.sort();
    assert_eq!(got, vec![vec![0, 0], vec![0, 4]]);
    let h = Subgroup::span(&g, &[g.element(&[1, 2]).unwrap()]).unwrap();
    assert_eq!(h.sum(&Subgroup::trivial(&g)).unwrap(), h);
    assert_eq!(s.sum(&pg).unwrap().order(), 8);
    for k in enumerate_subgroups(&g, 1 << 12).unwrap() {
        assert!(Subgroup::whole(&g).contains_subgroup(&k).unwrap());
    }
    let other = shape(2, &[1, 2]);
    assert!(h.intersect(&Subgroup::whole(&other)).is_err());
}

#[test]
fn canonical_generators_are_minimal() {
    let g = shape(2, &[1, 1, 2]);
    for h in enumerate_subgroups(&g, 1 << 12).unwrap() {
        let rank = h.iso_type().rank();
        assert_eq!(h.generator_indices().len(), rank);
    }
    // Lexicographically least: elements are tried in index order.
    let g = shape(2, &[1, 1]);
    let w = Subgroup::whole(&g);
    assert_eq!(w.generator_indices(), &[1, 2]);
}

proptest! {
    #[test]
    fn span_is_a_subgroup(ks in prop::collection::vec(1u32..4, 1..4), seeds in prop::collection::vec(0usize..10_000, 0..4)) {
        let g = shape(2, &ks);
        let n = g.order() as usize;
        let gens: Vec<usize> = seeds.iter().map(|s| s % n).collect();
        let h = Subgroup::span_indices(&g, &gens);
        prop_assert!(h.contains_idx(0));
        for &x in &gens {
            prop_assert!(h.contains_idx(x));
        }
        let members: Vec<usize> = h.member_indices().collect();
        for &a in &members {
            prop_assert!(h.contains_idx(g.neg_idx(a)));
            for &b in &members {
                prop_assert!(h.contains_idx(g.add_idx(a, b)));
            }
        }
        prop_assert_eq!(g.order() % h.order(), 0);
        prop_assert_eq!(Subgroup::span_indices(&g, h.generator_indices()), h.clone());
        prop_assert_eq!(h.iso_type().order(), h.order());
    }
}
