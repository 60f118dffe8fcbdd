use std::sync::Arc;

use super::*;

fn verdict(p: u64, ks: &[u32]) -> ClassificationVerdict {
    classify(&Arc::new(GroupShape::new(p, ks).unwrap()))
}

#[test]
fn ifi_examples() {
    for p in [2, 3] {
        let v = verdict(p, &[2, 2]);
        assert!(v.is_ifi && v.is_ic);
        let v = verdict(p, &[1, 2]);
        assert!(!v.is_ifi);
        let w = v.witnesses.ifi.unwrap();
        assert_eq!(w.subgroups.len(), 2);
        assert_ne!(w.subgroups[0].iso_type, w.subgroups[1].iso_type);
        assert!(verdict(p, &[1]).is_ifi);
    }
}

#[test]
fn ic_examples() {
    assert!(verdict(2, &[1, 1]).is_ic);
    let v = verdict(2, &[1, 3]);
    assert!(!v.is_ic && !v.is_ifi && !v.char_eq_fi);
    assert!(v.witnesses.ic.is_some());
    let w = v.witnesses.char_eq_fi.unwrap();
    assert_eq!(w.subgroups[0].generators, vec![vec![1, 2]]);
}

#[test]
fn strongly_examples() {
    for p in [2, 3] {
        let v = verdict(p, &[1, 1, 1]);
        assert!(v.is_strongly_ic && v.is_strongly_ifi);
        let v = verdict(p, &[2]);
        assert!(!v.is_strongly_ifi);
        assert_eq!(v.witnesses.strongly_ifi.unwrap().subgroups[0].order, p);
    }
    let v = verdict(2, &[1, 2]);
    assert!(!v.is_strongly_ifi && !v.is_strongly_ic);
}

#[test]
fn weakly_ic_is_false() {
    for (p, ks) in [(2, &[1, 3][..]), (5, &[1]), (3, &[2, 2, 2])] {
        assert!(!verdict(p, ks).is_weakly_ic);
    }
}

#[test]
fn ifi_criterion_examples() {
    let c = |p, ks: &[u32]| ifi_criterion(&GroupShape::new(p, ks).unwrap());
    assert!(c(5, &[1, 1]));
    assert!(c(2, &[2, 2, 2]));
    assert!(!c(2, &[1, 2]));
    assert!(!c(3, &[3]));
}

#[test]
fn verdicts_respect_implications() {
    for ks in [
        &[1u32][..],
        &[2],
        &[1, 1],
        &[1, 2],
        &[1, 3],
        &[2, 2],
        &[1, 1, 2],
    ] {
        for p in [2, 3] {
            let v = verdict(p, ks);
            assert!(!v.is_strongly_ic || v.is_strongly_ifi);
            assert!(!v.is_ic || v.is_ifi);
            assert!(!v.is_strongly_ic || v.is_ic);
            assert_eq!(v.is_ifi, v.criterion_ifi, "{}", v.shape);
        }
    }
}
