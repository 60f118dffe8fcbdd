use super::*;

fn exps(c: &Corpus) -> Vec<Vec<u32>> {
    c.shapes.iter().map(|s| s.exponents().to_vec()).collect()
}

#[test]
fn corpus_examples() {
    let c = build_corpus(2, 8, 1 << 16).unwrap();
    assert_eq!(
        exps(&c),
        vec![
            vec![1],
            vec![2],
            vec![3],
            vec![1, 1],
            vec![1, 2],
            vec![1, 1, 1]
        ]
    );
    assert_eq!(
        exps(&build_corpus(3, 9, 1 << 16).unwrap()),
        vec![vec![1], vec![2], vec![1, 1]]
    );
    assert_eq!(build_corpus(2, 16, 1 << 16).unwrap().shapes.len(), 11);
    assert_eq!(build_corpus(2, 256, 1 << 16).unwrap().shapes.len(), 66);
    // A bound between powers rounds down.
    assert_eq!(build_corpus(2, 15, 1 << 16).unwrap().shapes.len(), 6);
    assert!(build_corpus(2, 1 << 20, 1 << 16).unwrap_err().is_cap());
    assert!(matches!(
        build_corpus(4, 16, 1 << 16),
        Err(Error::NotPrime(4))
    ));
}

#[test]
fn corpus_is_complete_and_distinct() {
    let c = build_corpus(2, 1 << 8, 1 << 16).unwrap();
    let mut seen = std::collections::HashSet::new();
    for s in &c.shapes {
        assert!(s.order() <= 256);
        assert!(seen.insert(s.exponents().to_vec()));
    }
}

#[test]
fn registry_ids_are_unique() {
    let mut ids: Vec<_> = claims().iter().map(|c| c.id).collect();
    ids.sort();
    ids.dedup();
    assert_eq!(ids.len(), claims().len());
    assert!(resolve_claims("all")
        .unwrap()
        .iter()
        .all(|c| c.scope == Scope::InScope));
    assert!(
        matches!(resolve_claims("prop-2.26,no-such"), Err(Error::UnknownClaim(s)) if s == "no-such")
    );
    assert!(resolve_claims("lemma-2.27-2.30").is_err());
}

#[test]
fn small_corpus_passes_everything() {
    for (p, max) in [(2, 32), (3, 27)] {
        let corpus = build_corpus(p, max, 1 << 16).unwrap();
        let reports = verify_claims(
            &resolve_claims("all").unwrap(),
            &corpus,
            VerifyOptions::default(),
        )
        .unwrap();
        for r in reports {
            assert!(r.passed(), "{r:?}");
            assert_eq!(r.violations.is_empty(), r.status != Status::Fail);
        }
    }
}

#[test]
fn profile_claim_is_adapted_on_sparse_partitions() {
    let r = verify_claim("lemma-2.25", &build_corpus(2, 16, 1 << 16).unwrap()).unwrap();
    assert_eq!(r.status, Status::Adapted);
    // Only [1]; already [2] lacks the exponent-1 layer.
    let r = verify_claim("lemma-2.25", &build_corpus(2, 2, 1 << 16).unwrap()).unwrap();
    assert_eq!(r.status, Status::Pass);
}

#[test]
fn parallel_and_cached_runs_match_serial() {
    let corpus = build_corpus(2, 32, 1 << 16).unwrap();
    let all = resolve_claims("all").unwrap();
    let strip = |mut rs: Vec<ClaimReport>| {
        rs.iter_mut().for_each(|r| r.runtime_ms = 0);
        serde_json::to_string(&rs).unwrap()
    };
    let serial = strip(verify_claims(&all, &corpus, VerifyOptions::default()).unwrap());
    let opts = VerifyOptions {
        jobs: 4,
        ..Default::default()
    };
    assert_eq!(strip(verify_claims(&all, &corpus, opts).unwrap()), serial);
    let dir = tempfile::tempdir().unwrap();
    let cache = crate::cache::Cache::open(dir.path());
    let opts = VerifyOptions {
        cache: Some(&cache),
        ..Default::default()
    };
    for _ in 0..2 {
        assert_eq!(strip(verify_claims(&all, &corpus, opts).unwrap()), serial);
    }
}

#[test]
fn witnesses_are_capped_and_counted() {
    let corpus = build_corpus(2, 1 << 16, 1 << 16).unwrap();
    let mut b = ReportBuilder::new("x", &corpus, None);
    let shape = GroupShape::new(2, &[1]).unwrap();
    b.add(
        &shape,
        ShapeOutcome {
            violations: (0..40).map(|i| serde_json::json!(i)).collect(),
            adapted: false,
            runtime: Duration::ZERO,
        },
    );
    let r = b.finish();
    assert_eq!(r.status, Status::Fail);
    assert_eq!(r.violations.len(), MAX_WITNESSES);
    assert_eq!(r.total_violations, 40);
}

#[test]
fn single_shape_recheck() {
    let g = Arc::new(GroupShape::new(2, &[1, 3]).unwrap());
    // (2,[1,3]) has a characteristic subgroup that is not fully invariant.
    assert_eq!(check_shape("sec-2.1-lemma", &g).unwrap().len(), 1);
    assert!(check_shape("prop-2.26", &g).unwrap().is_empty());
}

#[test]
fn crosscheck_small_corpora() {
    for (p, max) in [(2, 32), (3, 27)] {
        let r = oracle_crosscheck(
            &build_corpus(p, max, 1 << 16).unwrap(),
            VerifyOptions::default(),
        )
        .unwrap();
        assert_eq!(r.status, Status::Pass, "{r:?}");
    }
    let r = oracle_crosscheck(&Corpus::empty(2), VerifyOptions::default()).unwrap();
    assert_eq!((r.status, r.shapes_checked), (Status::Pass, 0));
}
