use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::{ClaimReport, Corpus, ReportBuilder, ShapeOutcome, VerifyOptions};
use crate::config::Caps;
use crate::endo::{closure, entry_modulus, exhaustive_automorphisms, generated_order, EndoMatrix};
use crate::error::{Error, Result};
use crate::group::GroupShape;
use crate::invariance::{fi_from_profiles, GroupContext};
use crate::lattice::enumerate_subgroups;

pub const CROSSCHECK_ID: &str = "oracle-crosscheck";

/// Automorphism groups up to this size are compared element by element.
const AUT_SET_LIMIT: usize = 1 << 16;
const SAMPLES: usize = 32;
const SEED: u64 = 0x5eed_c4a2;

/// Validates the internal shortcuts against brute force on every shape:
/// automorphism generators against the exhaustive automorphism search, the
/// single-entry stability set against sampled endomorphisms, and the
/// structural enumerations against filtering all subgroups.
pub fn oracle_crosscheck(corpus: &Corpus, opts: VerifyOptions) -> Result<ClaimReport> {
    let run = |(n, shape): (usize, &Arc<GroupShape>)| -> Result<ShapeOutcome> {
        let t = Instant::now();
        let violations = crosscheck_shape(shape, opts.caps, SEED ^ n as u64)?;
        Ok(ShapeOutcome {
            violations,
            adapted: false,
            runtime: t.elapsed(),
        })
    };
    let outcomes: Vec<ShapeOutcome> = if opts.jobs <= 1 {
        corpus
            .shapes
            .iter()
            .enumerate()
            .map(run)
            .collect::<Result<_>>()?
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs)
            .build()
            .map_err(|e| Error::Io(e.to_string()))?
            .install(|| {
                corpus
                    .shapes
                    .par_iter()
                    .enumerate()
                    .map(run)
                    .collect::<Result<_>>()
            })?
    };
    let mut b = ReportBuilder::new(CROSSCHECK_ID, corpus, None);
    for (shape, out) in corpus.shapes.iter().zip(outcomes) {
        b.add(shape, out);
    }
    Ok(b.finish())
}

fn random_endo(shape: &Arc<GroupShape>, rng: &mut ChaCha8Rng) -> EndoMatrix {
    let n = shape.rank();
    let coeffs: Vec<i64> = (0..n * n)
        .map(|t| rng.gen_range(0..entry_modulus(shape, t / n, t % n)) as i64)
        .collect();
    EndoMatrix::new(shape, &coeffs).expect("coefficients sized to the shape")
}

pub(crate) fn crosscheck_shape(
    shape: &Arc<GroupShape>,
    caps: Caps,
    seed: u64,
) -> Result<Vec<Value>> {
    let ctx = GroupContext::new(Arc::clone(shape));
    let mut out = Vec::new();

    // Automorphism generators against the exhaustive search.
    let gens = ctx.aut_generators();
    if let Some(g) = gens.iter().find(|g| !g.is_bijective()) {
        out.push(json!({"check": "aut-generators", "non_bijective_generator": g.entries()}));
    }
    let search = exhaustive_automorphisms(shape, caps.oracle, AUT_SET_LIMIT.min(caps.closure))?;
    match &search.keys {
        Some(keys) => {
            let generated = closure(shape, gens, caps.closure)?;
            if &generated != keys {
                out.push(json!({
                    "check": "aut-closure",
                    "closure_size": generated.len(),
                    "exhaustive_size": keys.len(),
                }));
            }
        }
        None => {
            let order = generated_order(shape, gens);
            if order != search.count {
                out.push(json!({
                    "check": "aut-order",
                    "generated_order": order.to_string(),
                    "exhaustive_count": search.count.to_string(),
                }));
            }
        }
    }

    // Sampled endomorphisms: decomposition into single-entry maps, and
    // stability of every subgroup the shortcuts call invariant.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let samples: Vec<EndoMatrix> = (0..SAMPLES).map(|_| random_endo(shape, &mut rng)).collect();
    let singles = ctx.stability_test_set();
    let n = shape.rank();
    for m in &samples {
        let x = rng.gen_range(0..shape.order() as usize);
        let combined = (0..n * n).fold(0usize, |acc, t| {
            let e = &singles[t];
            let c = m.entry(t / n, t % n);
            shape.add_idx(acc, shape.scale_idx(c, e.apply_idx(x)))
        });
        if combined != m.apply_idx(x) {
            out.push(json!({"check": "decomposition", "endo": m.entries(), "x": shape.decode(x)}));
        }
    }
    let fi_walk = ctx.enumerate_fully_invariant();
    let char_walk = ctx.enumerate_characteristic();
    let autos: Vec<&EndoMatrix> = samples.iter().filter(|m| m.is_automorphism()).collect();
    for h in &fi_walk {
        if let Some(m) = samples
            .iter()
            .find(|m| !h.is_stable_under(|x| m.apply_idx(x)))
        {
            out.push(json!({"check": "fi-sampled", "subgroup": h.order(), "endo": m.entries()}));
        }
    }
    for h in &char_walk {
        if let Some(m) = autos
            .iter()
            .find(|m| !h.is_stable_under(|x| m.apply_idx(x)))
        {
            out.push(json!({"check": "char-sampled", "subgroup": h.order(), "aut": m.entries()}));
        }
    }

    // Structured enumerations against the brute-force filter.
    if fi_from_profiles(&ctx)? != fi_walk {
        out.push(json!({"check": "fi-profiles"}));
    }
    if shape.order() <= caps.enumeration {
        let all = enumerate_subgroups(shape, caps.enumeration)?;
        let fi: Vec<_> = all
            .iter()
            .filter(|h| ctx.is_fully_invariant(h))
            .cloned()
            .collect();
        let ch: Vec<_> = all
            .iter()
            .filter(|h| ctx.is_characteristic(h))
            .cloned()
            .collect();
        if fi != fi_walk {
            out.push(
                json!({"check": "fi-brute-force", "walk": fi_walk.len(), "filtered": fi.len()}),
            );
        }
        if ch != char_walk {
            out.push(
                json!({"check": "char-brute-force", "walk": char_walk.len(), "filtered": ch.len()}),
            );
        }
    }
    Ok(out)
}
