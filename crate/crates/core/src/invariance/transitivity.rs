use std::collections::HashMap;

use super::context::GroupContext;
use crate::endo::enumerate_all_endos;
use crate::error::Result;
use crate::group::UlmSequence;

fn ulm_table(ctx: &GroupContext) -> Vec<UlmSequence> {
    let shape = ctx.shape();
    (0..shape.order() as usize)
        .map(|x| shape.ulm_sequence_idx(x))
        .collect()
}

/// Elements with equal Ulm sequences lie in one `Aut(G)`-orbit.
pub fn is_transitive(ctx: &GroupContext) -> bool {
    let ulm = ulm_table(ctx);
    let mut orbit_of_class: HashMap<&UlmSequence, usize> = HashMap::new();
    for (id, orbit) in ctx.orbits().iter().enumerate() {
        for &x in orbit {
            if *orbit_of_class.entry(&ulm[x]).or_insert(id) != id {
                return false;
            }
        }
    }
    true
}

/// Whenever `U(x) ≤ U(y)` pointwise, some endomorphism sends `x` to `y`.
///
/// `End(G)·x` is the span of the single-entry images of `x`, and it only
/// depends on the orbit of `x`, so one representative per orbit is checked.
pub fn is_fully_transitive(ctx: &GroupContext) -> bool {
    let ulm = ulm_table(ctx);
    let n = ulm.len();
    ctx.orbits().iter().all(|orbit| {
        let x = orbit[0];
        let reach = ctx.endomorphic_span(x);
        (0..n).all(|y| !ulm[x].le_pointwise(&ulm[y]) || reach.contains_idx(y))
    })
}

/// Brute-force full transitivity: `End(G)·x` by applying every endomorphism.
pub fn is_fully_transitive_exhaustive(ctx: &GroupContext, oracle_cap: u128) -> Result<bool> {
    let shape = ctx.shape();
    let n = shape.order() as usize;
    let mut reach = vec![crate::bits::Bits::new(n); n];
    for m in enumerate_all_endos(shape, oracle_cap)? {
        for (x, r) in reach.iter_mut().enumerate() {
            r.set(m.apply_idx(x));
        }
    }
    let ulm = ulm_table(ctx);
    Ok((0..n).all(|x| (0..n).all(|y| !ulm[x].le_pointwise(&ulm[y]) || reach[x].get(y))))
}

/// Brute-force transitivity: orbits of the bijective endomorphisms.
pub fn is_transitive_exhaustive(ctx: &GroupContext, oracle_cap: u128) -> Result<bool> {
    let shape = ctx.shape();
    let n = shape.order() as usize;
    let mut reach = vec![crate::bits::Bits::new(n); n];
    for m in enumerate_all_endos(shape, oracle_cap)?.filter(|m| m.is_bijective()) {
        for (x, r) in reach.iter_mut().enumerate() {
            r.set(m.apply_idx(x));
        }
    }
    let ulm = ulm_table(ctx);
    Ok((0..n).all(|x| (0..n).all(|y| ulm[x] != ulm[y] || reach[x].get(y))))
}
