use std::collections::HashSet;
use std::sync::Arc;

use super::subgroup::{SpanBuilder, Subgroup};
use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::group::GroupShape;

/// Every subgroup of the shape exactly once, by size then member list.
///
/// Breadth-first walk from `{0}`: each known subgroup `H` is extended by
/// elements `g ∉ H` with `pg ∈ H`, which reaches every cover of `H` (a
/// subgroup properly containing `H` has such an element). Results are
/// deduplicated on their membership bits.
pub fn enumerate_subgroups(shape: &Arc<GroupShape>, cap: u64) -> Result<Vec<Subgroup>> {
    if shape.order() > cap {
        return Err(Error::EnumerationCapExceeded {
            order: shape.order(),
            cap,
        });
    }
    let n = shape.order() as usize;
    let p = shape.prime();
    let start = SpanBuilder::trivial(n).into_bits();
    let mut seen: HashSet<Bits> = HashSet::new();
    seen.insert(start.clone());
    let mut frontier = vec![start];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for h in &frontier {
            let mut covered = h.clone();
            for g in 0..n {
                if covered.get(g) || !h.get(shape.scale_idx(p, g)) {
                    continue;
                }
                let mut b = SpanBuilder::from_bits(h.clone());
                b.extend(shape, g);
                let k = b.into_bits();
                for x in k.ones() {
                    covered.set(x);
                }
                if seen.insert(k.clone()) {
                    next.push(k);
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<Subgroup> = seen
        .into_iter()
        .map(|b| Subgroup::from_bits(shape, b))
        .collect();
    out.sort_by(|a, b| a.canonical_cmp(b));
    Ok(out)
}
