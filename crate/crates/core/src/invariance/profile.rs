use std::sync::Arc;

use serde::Serialize;

use super::context::GroupContext;
use crate::error::{Error, Result};
use crate::group::GroupShape;
use crate::lattice::Subgroup;

/// For each exponent `k` present, the `n_k` with `π_k(H) = p^{n_k} B_k`,
/// where `B_k` is the homocyclic layer of exponent `k`. `n_k = k` means the
/// projection is zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProjectionProfile {
    pub shape: GroupShape,
    /// `(k, n_k)` pairs, ascending in `k`.
    pub n_values: Vec<(u32, u32)>,
}

impl ProjectionProfile {
    pub fn n(&self, k: u32) -> Option<u32> {
        self.n_values.iter().find(|(e, _)| *e == k).map(|&(_, n)| n)
    }

    /// `n_k ≤ k`, and `n_k ≤ n_{k'} ≤ n_k + (k' − k)` for present `k < k'`.
    pub fn is_admissible(&self) -> bool {
        let v = &self.n_values;
        v.iter().all(|&(k, n)| n <= k)
            && v.iter().enumerate().all(|(a, &(k, nk))| {
                v[a + 1..]
                    .iter()
                    .all(|&(k2, nk2)| nk <= nk2 && nk2 <= nk + (k2 - k))
            })
    }
}

/// Projection of `H` onto the summands in `summands`, as a subgroup of `G`.
pub fn project_onto(h: &Subgroup, summands: &[usize]) -> Subgroup {
    let shape = h.shape();
    h.image_under(shape, |x| {
        summands
            .iter()
            .map(|&i| shape.digit(x, i) * shape.stride(i))
            .sum::<u64>() as usize
    })
}

/// `p^n` times the subgroup generated by the summands in `summands`.
pub fn power_of_summands(shape: &Arc<GroupShape>, summands: &[usize], n: u32) -> Subgroup {
    let gens: Vec<usize> = summands
        .iter()
        .map(|&i| shape.scale_idx(shape.pow_p(n), shape.basis_idx(i)))
        .collect();
    Subgroup::span_indices(shape, &gens)
}

/// Computes `n_k` for every layer; fails if a projection is not a power of its layer.
pub fn projection_profile(ctx: &GroupContext, h: &Subgroup) -> Result<ProjectionProfile> {
    if !ctx.is_characteristic(h) {
        return Err(Error::NotCharacteristic);
    }
    profile_unchecked(h)
}

pub(crate) fn profile_unchecked(h: &Subgroup) -> Result<ProjectionProfile> {
    let shape = h.shape();
    let mut n_values = Vec::new();
    for (k, idx) in shape.layers() {
        let proj = project_onto(h, &idx);
        let n = (0..=k)
            .find(|&n| power_of_summands(shape, &idx, n) == proj)
            .ok_or(Error::ProjectionNotPower { exponent: k })?;
        n_values.push((k, n));
    }
    Ok(ProjectionProfile {
        shape: (**shape).clone(),
        n_values,
    })
}

/// The subgroups `⊕_k p^{n_k} B_k` over all admissible profiles, each
/// confirmed fully invariant, in canonical order.
pub fn fi_from_profiles(ctx: &GroupContext) -> Result<Vec<Subgroup>> {
    let shape = ctx.shape();
    let layers = shape.layers();
    let mut out = Vec::new();
    let mut n_values: Vec<(u32, u32)> = layers.iter().map(|&(k, _)| (k, 0)).collect();
    loop {
        let profile = ProjectionProfile {
            shape: (**shape).clone(),
            n_values: n_values.clone(),
        };
        if profile.is_admissible() {
            let gens: Vec<usize> = layers
                .iter()
                .zip(&n_values)
                .flat_map(|((_, idx), &(_, n))| {
                    idx.iter()
                        .map(move |&i| shape.scale_idx(shape.pow_p(n), shape.basis_idx(i)))
                })
                .collect();
            let h = Subgroup::span_indices(shape, &gens);
            if !ctx.is_fully_invariant(&h) {
                return Err(Error::ProfileNotFullyInvariant(format!("{:?}", n_values)));
            }
            out.push(h);
        }
        // Next tuple in the box Π [0, k].
        let mut pos = 0;
        loop {
            if pos == n_values.len() {
                out.sort_by(|a, b| a.canonical_cmp(b));
                return Ok(out);
            }
            let (k, n) = &mut n_values[pos];
            if *n < *k {
                *n += 1;
                break;
            }
            *n = 0;
            pos += 1;
        }
    }
}
