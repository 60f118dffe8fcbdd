//! Carrier arithmetic for finite abelian p-groups given by exponent partitions.

mod element;
mod shape;

pub use element::{GroupElement, Height, UlmSequence};
pub use shape::{is_prime, parse_partition, GroupShape};

use std::sync::Arc;

use crate::lattice::Subgroup;

/// `p^n G`, the image of multiplication by `p^n`.
pub fn power_subgroup(shape: &Arc<GroupShape>, n: u32) -> Subgroup {
    let gens: Vec<usize> = (0..shape.rank())
        .map(|i| {
            let k = shape.exponents()[i];
            if n >= k {
                0
            } else {
                shape.scale_idx(shape.pow_p(n), shape.basis_idx(i))
            }
        })
        .collect();
    Subgroup::span_indices(shape, &gens)
}

/// `G[p^m]`, the elements killed by `p^m`.
pub fn socle(shape: &Arc<GroupShape>, m: u32) -> Subgroup {
    let gens: Vec<usize> = (0..shape.rank())
        .map(|i| {
            let k = shape.exponents()[i];
            let shift = k.saturating_sub(m);
            shape.scale_idx(shape.pow_p(shift), shape.basis_idx(i))
        })
        .collect();
    Subgroup::span_indices(shape, &gens)
}
