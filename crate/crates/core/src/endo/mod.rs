//! Endomorphism matrices, automorphism detection and generating sets.

mod aut;
mod matrix;
mod oracle;
mod schreier;

pub use aut::{aut_generators, closure, stability_test_set, unit_generators};
pub use matrix::{entry_modulus, entry_scale, EndoMatrix};
pub use oracle::{endo_count, enumerate_all_endos, exhaustive_automorphisms, AutomorphismSearch};
pub use schreier::group_order;

use std::sync::Arc;

use crate::group::GroupShape;

/// Order of the group generated by `gens`, from their permutation action on the carrier.
pub fn generated_order(shape: &Arc<GroupShape>, gens: &[EndoMatrix]) -> u128 {
    let n = shape.order() as usize;
    let perms: Vec<Vec<u32>> = gens
        .iter()
        .map(|g| (0..n).map(|x| g.apply_idx(x) as u32).collect())
        .collect();
    group_order(&perms, n)
}
