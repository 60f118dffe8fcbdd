//! Characteristic and fully invariant subgroups: decision procedures,
//! enumeration, projection profiles and transitivity.

mod context;
mod profile;
mod transitivity;

pub use context::{CharacteristicLattice, GroupContext, LatticeEntry, SubgroupSummary};
pub use profile::{
    fi_from_profiles, power_of_summands, project_onto, projection_profile, ProjectionProfile,
};
pub use transitivity::{
    is_fully_transitive, is_fully_transitive_exhaustive, is_transitive, is_transitive_exhaustive,
};

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::GroupShape;
use crate::lattice::Subgroup;

pub fn is_characteristic(h: &Subgroup) -> bool {
    GroupContext::new(Arc::clone(h.shape())).is_characteristic(h)
}

pub fn is_fully_invariant(h: &Subgroup) -> bool {
    GroupContext::new(Arc::clone(h.shape())).is_fully_invariant(h)
}

/// At most two Ulm invariants equal one, and two such must sit at consecutive indices.
pub fn kaplansky_2group_predicate(shape: &GroupShape) -> Result<bool> {
    if shape.prime() != 2 {
        return Err(Error::PrimeNotTwo(shape.prime()));
    }
    let ones: Vec<usize> = shape
        .ulm_invariants()
        .iter()
        .enumerate()
        .filter(|(_, &f)| f == 1)
        .map(|(n, _)| n)
        .collect();
    Ok(match ones.as_slice() {
        [] | [_] => true,
        [a, b] => b - a == 1,
        _ => false,
    })
}

/// Characteristic and fully invariant subgroups coincide.
pub fn char_equals_fi(ctx: &GroupContext) -> bool {
    ctx.enumerate_characteristic() == ctx.enumerate_fully_invariant()
}
