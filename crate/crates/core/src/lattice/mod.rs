//! Subgroups: closure from generators, exhaustive enumeration, set operations
//! and intrinsic isomorphism type.

mod enumerate;
mod subgroup;

pub use enumerate::enumerate_subgroups;
pub use subgroup::Subgroup;

pub(crate) use subgroup::SpanBuilder;

#[cfg(test)]
mod tests;
