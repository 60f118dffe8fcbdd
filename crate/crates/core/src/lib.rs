//! Characteristic and fully invariant subgroups of finite abelian p-groups.

pub mod bits;
pub mod cache;
pub mod classify;
pub mod config;
pub mod endo;
pub mod error;
pub mod group;
pub mod harness;
pub mod invariance;
pub mod lattice;

pub use error::{Error, Result};
