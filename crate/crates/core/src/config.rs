//! Size caps shared by the library, the harness and the CLI.
//!
//! Every cap has a default and can be overridden through an environment
//! variable, which the CLI reads once at startup.

use std::env;

pub const DEFAULT_CARRIER_CAP: u64 = 1 << 16;
pub const DEFAULT_ENUMERATION_CAP: u64 = 1 << 12;
pub const DEFAULT_SWEEP_ORDER: u64 = 1 << 8;
pub const DEFAULT_ORACLE_CAP: u128 = 1 << 36;
pub const DEFAULT_CLOSURE_CAP: usize = 1 << 20;

/// Hard ceiling for the carrier: dense indices and coefficient products stay in `u64`.
pub const MAX_CARRIER: u64 = 1 << 32;

pub const ENV_CARRIER_CAP: &str = "CHARSUB_CARRIER_CAP";
pub const ENV_ENUMERATION_CAP: &str = "CHARSUB_ENUMERATION_CAP";
pub const ENV_ORACLE_CAP: &str = "CHARSUB_ORACLE_CAP";
pub const ENV_CLOSURE_CAP: &str = "CHARSUB_CLOSURE_CAP";
pub const ENV_JOBS: &str = "CHARSUB_JOBS";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest group order accepted when building a shape.
    pub carrier: u64,
    /// Largest group order for which the brute-force subgroup walk runs.
    pub enumeration: u64,
    /// Largest endomorphism-ring size for brute-force endomorphism oracles.
    pub oracle: u128,
    /// Largest automorphism group materialized element by element.
    pub closure: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            carrier: DEFAULT_CARRIER_CAP,
            enumeration: DEFAULT_ENUMERATION_CAP,
            oracle: DEFAULT_ORACLE_CAP,
            closure: DEFAULT_CLOSURE_CAP,
        }
    }
}

impl Caps {
    /// Defaults, overridden by any of the `CHARSUB_*` variables that parse.
    pub fn from_env() -> Self {
        let mut caps = Caps::default();
        if let Some(v) = read_env::<u64>(ENV_CARRIER_CAP) {
            caps.carrier = v.min(MAX_CARRIER);
        }
        if let Some(v) = read_env::<u64>(ENV_ENUMERATION_CAP) {
            caps.enumeration = v;
        }
        if let Some(v) = read_env::<u128>(ENV_ORACLE_CAP) {
            caps.oracle = v;
        }
        if let Some(v) = read_env::<usize>(ENV_CLOSURE_CAP) {
            caps.closure = v;
        }
        caps
    }
}

/// Worker count from `CHARSUB_JOBS`, if set.
pub fn jobs_from_env() -> Option<usize> {
    read_env::<usize>(ENV_JOBS).filter(|&j| j > 0)
}

fn read_env<T: std::str::FromStr>(name: &str) -> Option<T> {
    let raw = env::var(name).ok()?;
    match raw.trim().parse() {
        Ok(v) => Some(v),
        Err(_) => {
            log::warn!("ignoring {name}={raw:?}: not a number");
            None
        }
    }
}
