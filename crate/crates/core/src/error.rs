use thiserror::Error;

/// Errors produced by shape construction, enumeration and the verification harness.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("exponent partition is empty")]
    EmptyPartition,
    #[error("exponents must be at least 1")]
    ZeroExponent,
    #[error("group order {prime}^{log_order} exceeds the carrier cap of {cap} elements")]
    CarrierCapExceeded {
        prime: u64,
        log_order: u32,
        cap: u64,
    },
    #[error("group order {order} exceeds the subgroup enumeration cap of {cap} elements")]
    EnumerationCapExceeded { order: u64, cap: u64 },
    #[error("endomorphism count {count} exceeds the oracle cap of {cap}")]
    OracleCapExceeded { count: u128, cap: u128 },
    #[error("automorphism closure grew past the closure cap of {cap} elements")]
    ClosureCapExceeded { cap: usize },
    #[error("shape mismatch: expected {expected}, found {found}")]
    ShapeMismatch { expected: String, found: String },
    #[error("element has {found} coordinates, shape has {expected} summands")]
    ElementLength { expected: usize, found: usize },
    #[error("image of generator {index} has order exceeding its summand order")]
    InvalidImage { index: usize },
    #[error("the criterion is only stated for 2-groups, got p = {0}")]
    PrimeNotTwo(u64),
    #[error("subgroup is not characteristic")]
    NotCharacteristic,
    #[error("projection onto the exponent-{exponent} layer is not a power subgroup of that layer")]
    ProjectionNotPower { exponent: u32 },
    #[error("profile candidate {0} is not fully invariant")]
    ProfileNotFullyInvariant(String),
    #[error("unknown claim '{0}'")]
    UnknownClaim(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("cache i/o: {0}")]
    Io(String),
}

impl Error {
    /// True for errors that come from one of the configured size caps.
    pub fn is_cap(&self) -> bool {
        matches!(
            self,
            Error::CarrierCapExceeded { .. }
                | Error::EnumerationCapExceeded { .. }
                | Error::OracleCapExceeded { .. }
                | Error::ClosureCapExceeded { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
