use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Construction-time validation failure (bad modulus, bad shape, ...).
    #[error("invalid specification: {0}")]
    BadSpec(String),

    /// Operands belong to different fields, shapes, or truncation levels.
    #[error("operand mismatch: {0}")]
    Mismatch(String),

    /// Argument outside the operation's domain (zero inverse, bad index, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// An exhaustive enumeration would exceed the configured state cap.
    #[error("enumeration of {needed} states exceeds the cap of {cap}")]
    CapExceeded { needed: u128, cap: u128 },

    /// A lift search ran out of candidates; retry over a larger field.
    #[error("no preimage found while scanning {searched} candidates")]
    NoPreimage { searched: u128 },

    /// Two independent computations of the same quantity disagreed.
    #[error("internal verification failed: {0}")]
    Verification(String),

    #[error("serialization: {0}")]
    Serde(#[from] serde_json::Error),
}
