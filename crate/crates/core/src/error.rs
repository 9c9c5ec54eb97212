use thiserror::Error;

/// Errors returned across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands belong to different fields (kappa {left} vs {right})")]
    FieldMismatch { left: u32, right: u32 },

    #[error("value {value:#x} does not fit in GF(2^{kappa})")]
    ValueOutOfRange { value: u64, kappa: u32 },

    #[error("zero has no multiplicative inverse")]
    ZeroInverse,

    #[error("unsupported field width kappa = {0} (must be 1..=64)")]
    UnsupportedKappa(u32),

    #[error("reduction polynomial {0:#x} is not irreducible")]
    Reducible(u128),

    #[error("no supported field satisfies n * 2^-kappa <= epsilon")]
    EpsilonTooSmall,

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("interpolation points contain a duplicate x coordinate")]
    DuplicatePoint,

    #[error("interpolation system is singular")]
    SingularSystem,

    #[error("interpolation is over-constrained: {points} points + {prefix} fixed coefficients > {len}")]
    OverConstrained { points: usize, prefix: usize, len: usize },

    #[error("verifier {verifier} has differing evaluation points across instances")]
    MismatchedEvaluationPoints { verifier: usize },

    #[error("invalid corruption set: {0}")]
    InvalidCorruptSet(String),

    #[error("decode error: {0}")]
    Decode(String),

    #[error("infeasible parameters: {0}")]
    Infeasible(String),

    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
