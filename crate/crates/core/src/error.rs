use thiserror::Error;

/// Everything that can go wrong while building or checking presentation data.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("conductor {0} is not an odd prime")]
    InvalidConductor(u64),

    #[error("conductor mismatch: {0} vs {1}")]
    ConductorMismatch(u32, u32),

    #[error("{0} is not a unit modulo {1}")]
    NotAUnit(i64, u32),

    #[error("value is not invariant under complex conjugation: {0}")]
    NotReal(String),

    #[error("value is not rational: {0}")]
    NotRational(String),

    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },

    #[error("not a permutation: {0}")]
    NotAPermutation(String),

    #[error("group order exceeds cap {cap} (reached {partial} elements)")]
    OrderCapExceeded { cap: usize, partial: usize },

    #[error("not a subgroup: {0}")]
    NotASubgroup(String),

    #[error("point {point} out of range 1..={degree}")]
    PointOutOfRange { point: usize, degree: usize },

    #[error("class functions live on different groups")]
    GroupMismatch,

    #[error("not a class function: {0}")]
    NotAClassFunction(String),

    #[error("reducible character: <chi, chi> = {0}")]
    Reducible(String),

    #[error("expected a non-negative integer for {what}, got {value}")]
    NonIntegral { what: String, value: String },

    #[error("degenerate presentation: H has a single double coset in G")]
    DegeneratePresentation,

    #[error("Kanev effectivity violated at double coset {index}: coefficient {value}")]
    KanevEffectivity { index: usize, value: String },

    #[error("correspondence is not well defined: {0}")]
    IllDefinedCorrespondence(String),

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("invalid signature: {0}")]
    InvalidSignature(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("internal consistency check failed: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
