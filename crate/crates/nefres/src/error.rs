use thiserror::Error;

/// Errors produced by the exact-arithmetic pipelines.
///
/// Everything in this crate is integer arithmetic over small lattices, so the
/// error surface is mostly about malformed inputs (wrong Picard rank, negative
/// multiplicities) and honest refusals (data outside the verified fixture
/// range, classification requests outside the tabulated range).
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid variety: {0}")]
    InvalidVariety(String),

    #[error("Picard class has {got} coordinates, expected {expected} for {variety}")]
    PicardRankMismatch {
        variety: String,
        expected: usize,
        got: usize,
    },

    #[error("dimension vector has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("index ({j}, {k}) out of range for a collection of {len} generators")]
    IndexOutOfRange { j: usize, k: usize, len: usize },

    #[error("{0}")]
    InvalidInput(String),

    #[error("integer overflow in exact computation")]
    Overflow,

    #[error("spinor cohomology data unavailable: {0}")]
    SpinorDataUnavailable(String),

    #[error("operation requires a surface, got {0}")]
    NotASurface(String),

    #[error("second Chern class required but not provided")]
    MissingC2,

    #[error("spinor section count is only computed for twists >= -1, got {0}")]
    TwistOutOfRange(i64),

    #[error("head reduction needs e_{{1,0}} >= e_{{0,0}}, got {e10} < {e00}")]
    HeadReduction { e10: i64, e00: i64 },

    #[error("({variety}, c1={c1}) is outside the classified range")]
    NotClassified { variety: String, c1: String },

    #[error("exponent system is infeasible: {0}")]
    Infeasible(String),

    #[error("exponent system is underdetermined: {0}")]
    Underdetermined(String),

    #[error("unknown fact name: {0}")]
    UnknownFact(String),
}

pub type Result<T> = std::result::Result<T, Error>;
