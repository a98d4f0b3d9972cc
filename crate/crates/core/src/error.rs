use thiserror::Error;

use crate::presymplectic::GroupElement;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// `Mᵀ τ' M ≠ τ` at entry `(row, col)`.
    #[error("pairing violation at ({row}, {col}): pulled-back pairing is {found}, source pairing is {expected}")]
    PairingViolation {
        row: usize,
        col: usize,
        expected: i64,
        found: i64,
    },

    #[error("matrix is not orientation preserving (determinant {det})")]
    NotOrientationPreserving { det: i64 },

    #[error("matrix is not invertible over the integers (determinant {det})")]
    NotUnimodular { det: i64 },

    #[error("unknown catalog embedding `{0}`")]
    UnknownEmbedding(String),

    #[error("hbar = {hbar} is {distance:e} away from 2πZ; pass the boundary override to allow it")]
    InadmissibleHbar { hbar: f64, distance: f64 },

    #[error("hbar mismatch: {left} vs {right}")]
    HbarMismatch { left: f64, right: f64 },

    #[error("operands live in different algebras")]
    AlgebraMismatch,

    #[error("value at {0} is not determined by the state")]
    Undetermined(GroupElement),

    #[error("inconsistent table: {first} ↦ {first_value} but {second} ↦ {second_value} lie in the same orbit")]
    Inconsistent {
        first: GroupElement,
        first_value: String,
        second: GroupElement,
        second_value: String,
    },

    #[error("operation supports rank 2 only, got rank {0}")]
    UnsupportedRank(usize),

    #[error("malformed matrix: {0}")]
    MalformedMatrix(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}
