//! Error type shared by all modules of the crate.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("shape mismatch: expected {expected}, got {got}")]
    ShapeMismatch { expected: String, got: String },

    #[error("matrix is not Hermitian within tolerance (deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix is not unitary within tolerance (deviation {deviation:e})")]
    NotUnitary { deviation: f64 },

    #[error("not a valid density matrix: {reason}")]
    NotDensity { reason: String },

    #[error("bipartite dimension metadata missing or inconsistent: {reason}")]
    BadDims { reason: String },

    #[error("invalid spectrum: {reason}")]
    BadSpectrum { reason: String },

    #[error("expansion capacity exceeded: mn = {mn} > limit {limit}")]
    Capacity { mn: usize, limit: usize },

    #[error("incompatible pi powers: {left} vs {right}")]
    IncompatiblePiPowers { left: u32, right: u32 },

    #[error("arithmetic error: {0}")]
    Arithmetic(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
