// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

/// Errors produced by the distance library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("graph needs at least 2 vertices, got {0}")]
    TooFewVertices(usize),

    #[error("loop edge at vertex {0}")]
    LoopEdge(usize),

    #[error("edge ({u}, {v}) has nonpositive or non-finite weight {weight}")]
    InvalidWeight { u: usize, v: usize, weight: f64 },

    #[error("vertex id {id} out of range 1..={n}")]
    VertexOutOfRange { id: usize, n: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("edge transform produced weight {weight} at alpha = {alpha}; choose a different alpha")]
    TransformRange { alpha: f64, weight: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix is not positive definite (pivot {pivot} = {value})")]
    NotPositiveDefinite { pivot: usize, value: f64 },

    #[error("inverse residual {residual:e} exceeds {limit:e}")]
    IllConditioned { residual: f64, limit: f64 },

    #[error("matrix entry ({row}, {col}) = {value:e} is not a normal positive number")]
    NonPositiveEntry { row: usize, col: usize, value: f64 },

    #[error("graph is disconnected")]
    Disconnected,

    #[error("forest enumeration is capped at {cap} edges, graph has {edges}")]
    EnumerationCap { edges: usize, cap: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
