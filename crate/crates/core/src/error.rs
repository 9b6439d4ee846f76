use std::io;

use crate::geometry::{Direction, Vertex};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("rotor {direction:?} at {vertex} does not point to a neighbour")]
    InvalidRotor { vertex: Vertex, direction: Direction },

    #[error("cannot topple sink vertex {0}")]
    SinkTopple(Vertex),

    #[error("legal toppling at {0} requires a particle")]
    IllegalTopple(Vertex),

    #[error("step budget of {budget} topplings exceeded")]
    BudgetExceeded { budget: u64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("degenerate profile: h({x}) = 0 inside the shape")]
    DegenerateProfile { x: u64 },

    #[error("formula branch is not integral at x = {x}")]
    FormulaConsistency { x: u64 },

    #[error("normalized sequence breaks a proven bound at x = {x}")]
    TheoremContradiction { x: u64 },

    #[error("unsupported snapshot version {0}")]
    SnapshotVersion(u32),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
