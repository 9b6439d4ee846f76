//! Rotor-router walks on the two-dimensional comb.
//!
//! The crate covers the toppling engine and its odometer certificate,
//! rotor-router aggregation with its closed-form odometer, the half-line
//! process, and the harmonic measure of comb shapes computed by rotor
//! exit counts, an exact recursion, and Monte Carlo.

pub mod aggregation;
pub mod cli;
pub mod engine;
pub mod error;
pub mod geometry;
pub mod halfline;
pub mod harmonic;
pub mod oracle;
pub mod render;
pub mod snapshot;

pub use aggregation::{aggregate, Aggregation, Aggregator};
pub use engine::{verify_odometer, EngineState, Odometer, ParticleConfig, RotorConfig, ToppleMode};
pub use error::{Error, Result};
pub use geometry::{cardinality_bm, ClusterShape, Direction, Profile, Vertex};
pub use halfline::{halfline_process, HalfLine};
