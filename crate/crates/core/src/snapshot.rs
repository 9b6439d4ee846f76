//! Versioned JSON snapshots of [`EngineState`].
//!
//! ```json
//! {
//!   "version": 1,
//!   "rotors": [[0, 0, "N"]],
//!   "particles": [[0, 1, 1]],
//!   "odometer": [[0, 0, 23]],
//!   "sinks": [[2, 0]]
//! }
//! ```
//!
//! Entries are sorted by vertex, so equal states give identical text.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::engine::{EngineState, ParticleConfig, RotorConfig};
use crate::error::{Error, Result};
use crate::geometry::{Direction, Vertex};

pub const SNAPSHOT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Snapshot {
    pub version: u32,
    pub rotors: Vec<(i64, i64, char)>,
    pub particles: Vec<(i64, i64, i64)>,
    pub odometer: Vec<(i64, i64, u64)>,
    pub sinks: Vec<Vertex>,
}

impl Snapshot {
    pub fn from_state(state: &EngineState) -> Self {
        Snapshot {
            version: SNAPSHOT_VERSION,
            rotors: state
                .rotors
                .assigned()
                .into_iter()
                .map(|(v, d)| (v.x, v.y, d.as_char()))
                .collect(),
            particles: state
                .particles
                .support()
                .into_iter()
                .map(|(v, c)| (v.x, v.y, c))
                .collect(),
            odometer: state
                .odometer_map()
                .into_iter()
                .map(|(v, u)| (v.x, v.y, u))
                .collect(),
            sinks: state.sinks().iter().copied().collect(),
        }
    }

    pub fn to_state(&self) -> Result<EngineState> {
        if self.version != SNAPSHOT_VERSION {
            return Err(Error::SnapshotVersion(self.version));
        }
        let mut rotors = RotorConfig::initial();
        for &(x, y, c) in &self.rotors {
            let d = Direction::from_char(c)
                .ok_or_else(|| Error::Parse(format!("rotor direction {c:?} at ({x},{y})")))?;
            rotors.set(Vertex::new(x, y), d)?;
        }
        let mut particles = ParticleConfig::new();
        for &(x, y, c) in &self.particles {
            particles.add(Vertex::new(x, y), c);
        }
        let odometer: HashMap<Vertex, u64> = self
            .odometer
            .iter()
            .filter(|e| e.2 > 0)
            .map(|&(x, y, u)| (Vertex::new(x, y), u))
            .collect();
        Ok(EngineState::from_parts(
            rotors,
            particles,
            odometer,
            self.sinks.iter().copied().collect(),
        ))
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let snap: Snapshot = serde_json::from_str(text)?;
        if snap.version != SNAPSHOT_VERSION {
            return Err(Error::SnapshotVersion(snap.version));
        }
        Ok(snap)
    }
}
