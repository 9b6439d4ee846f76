//! Harmonic measure from rotor-router exit counts.
//!
//! Particles are released from the origin one at a time and absorbed at the
//! inner boundary. Once every interior rotor is back in its initial
//! position, each interior vertex has made only full turns, and the exit
//! count at `z` is exactly `n * nu(z)`.

use std::collections::BTreeMap;

use num_bigint::BigUint;

use super::layout::Layout;
use super::BoundaryMeasure;
use crate::engine::{Odometer, RotorConfig};
use crate::error::{Error, Result};
use crate::geometry::{rotor_successor, ClusterShape, Vertex};

pub const DEFAULT_CAP: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotorMeasure {
    pub measure: BoundaryMeasure,
    /// Whether the interior rotors returned to their initial position.
    pub exact: bool,
    pub particles: u64,
    pub odometer: Odometer,
}

impl RotorMeasure {
    /// `u(x) / deg(x)` on interior vertices; only meaningful when `exact`.
    pub fn normalized_odometer(&self) -> BTreeMap<Vertex, u64> {
        self.odometer
            .iter()
            .map(|(&v, &u)| (v, u / v.degree() as u64))
            .collect()
    }
}

/// Release particles from the origin until the interior rotors return to
/// their initial position or `cap` particles have been used.
pub fn harmonic_by_rotor(shape: &ClusterShape, cap: u64) -> Result<RotorMeasure> {
    if cap < 1 {
        return Err(Error::Domain("cap must be at least 1".into()));
    }
    let layout = Layout::new(shape);
    let mut pos = layout.start.clone();
    let mut odometer = vec![0u64; layout.len()];
    let mut exits = vec![0u64; layout.len()];
    let mut mismatched = 0usize;
    let mut particles = 0u64;
    let mut exact = false;
    while particles < cap {
        let mut at = layout.origin;
        while !layout.boundary[at] {
            let d = layout.degree[at];
            let was_home = pos[at] == layout.start[at];
            let next = if pos[at] + 1 == d { 0 } else { pos[at] + 1 };
            pos[at] = next;
            let is_home = next == layout.start[at];
            match (was_home, is_home) {
                (true, false) => mismatched += 1,
                (false, true) => mismatched -= 1,
                _ => {}
            }
            odometer[at] += 1;
            at = layout.nbrs[at][next as usize] as usize;
        }
        exits[at] += 1;
        particles += 1;
        if mismatched == 0 {
            exact = true;
            break;
        }
    }
    let measure = BoundaryMeasure::from_counts(
        (0..layout.len())
            .filter(|&i| layout.boundary[i])
            .map(|i| (layout.vertex(i), BigUint::from(exits[i]))),
    );
    let odometer = odometer
        .iter()
        .enumerate()
        .filter(|(_, &u)| u > 0)
        .map(|(i, &u)| (layout.vertex(i), u))
        .collect();
    Ok(RotorMeasure { measure, exact, particles, odometer })
}

/// The particle addition operator: route one particle from the interior
/// vertex `x` until it first reaches the inner boundary of `shape`.
pub fn add_particle_ex(rotors: &RotorConfig, x: Vertex, shape: &ClusterShape) -> Result<RotorConfig> {
    let boundary = shape.inner_boundary();
    if !shape.contains(x) || boundary.contains(&x) {
        return Err(Error::Domain(format!("{x} is not an interior vertex")));
    }
    let mut out = rotors.clone();
    let mut at = x;
    while !boundary.contains(&at) {
        let d = rotor_successor(at, out.get(at))?;
        out.set(at, d)?;
        at = at.step(d);
    }
    Ok(out)
}
