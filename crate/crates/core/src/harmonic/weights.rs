//! Particle and rotor weights.
//!
//! For a weight function `psi`, the particle weight is `sum sigma(x) psi(x)`
//! and the rotor weight of a vertex that has toppled `k` times is
//! `w(x, k) = sum_{j=1..k} (psi(x) - psi(x_j))`, where `x_j` is the
//! neighbour the rotor points at after `j` topplings. Their sum does not
//! change when particles are routed, provided every rotor starts in its
//! initial position.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::engine::{EngineState, Odometer, ParticleConfig, ToppleMode};
use crate::error::Result;
use crate::geometry::{directions, initial_rotor, Vertex};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WeightSystem {
    psi: HashMap<Vertex, BigRational>,
}

impl WeightSystem {
    /// Vertices missing from `psi` have weight zero.
    pub fn new(psi: HashMap<Vertex, BigRational>) -> Self {
        WeightSystem { psi }
    }

    pub fn constant_on<'a>(region: impl IntoIterator<Item = &'a Vertex>, value: BigRational) -> Self {
        WeightSystem {
            psi: region.into_iter().map(|&v| (v, value.clone())).collect(),
        }
    }

    pub fn psi(&self, v: Vertex) -> BigRational {
        self.psi.get(&v).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Neighbour the rotor at `v` points at after `j` topplings from its
    /// initial position.
    fn target(v: Vertex, j: u64) -> Vertex {
        let dirs = directions(v);
        let start = dirs.iter().position(|&d| d == initial_rotor(v)).unwrap() as u64;
        let d = dirs.len() as u64;
        v.step(dirs[((start + j) % d) as usize])
    }

    /// `(1/d(x)) sum_{y ~ x} (psi(y) - psi(x))`.
    pub fn laplacian(&self, x: Vertex) -> BigRational {
        let dirs = directions(x);
        let here = self.psi(x);
        let total: BigRational = dirs.iter().map(|&d| self.psi(x.step(d)) - &here).sum();
        total / BigRational::from_integer(BigInt::from(dirs.len()))
    }

    /// `w(x, k)` straight from its recursive definition.
    pub fn rotor_weight(&self, x: Vertex, k: u64) -> BigRational {
        let here = self.psi(x);
        (1..=k).fold(BigRational::zero(), |acc, j| {
            acc + &here - self.psi(Self::target(x, j))
        })
    }

    /// `w(x, k)` through full turns: `w(x, k mod d) - floor(k/d) * d * laplacian(x)`.
    pub fn rotor_weight_by_turns(&self, x: Vertex, k: u64) -> BigRational {
        let d = x.degree() as u64;
        let turns = BigRational::from_integer(BigInt::from(k / d * d));
        self.rotor_weight(x, k % d) - turns * self.laplacian(x)
    }

    pub fn particle_weight(&self, particles: &ParticleConfig) -> BigRational {
        particles
            .support()
            .into_iter()
            .map(|(v, c)| self.psi(v) * BigRational::from_integer(BigInt::from(c)))
            .sum()
    }

    pub fn rotor_weight_total(&self, odometer: &Odometer) -> BigRational {
        odometer
            .iter()
            .map(|(&v, &k)| self.rotor_weight_by_turns(v, k))
            .sum()
    }
}

/// Route the toppling sequence `trace` (virtual mode, initial rotors) from
/// `initial` and check that particle weight plus rotor weight is the same
/// after every prefix.
pub fn weight_invariance_check(
    trace: &[Vertex],
    weights: &WeightSystem,
    initial: &ParticleConfig,
) -> Result<bool> {
    let mut state = EngineState::with_particles(initial.clone());
    let start = weights.particle_weight(initial);
    let mut particle_w = start.clone();
    let mut rotor_w = BigRational::zero();
    for &x in trace {
        let k = state.odometer(x);
        let target = state.topple(x, ToppleMode::Virtual)?;
        particle_w += weights.psi(target) - weights.psi(x);
        rotor_w += weights.rotor_weight_by_turns(x, k + 1) - weights.rotor_weight_by_turns(x, k);
        if &particle_w + &rotor_w != start {
            return Ok(false);
        }
    }
    // full recomputation from the final configuration
    let odometer = state.odometer_map();
    let definitional: BigRational = odometer
        .iter()
        .map(|(&v, &k)| weights.rotor_weight(v, k))
        .sum();
    Ok(weights.particle_weight(&state.particles) == particle_w
        && weights.rotor_weight_total(&odometer) == rotor_w
        && definitional == rotor_w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn constant_weights() {
        let region: Vec<Vertex> = (-3..=3)
            .flat_map(|x| (-3..=3).map(move |y| Vertex::new(x, y)))
            .collect();
        let w = WeightSystem::constant_on(&region, BigRational::one());
        let trace = [Vertex::ORIGIN; 4];
        let init = ParticleConfig::point_mass(Vertex::ORIGIN, 4);
        assert!(weight_invariance_check(&trace, &w, &init).unwrap());
        assert!(w.rotor_weight(Vertex::ORIGIN, 3).is_zero());
        assert_eq!(w.particle_weight(&init), r(4, 1));
    }

    #[test]
    fn periodic_form_matches_definition() {
        let mut psi = HashMap::new();
        for (i, v) in [(0, 0), (1, 0), (0, -1), (-1, 0), (0, 1), (0, 2), (2, 0)]
            .into_iter()
            .enumerate()
        {
            psi.insert(Vertex::from(v), r(i as i64 * 3 - 5, i as i64 + 2));
        }
        let w = WeightSystem::new(psi);
        for x in [Vertex::new(0, 0), Vertex::new(0, 1), Vertex::new(-1, 0)] {
            for k in 0..17 {
                assert_eq!(w.rotor_weight(x, k), w.rotor_weight_by_turns(x, k), "{x} {k}");
            }
        }
    }

    #[test]
    fn holes_are_accounted_for() {
        let mut psi = HashMap::new();
        psi.insert(Vertex::new(0, -1), r(1, 2));
        let w = WeightSystem::new(psi);
        let trace = [Vertex::ORIGIN, Vertex::ORIGIN];
        assert!(weight_invariance_check(&trace, &w, &ParticleConfig::new()).unwrap());
    }
}
