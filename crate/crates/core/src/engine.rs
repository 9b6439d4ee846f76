//! Rotor and particle configurations and the toppling operator.
//!
//! Toppling `x` advances the rotor at `x` one clockwise step and then moves
//! one particle from `x` to the neighbour the rotor now points at. In
//! [`ToppleMode::Virtual`] a vertex may topple without holding a particle,
//! leaving a hole (negative count) behind.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::geometry::{directions, initial_rotor, is_edge, rotor_advance, Direction, Vertex};

/// Global toppling budget used when the caller does not pass one.
pub const DEFAULT_STEP_BUDGET: u64 = 10_000_000_000;

/// Sparse odometer or toppling-count function.
pub type Odometer = BTreeMap<Vertex, u64>;

/// Rotor configuration. Vertices that were never assigned resolve to the
/// initial configuration.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RotorConfig {
    assigned: HashMap<Vertex, Direction>,
}

impl RotorConfig {
    pub fn initial() -> Self {
        Self::default()
    }

    pub fn get(&self, v: Vertex) -> Direction {
        self.assigned.get(&v).copied().unwrap_or_else(|| initial_rotor(v))
    }

    pub fn set(&mut self, v: Vertex, d: Direction) -> Result<()> {
        if !is_edge(v, d) {
            return Err(Error::InvalidRotor { vertex: v, direction: d });
        }
        self.assigned.insert(v, d);
        Ok(())
    }

    /// Explicitly stored rotors, sorted by vertex.
    pub fn assigned(&self) -> BTreeMap<Vertex, Direction> {
        self.assigned.iter().map(|(&v, &d)| (v, d)).collect()
    }

    /// Whether the two configurations agree on every vertex of `region`.
    pub fn agrees_on<'a>(&self, other: &RotorConfig, region: impl IntoIterator<Item = &'a Vertex>) -> bool {
        region.into_iter().all(|&v| self.get(v) == other.get(v))
    }
}

/// Finitely supported particle configuration.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ParticleConfig {
    counts: HashMap<Vertex, i64>,
}

impl ParticleConfig {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn point_mass(v: Vertex, n: i64) -> Self {
        let mut p = Self::new();
        p.add(v, n);
        p
    }

    pub fn get(&self, v: Vertex) -> i64 {
        self.counts.get(&v).copied().unwrap_or(0)
    }

    pub fn add(&mut self, v: Vertex, delta: i64) {
        if delta == 0 {
            return;
        }
        let c = self.counts.entry(v).or_insert(0);
        *c += delta;
        if *c == 0 {
            self.counts.remove(&v);
        }
    }

    pub fn total(&self) -> i64 {
        self.counts.values().sum()
    }

    /// Non-zero entries sorted by vertex.
    pub fn support(&self) -> BTreeMap<Vertex, i64> {
        self.counts.iter().map(|(&v, &c)| (v, c)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ToppleMode {
    #[default]
    Legal,
    Virtual,
}

/// Rotors, particles, odometer and sinks of a rotor-router system on the comb.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EngineState {
    pub rotors: RotorConfig,
    pub particles: ParticleConfig,
    odometer: HashMap<Vertex, u64>,
    sinks: BTreeSet<Vertex>,
}

/// Result of [`EngineState::rotor_walk`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WalkOutcome {
    pub stop_vertex: Vertex,
    pub steps: u64,
}

impl EngineState {
    /// Initial rotors, no particles, no sinks.
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_particles(particles: ParticleConfig) -> Self {
        EngineState { particles, ..Self::default() }
    }

    pub fn with_sinks(mut self, sinks: impl IntoIterator<Item = Vertex>) -> Self {
        self.sinks.extend(sinks);
        self
    }

    pub(crate) fn from_parts(
        rotors: RotorConfig,
        particles: ParticleConfig,
        odometer: HashMap<Vertex, u64>,
        sinks: BTreeSet<Vertex>,
    ) -> Self {
        EngineState { rotors, particles, odometer, sinks }
    }

    pub fn sinks(&self) -> &BTreeSet<Vertex> {
        &self.sinks
    }

    pub fn is_sink(&self, v: Vertex) -> bool {
        self.sinks.contains(&v)
    }

    pub fn odometer(&self, v: Vertex) -> u64 {
        self.odometer.get(&v).copied().unwrap_or(0)
    }

    /// Non-zero odometer values sorted by vertex.
    pub fn odometer_map(&self) -> Odometer {
        self.odometer.iter().map(|(&v, &u)| (v, u)).collect()
    }

    /// Send one particle out of `x`. Returns the vertex it was sent to.
    pub fn topple(&mut self, x: Vertex, mode: ToppleMode) -> Result<Vertex> {
        if self.is_sink(x) {
            return Err(Error::SinkTopple(x));
        }
        if mode == ToppleMode::Legal && self.particles.get(x) < 1 {
            return Err(Error::IllegalTopple(x));
        }
        let d = rotor_advance(x, self.rotors.get(x), 1)?;
        self.rotors.assigned.insert(x, d);
        let target = x.step(d);
        self.particles.add(x, -1);
        self.particles.add(target, 1);
        *self.odometer.entry(x).or_insert(0) += 1;
        Ok(target)
    }

    /// Topple `x` exactly `k` times in virtual mode, in one pass.
    ///
    /// The `j`-th toppling sends its particle to the `j`-th direction after
    /// the current rotor, so the neighbour at offset `i` (`1 <= i <= d`)
    /// receives `floor((k - i) / d) + 1` particles when `k >= i`.
    pub fn topple_many(&mut self, x: Vertex, k: u64) -> Result<()> {
        if k == 0 {
            return Ok(());
        }
        if self.is_sink(x) {
            return Err(Error::SinkTopple(x));
        }
        let dirs = directions(x);
        let d = dirs.len() as u64;
        let current = self.rotors.get(x);
        let pos = dirs
            .iter()
            .position(|&e| e == current)
            .ok_or(Error::InvalidRotor { vertex: x, direction: current })? as u64;
        for i in 1..=d.min(k) {
            let sent = (k - i) / d + 1;
            let target = x.step(dirs[((pos + i) % d) as usize]);
            self.particles.add(target, sent as i64);
        }
        self.particles.add(x, -(k as i64));
        self.rotors.assigned.insert(x, dirs[((pos + k % d) % d) as usize]);
        *self.odometer.entry(x).or_insert(0) += k;
        Ok(())
    }

    /// Apply `F^u`: topple every vertex `x` exactly `u(x)` times in virtual
    /// mode. The result does not depend on the order of topplings.
    pub fn apply_fu(&mut self, u: &Odometer) -> Result<()> {
        for (&x, &k) in u {
            self.topple_many(x, k)?;
        }
        Ok(())
    }

    /// Add one particle at `start` and move it by legal topplings until it
    /// occupies a vertex satisfying `stop`.
    pub fn rotor_walk(
        &mut self,
        start: Vertex,
        mut stop: impl FnMut(Vertex) -> bool,
        budget: u64,
    ) -> Result<WalkOutcome> {
        self.particles.add(start, 1);
        let mut at = start;
        let mut steps = 0u64;
        while !stop(at) {
            if steps == budget {
                return Err(Error::BudgetExceeded { budget });
            }
            at = self.topple(at, ToppleMode::Legal)?;
            steps += 1;
        }
        Ok(WalkOutcome { stop_vertex: at, steps })
    }
}

/// Whether the rotors restricted to `region` contain no directed cycle.
/// Only arrows between two vertices of `region` are followed.
pub fn is_acyclic(rotors: &RotorConfig, region: &BTreeSet<Vertex>) -> bool {
    // 0 = unvisited, otherwise the id of the walk that first reached the vertex
    let mut mark: HashMap<Vertex, usize> = HashMap::with_capacity(region.len());
    let mut done: HashMap<Vertex, bool> = HashMap::with_capacity(region.len());
    for (id, &start) in region.iter().enumerate() {
        if done.contains_key(&start) {
            continue;
        }
        let mut path = Vec::new();
        let mut v = start;
        loop {
            if done.contains_key(&v) || !region.contains(&v) {
                break;
            }
            if mark.get(&v) == Some(&id) {
                return false;
            }
            mark.insert(v, id);
            path.push(v);
            v = v.step(rotors.get(v));
        }
        for p in path {
            done.insert(p, true);
        }
    }
    true
}

/// Outcome of checking a candidate odometer against the four sufficient
/// conditions for it to be the rotor-router odometer of `n` particles
/// started at the origin.
#[derive(Debug, Clone)]
pub struct OdometerVerdict {
    /// (a) at most one particle on every vertex
    pub at_most_one: bool,
    /// (b) the active set is finite
    pub finite_active_set: bool,
    /// (c) exactly one particle on every vertex of the active set
    pub one_on_active_set: bool,
    /// (d) final rotors acyclic on the active set
    pub acyclic_on_active_set: bool,
    /// Vertices breaking (a) or (c), with their final particle count.
    pub violations: Vec<(Vertex, i64)>,
    pub state: EngineState,
}

impl OdometerVerdict {
    pub fn certified(&self) -> bool {
        self.at_most_one
            && self.finite_active_set
            && self.one_on_active_set
            && self.acyclic_on_active_set
    }

    /// Names of the conditions that failed, `a` to `d`.
    pub fn failed_conditions(&self) -> Vec<char> {
        [
            ('a', self.at_most_one),
            ('b', self.finite_active_set),
            ('c', self.one_on_active_set),
            ('d', self.acyclic_on_active_set),
        ]
        .into_iter()
        .filter_map(|(c, ok)| (!ok).then_some(c))
        .collect()
    }
}

/// Check a candidate odometer `u_star` for `n` particles at the origin.
///
/// `active` defaults to `{x : u_star(x) > 0}`.
pub fn verify_odometer(
    u_star: &Odometer,
    n: u64,
    active: Option<&BTreeSet<Vertex>>,
) -> Result<OdometerVerdict> {
    let mut state = EngineState::with_particles(ParticleConfig::point_mass(Vertex::ORIGIN, n as i64));
    state.apply_fu(u_star)?;

    let derived;
    let active = match active {
        Some(a) => a,
        None => {
            derived = u_star
                .iter()
                .filter_map(|(&v, &k)| (k > 0).then_some(v))
                .collect::<BTreeSet<_>>();
            &derived
        }
    };

    let mut violations = Vec::new();
    let mut at_most_one = true;
    for (v, c) in state.particles.support() {
        if c > 1 {
            at_most_one = false;
            violations.push((v, c));
        }
    }
    let mut one_on_active_set = true;
    for &v in active {
        let c = state.particles.get(v);
        if c != 1 {
            one_on_active_set = false;
            if c <= 1 {
                violations.push((v, c));
            }
        }
    }
    violations.sort();
    violations.dedup();
    let acyclic_on_active_set = is_acyclic(&state.rotors, active);

    Ok(OdometerVerdict {
        at_most_one,
        // the active set is drawn from a finite map
        finite_active_set: true,
        one_on_active_set,
        acyclic_on_active_set,
        violations,
        state,
    })
}
