//! Rotor-router aggregation from the origin.
//!
//! Particles are released one at a time at the origin and walk until they
//! first reach a vertex outside the current cluster, where they settle.
//! Rotors persist from one particle to the next. The walk runs on a dense
//! grid that doubles whenever a particle steps past its edge.

use std::collections::{BTreeSet, HashMap};

use crate::engine::{EngineState, Odometer, ParticleConfig, RotorConfig, DEFAULT_STEP_BUDGET};
use crate::error::{Error, Result};
use crate::geometry::{initial_rotor, Direction, Vertex};

#[derive(Debug, Clone, Copy)]
struct Cell {
    rotor: u8,
    occupied: bool,
    odometer: u64,
}

/// Dense rectangular window `[-half_w, half_w] x [-half_h, half_h]`.
#[derive(Debug, Clone)]
struct Grid {
    half_w: i64,
    half_h: i64,
    cells: Vec<Cell>,
}

impl Grid {
    fn new(half_w: i64, half_h: i64) -> Self {
        let mut g = Grid { half_w, half_h, cells: Vec::new() };
        g.cells = g.fresh_cells();
        g
    }

    fn width(&self) -> i64 {
        2 * self.half_w + 1
    }

    fn fresh_cells(&self) -> Vec<Cell> {
        let mut cells = Vec::with_capacity((self.width() * (2 * self.half_h + 1)) as usize);
        for y in -self.half_h..=self.half_h {
            for x in -self.half_w..=self.half_w {
                cells.push(Cell {
                    rotor: initial_rotor(Vertex::new(x, y)).index(),
                    occupied: false,
                    odometer: 0,
                });
            }
        }
        cells
    }

    #[inline]
    fn index(&self, v: Vertex) -> Option<usize> {
        if v.x.abs() > self.half_w || v.y.abs() > self.half_h {
            return None;
        }
        Some(((v.y + self.half_h) * self.width() + v.x + self.half_w) as usize)
    }

    fn grow_to_fit(&mut self, v: Vertex) {
        let mut w = self.half_w;
        let mut h = self.half_h;
        while v.x.abs() > w {
            w = 2 * w + 1;
        }
        while v.y.abs() > h {
            h = 2 * h + 1;
        }
        let old = std::mem::replace(self, Grid::new(w, h));
        for y in -old.half_h..=old.half_h {
            for x in -old.half_w..=old.half_w {
                let p = Vertex::new(x, y);
                let c = old.cells[old.index(p).unwrap()];
                let i = self.index(p).unwrap();
                self.cells[i] = c;
            }
        }
    }

    fn cell(&self, v: Vertex) -> Option<&Cell> {
        self.index(v).map(|i| &self.cells[i])
    }

    fn iter(&self) -> impl Iterator<Item = (Vertex, &Cell)> + '_ {
        let w = self.width();
        self.cells.iter().enumerate().map(move |(i, c)| {
            let i = i as i64;
            (Vertex::new(i % w - self.half_w, i / w - self.half_h), c)
        })
    }
}

/// Incremental rotor-router aggregation.
#[derive(Debug, Clone)]
pub struct Aggregator {
    grid: Grid,
    settle_order: Vec<Vertex>,
    steps: u64,
    budget: u64,
}

impl Default for Aggregator {
    fn default() -> Self {
        Self::new()
    }
}

impl Aggregator {
    pub fn new() -> Self {
        Self::with_budget(DEFAULT_STEP_BUDGET)
    }

    /// `budget` bounds the total number of topplings over all particles.
    pub fn with_budget(budget: u64) -> Self {
        Aggregator {
            grid: Grid::new(8, 32),
            settle_order: Vec::new(),
            steps: 0,
            budget,
        }
    }

    /// Release one particle at the origin and return where it settled.
    pub fn add_particle(&mut self) -> Result<Vertex> {
        let mut at = Vertex::ORIGIN;
        loop {
            let i = match self.grid.index(at) {
                Some(i) => i,
                None => {
                    self.grid.grow_to_fit(at);
                    self.grid.index(at).unwrap()
                }
            };
            let cell = &mut self.grid.cells[i];
            if !cell.occupied {
                cell.occupied = true;
                self.settle_order.push(at);
                return Ok(at);
            }
            if self.steps == self.budget {
                return Err(Error::BudgetExceeded { budget: self.budget });
            }
            // backbone rotors cycle E,S,W,N; tooth rotors alternate S,N
            cell.rotor = if at.y == 0 { (cell.rotor + 1) & 3 } else { cell.rotor ^ 2 };
            cell.odometer += 1;
            self.steps += 1;
            let (dx, dy) = Direction::from_index(cell.rotor).delta();
            at = Vertex::new(at.x + dx, at.y + dy);
        }
    }

    pub fn add_particles(&mut self, n: u64) -> Result<()> {
        for _ in 0..n {
            self.add_particle()?;
        }
        Ok(())
    }

    pub fn particles(&self) -> u64 {
        self.settle_order.len() as u64
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    pub fn settle_order(&self) -> &[Vertex] {
        &self.settle_order
    }

    pub fn is_occupied(&self, v: Vertex) -> bool {
        self.grid.cell(v).is_some_and(|c| c.occupied)
    }

    pub fn odometer(&self, v: Vertex) -> u64 {
        self.grid.cell(v).map_or(0, |c| c.odometer)
    }

    pub fn rotor(&self, v: Vertex) -> Direction {
        self.grid
            .cell(v)
            .map_or_else(|| initial_rotor(v), |c| Direction::from_index(c.rotor))
    }

    pub fn cluster(&self) -> BTreeSet<Vertex> {
        self.settle_order.iter().copied().collect()
    }

    /// Non-zero odometer values.
    pub fn odometer_map(&self) -> Odometer {
        self.grid
            .iter()
            .filter(|(_, c)| c.odometer > 0)
            .map(|(v, c)| (v, c.odometer))
            .collect()
    }

    /// Sparse engine state: one particle on each cluster vertex, rotors
    /// stored for every vertex that toppled.
    pub fn to_state(&self) -> EngineState {
        let mut rotors = RotorConfig::initial();
        let mut particles = ParticleConfig::new();
        let mut odometer = HashMap::new();
        for (v, c) in self.grid.iter() {
            if c.odometer > 0 {
                rotors
                    .set(v, Direction::from_index(c.rotor))
                    .expect("grid rotors point along edges");
                odometer.insert(v, c.odometer);
            }
            if c.occupied {
                particles.add(v, 1);
            }
        }
        EngineState::from_parts(rotors, particles, odometer, BTreeSet::new())
    }
}

/// Result of [`aggregate`].
#[derive(Debug, Clone)]
pub struct Aggregation {
    pub cluster: BTreeSet<Vertex>,
    pub state: EngineState,
    pub settle_order: Vec<Vertex>,
}

/// Run rotor-router aggregation with `n` particles from the initial rotors.
pub fn aggregate(n: u64) -> Result<Aggregation> {
    aggregate_with_budget(n, DEFAULT_STEP_BUDGET)
}

pub fn aggregate_with_budget(n: u64, budget: u64) -> Result<Aggregation> {
    if n == 0 {
        return Err(Error::Domain("aggregation needs at least one particle".into()));
    }
    let mut agg = Aggregator::with_budget(budget);
    agg.add_particles(n)?;
    Ok(Aggregation {
        cluster: agg.cluster(),
        state: agg.to_state(),
        settle_order: agg.settle_order().to_vec(),
    })
}
