//! Modified aggregation on the half-line `{0, 1, 2, ...}` with sink `0`.
//!
//! Every particle starts at `1` and walks until it either reaches the sink
//! or steps onto the first vertex outside the current cluster
//! `{1, ..., extent}`. Rotors initially point away from the sink and
//! alternate on every visit.

/// Incremental half-line process.
#[derive(Debug, Clone, Default)]
pub struct HalfLine {
    /// `points_down[y]` for `y >= 1`; index 0 unused.
    points_down: Vec<bool>,
    odometer: Vec<u64>,
    extent: usize,
    particles: u64,
}

impl HalfLine {
    pub fn new() -> Self {
        HalfLine {
            points_down: vec![false, false],
            odometer: vec![0, 0],
            extent: 0,
            particles: 0,
        }
    }

    /// Release one particle at `1`; returns the stopping vertex (`0` for the sink).
    pub fn add_particle(&mut self) -> usize {
        self.particles += 1;
        let mut y = 1usize;
        loop {
            if y == 0 {
                return 0;
            }
            if y > self.extent {
                self.extent = y;
                self.points_down.push(false);
                self.odometer.push(0);
                return y;
            }
            self.points_down[y] = !self.points_down[y];
            self.odometer[y] += 1;
            y = if self.points_down[y] { y - 1 } else { y + 1 };
        }
    }

    pub fn particles(&self) -> u64 {
        self.particles
    }

    /// Cluster `{1, ..., extent}`.
    pub fn extent(&self) -> usize {
        self.extent
    }

    /// Largest `r` such that the rotors at `1..=r` all point to the sink.
    pub fn frontier(&self) -> usize {
        (1..=self.extent)
            .take_while(|&y| self.points_down[y])
            .last()
            .unwrap_or(0)
    }

    /// Whether the rotors have the form "down on `1..=r`, up above".
    pub fn rotors_split_at_frontier(&self) -> bool {
        let r = self.frontier();
        (r + 1..=self.extent).all(|y| !self.points_down[y])
    }

    pub fn odometer(&self, y: usize) -> u64 {
        self.odometer.get(y).copied().unwrap_or(0)
    }

    pub fn odometer_slice(&self) -> &[u64] {
        &self.odometer[..=self.extent]
    }
}

/// Result of [`halfline_process`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfLineOutcome {
    pub extent: usize,
    pub frontier: usize,
    /// `odometer[y]` for `0 <= y <= extent`.
    pub odometer: Vec<u64>,
    pub stops: Vec<usize>,
}

pub fn halfline_process(n: u64) -> HalfLineOutcome {
    let mut line = HalfLine::new();
    let stops = (0..n).map(|_| line.add_particle()).collect();
    HalfLineOutcome {
        extent: line.extent(),
        frontier: line.frontier(),
        odometer: line.odometer_slice().to_vec(),
        stops,
    }
}
