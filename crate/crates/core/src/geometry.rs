//! Geometry of the two-dimensional comb.
//!
//! The comb keeps every vertical edge of the square lattice (the teeth) and
//! only the horizontal edges on the x-axis (the backbone). Vertices on the
//! backbone have degree four; every other vertex has degree two.
//!
//! Rotors cycle through the neighbours of a vertex in clockwise order
//! East, South, West, North, skipping directions that are not edges.

use std::collections::BTreeSet;
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "(i64, i64)", into = "(i64, i64)")]
pub struct Vertex {
    pub x: i64,
    pub y: i64,
}

impl Vertex {
    pub const ORIGIN: Vertex = Vertex { x: 0, y: 0 };

    pub const fn new(x: i64, y: i64) -> Self {
        Vertex { x, y }
    }

    pub fn is_backbone(self) -> bool {
        self.y == 0
    }

    pub fn degree(self) -> usize {
        directions(self).len()
    }

    /// The vertex one unit step away in direction `d`. Does not check that
    /// the step is an edge of the comb.
    pub fn step(self, d: Direction) -> Vertex {
        let (dx, dy) = d.delta();
        Vertex::new(self.x + dx, self.y + dy)
    }

    /// Reflection into the closed first quadrant.
    pub fn abs(self) -> Vertex {
        Vertex::new(self.x.abs(), self.y.abs())
    }
}

impl From<(i64, i64)> for Vertex {
    fn from((x, y): (i64, i64)) -> Self {
        Vertex::new(x, y)
    }
}

impl From<Vertex> for (i64, i64) {
    fn from(v: Vertex) -> Self {
        (v.x, v.y)
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    East,
    South,
    West,
    North,
}

impl Direction {
    /// Clockwise cyclic order on the square lattice.
    pub const CLOCKWISE: [Direction; 4] = [
        Direction::East,
        Direction::South,
        Direction::West,
        Direction::North,
    ];

    pub fn delta(self) -> (i64, i64) {
        match self {
            Direction::East => (1, 0),
            Direction::South => (0, -1),
            Direction::West => (-1, 0),
            Direction::North => (0, 1),
        }
    }

    /// Position in [`Direction::CLOCKWISE`].
    pub fn index(self) -> u8 {
        self as u8
    }

    pub fn from_index(i: u8) -> Direction {
        Direction::CLOCKWISE[(i & 3) as usize]
    }

    pub fn as_char(self) -> char {
        match self {
            Direction::East => 'E',
            Direction::South => 'S',
            Direction::West => 'W',
            Direction::North => 'N',
        }
    }

    pub fn from_char(c: char) -> Option<Direction> {
        match c {
            'E' => Some(Direction::East),
            'S' => Some(Direction::South),
            'W' => Some(Direction::West),
            'N' => Some(Direction::North),
            _ => None,
        }
    }
}

const BACKBONE_DIRECTIONS: [Direction; 4] = Direction::CLOCKWISE;
const TOOTH_DIRECTIONS: [Direction; 2] = [Direction::South, Direction::North];

/// Directions of the existing edges at `v`, in clockwise order starting from East.
pub fn directions(v: Vertex) -> &'static [Direction] {
    if v.is_backbone() {
        &BACKBONE_DIRECTIONS
    } else {
        &TOOTH_DIRECTIONS
    }
}

pub fn neighbors(v: Vertex) -> Vec<Vertex> {
    directions(v).iter().map(|&d| v.step(d)).collect()
}

pub fn is_edge(v: Vertex, d: Direction) -> bool {
    directions(v).contains(&d)
}

/// The next existing direction strictly after `d` in clockwise order.
pub fn rotor_successor(v: Vertex, d: Direction) -> Result<Direction> {
    let dirs = directions(v);
    let pos = dirs
        .iter()
        .position(|&e| e == d)
        .ok_or(Error::InvalidRotor { vertex: v, direction: d })?;
    Ok(dirs[(pos + 1) % dirs.len()])
}

/// Advance the rotor at `v` by `k` clockwise steps from `d`.
pub fn rotor_advance(v: Vertex, d: Direction, k: u64) -> Result<Direction> {
    let dirs = directions(v);
    let pos = dirs
        .iter()
        .position(|&e| e == d)
        .ok_or(Error::InvalidRotor { vertex: v, direction: d })?;
    let len = dirs.len() as u64;
    Ok(dirs[((pos as u64 + k % len) % len) as usize])
}

/// Initial rotor configuration: teeth point away from the backbone, the
/// backbone points East for `x >= 0` and West for `x < 0`.
pub fn initial_rotor(v: Vertex) -> Direction {
    match v.y.signum() {
        1 => Direction::North,
        -1 => Direction::South,
        _ if v.x >= 0 => Direction::East,
        _ => Direction::West,
    }
}

/// Tooth-height profile `h: N0 -> N0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Profile {
    /// `h(x) = floor((x+1)^2 / 3)`, the rotor-router cluster profile.
    Cluster,
    /// `h(x) = x^2`, the profile with uniform harmonic measure.
    Square,
    /// Explicit values `h(0), h(1), ...`.
    Table(Vec<u64>),
}

impl Profile {
    /// Panics for a [`Profile::Table`] shorter than `x + 1`; shapes check
    /// the table length on construction.
    pub fn height(&self, x: u64) -> u64 {
        match self {
            Profile::Cluster => (x + 1) * (x + 1) / 3,
            Profile::Square => x * x,
            Profile::Table(t) => t[x as usize],
        }
    }

    /// Largest argument the profile is defined for.
    pub fn max_arg(&self) -> Option<u64> {
        match self {
            Profile::Table(t) => t.len().checked_sub(1).map(|n| n as u64),
            _ => None,
        }
    }

    /// Parse a whitespace or comma separated list of heights.
    pub fn from_table_text(text: &str) -> Result<Profile> {
        let values = text
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse::<u64>()
                    .map_err(|e| Error::Parse(format!("profile value {s:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if values.is_empty() {
            return Err(Error::Parse("empty profile table".into()));
        }
        Ok(Profile::Table(values))
    }

    pub fn name(&self) -> &'static str {
        match self {
            Profile::Cluster => "cluster",
            Profile::Square => "square",
            Profile::Table(_) => "table",
        }
    }
}

impl FromStr for Profile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cluster" => Ok(Profile::Cluster),
            "square" => Ok(Profile::Square),
            other => Err(Error::Parse(format!("unknown profile {other:?}"))),
        }
    }
}

/// The symmetric comb region
/// `B_m = {(x,y) : |x| <= m, |y| <= h(m - |x|)}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterShape {
    m: u64,
    profile: Profile,
    heights: Vec<u64>,
}

impl ClusterShape {
    pub fn new(m: u64, profile: Profile) -> Result<Self> {
        if let Some(max) = profile.max_arg() {
            if max < m {
                return Err(Error::Domain(format!(
                    "profile table defines h up to {max}, shape needs h({m})"
                )));
            }
        }
        let heights = (0..=m).map(|x| profile.height(x)).collect();
        Ok(ClusterShape { m, profile, heights })
    }

    pub fn cluster(m: u64) -> Self {
        Self::new(m, Profile::Cluster).expect("cluster profile is total")
    }

    pub fn square(m: u64) -> Self {
        Self::new(m, Profile::Square).expect("square profile is total")
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn profile(&self) -> &Profile {
        &self.profile
    }

    /// Tooth height at shifted coordinate `s = m - |x|`.
    pub fn height(&self, s: u64) -> u64 {
        self.heights[s as usize]
    }

    /// Height of the tooth through backbone coordinate `x`, or `None`
    /// when `|x| > m`.
    pub fn tooth_height(&self, x: i64) -> Option<u64> {
        let ax = x.unsigned_abs();
        (ax <= self.m).then(|| self.heights[(self.m - ax) as usize])
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.tooth_height(v.x)
            .is_some_and(|h| v.y.unsigned_abs() <= h)
    }

    pub fn max_height(&self) -> u64 {
        self.heights.iter().copied().max().unwrap_or(0)
    }

    /// All vertices, ordered by `(x, y)`.
    pub fn vertices(&self) -> Vec<Vertex> {
        let m = self.m as i64;
        let mut out = Vec::new();
        for x in -m..=m {
            let h = self.tooth_height(x).unwrap() as i64;
            out.extend((-h..=h).map(|y| Vertex::new(x, y)));
        }
        out
    }

    pub fn len(&self) -> u64 {
        self.heights
            .iter()
            .enumerate()
            .map(|(s, &h)| {
                let copies = if s as u64 == self.m { 1 } else { 2 };
                copies * (2 * h + 1)
            })
            .sum()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Vertices of the shape with at least one neighbour outside it,
    /// found by scanning every vertex.
    pub fn inner_boundary(&self) -> BTreeSet<Vertex> {
        self.vertices()
            .into_iter()
            .filter(|&v| neighbors(v).into_iter().any(|w| !self.contains(w)))
            .collect()
    }

    /// Closed-form description of the inner boundary: the backbone tips
    /// when `h(0) = 0` and every tooth tip of positive height.
    pub fn boundary_tips(&self) -> BTreeSet<Vertex> {
        let m = self.m as i64;
        let mut out = BTreeSet::new();
        for x in -m..=m {
            let h = self.tooth_height(x).unwrap() as i64;
            if h == 0 {
                if x.abs() == m {
                    out.insert(Vertex::new(x, 0));
                }
            } else {
                out.insert(Vertex::new(x, h));
                out.insert(Vertex::new(x, -h));
            }
        }
        out
    }

    /// `B \ ∂B`.
    pub fn interior(&self) -> BTreeSet<Vertex> {
        let boundary = self.inner_boundary();
        self.vertices()
            .into_iter()
            .filter(|v| !boundary.contains(v))
            .collect()
    }
}

/// `|B_m|` for the cluster profile:
/// `(4m^3 + 12m^2 + 24m + 5 + 2((m+2) mod 3)) / 9`.
pub fn cardinality_bm(m: u64) -> u64 {
    let num = 4 * m * m * m + 12 * m * m + 24 * m + 5 + 2 * ((m + 2) % 3);
    debug_assert_eq!(num % 9, 0);
    num / 9
}

/// The per-residue polynomial forms `N_0, N_1, N_2` of `|B_m|`, `m = 3k + i`.
pub fn cardinality_bm_by_residue(m: u64) -> u64 {
    let k = m / 3;
    match m % 3 {
        0 => 12 * k * k * k + 12 * k * k + 8 * k + 1,
        1 => 12 * k * k * k + 24 * k * k + 20 * k + 5,
        _ => 12 * k * k * k + 36 * k * k + 40 * k + 15,
    }
}

/// Write vertices as CSV rows `x,y` with a header.
pub fn write_vertices_csv<'a, W: Write>(
    mut out: W,
    vertices: impl IntoIterator<Item = &'a Vertex>,
) -> Result<()> {
    writeln!(out, "x,y")?;
    for v in vertices {
        writeln!(out, "{},{}", v.x, v.y)?;
    }
    Ok(())
}

pub fn read_vertices_csv(text: &str) -> Result<Vec<Vertex>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || (i == 0 && line == "x,y") {
            continue;
        }
        let mut parts = line.split(',');
        let mut next = || -> Result<i64> {
            parts
                .next()
                .ok_or_else(|| Error::Parse(format!("line {}: missing field", i + 1)))?
                .trim()
                .parse()
                .map_err(|e| Error::Parse(format!("line {}: {e}", i + 1)))
        };
        out.push(Vertex::new(next()?, next()?));
    }
    Ok(out)
}

/// JSON array of `[x, y]` pairs.
pub fn vertices_to_json<'a>(vertices: impl IntoIterator<Item = &'a Vertex>) -> Result<String> {
    let list: Vec<&Vertex> = vertices.into_iter().collect();
    Ok(serde_json::to_string(&list)?)
}

pub fn vertices_from_json(text: &str) -> Result<Vec<Vertex>> {
    Ok(serde_json::from_str(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: i64, y: i64) -> Vertex {
        Vertex::new(x, y)
    }

    #[test]
    fn neighbour_order() {
        assert_eq!(neighbors(v(0, 0)), vec![v(1, 0), v(0, -1), v(-1, 0), v(0, 1)]);
        assert_eq!(neighbors(v(2, 3)), vec![v(2, 2), v(2, 4)]);
        assert_eq!(neighbors(v(-1, -5)), vec![v(-1, -6), v(-1, -4)]);
    }

    #[test]
    fn successor() {
        use Direction::*;
        assert_eq!(rotor_successor(v(0, 0), East).unwrap(), South);
        assert_eq!(rotor_successor(v(0, 3), North).unwrap(), South);
        assert_eq!(rotor_successor(v(0, 0), North).unwrap(), East);
        assert!(matches!(
            rotor_successor(v(0, 3), East),
            Err(Error::InvalidRotor { .. })
        ));
    }

    #[test]
    fn full_turn_returns() {
        for p in [v(0, 0), v(-3, 0), v(2, 7), v(5, -1)] {
            for &d in directions(p) {
                let mut e = d;
                for _ in 0..p.degree() {
                    e = rotor_successor(p, e).unwrap();
                }
                assert_eq!(e, d);
                assert_eq!(rotor_advance(p, d, p.degree() as u64 * 7).unwrap(), d);
            }
        }
    }

    #[test]
    fn initial_configuration() {
        assert_eq!(initial_rotor(v(0, 0)), Direction::East);
        assert_eq!(initial_rotor(v(-2, 0)), Direction::West);
        assert_eq!(initial_rotor(v(3, -2)), Direction::South);
        assert_eq!(initial_rotor(v(-3, 2)), Direction::North);
    }

    #[test]
    fn membership() {
        let b2 = ClusterShape::cluster(2);
        assert!(b2.contains(v(0, 3)));
        assert!(!b2.contains(v(0, 4)));
        assert!(!b2.contains(v(3, 0)));
        assert!(ClusterShape::cluster(0).contains(v(0, 0)));
        assert_eq!(b2.len(), 15);
    }

    #[test]
    fn boundary_examples() {
        let b1 = ClusterShape::cluster(1);
        let want: BTreeSet<_> = [v(1, 0), v(-1, 0), v(0, 1), v(0, -1)].into();
        assert_eq!(b1.inner_boundary(), want);

        let b0 = ClusterShape::cluster(0);
        assert_eq!(b0.inner_boundary(), [v(0, 0)].into());

        let sq = ClusterShape::square(2);
        let want: BTreeSet<_> = [
            v(2, 0),
            v(-2, 0),
            v(1, 1),
            v(1, -1),
            v(-1, 1),
            v(-1, -1),
            v(0, 4),
            v(0, -4),
        ]
        .into();
        assert_eq!(sq.inner_boundary(), want);
    }

    #[test]
    fn boundary_scan_matches_tips() {
        for m in 0..15 {
            for shape in [ClusterShape::cluster(m), ClusterShape::square(m)] {
                assert_eq!(shape.inner_boundary(), shape.boundary_tips(), "m={m}");
            }
        }
    }

    #[test]
    fn cardinality_small() {
        assert_eq!(cardinality_bm(0), 1);
        assert_eq!(cardinality_bm(1), 5);
        assert_eq!(cardinality_bm(2), 15);
        assert_eq!(cardinality_bm(25), 7845);
    }

    #[test]
    fn cardinality_matches_enumeration_and_branches() {
        for m in 0..=60 {
            let shape = ClusterShape::cluster(m);
            let bound = m as i64;
            let hmax = shape.max_height() as i64;
            let mut count = 0u64;
            for x in -bound - 1..=bound + 1 {
                for y in -hmax - 1..=hmax + 1 {
                    if shape.contains(v(x, y)) {
                        count += 1;
                    }
                }
            }
            assert_eq!(cardinality_bm(m), count, "m={m}");
            assert_eq!(cardinality_bm_by_residue(m), count, "m={m}");
            let h = |x| Profile::Cluster.height(x);
            assert_eq!(
                cardinality_bm(m + 1) - cardinality_bm(m),
                2 * (h(m) + h(m + 1) + 1)
            );
        }
    }

    #[test]
    fn table_profile_checks_length() {
        let p = Profile::from_table_text("0, 1 4\n9").unwrap();
        assert_eq!(p, Profile::Table(vec![0, 1, 4, 9]));
        assert!(ClusterShape::new(3, p.clone()).is_ok());
        assert!(matches!(ClusterShape::new(4, p), Err(Error::Domain(_))));
        assert!(Profile::from_table_text("1 x").is_err());
    }

    #[test]
    fn vertex_exports() {
        let verts = ClusterShape::cluster(1).vertices();
        let mut buf = Vec::new();
        write_vertices_csv(&mut buf, &verts).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("x,y\n-1,0\n0,-1\n"));
        assert_eq!(read_vertices_csv(&text).unwrap(), verts);
        let json = vertices_to_json(&verts).unwrap();
        assert_eq!(json, "[[-1,0],[0,-1],[0,0],[0,1],[1,0]]");
        assert_eq!(vertices_from_json(&json).unwrap(), verts);
    }
}
