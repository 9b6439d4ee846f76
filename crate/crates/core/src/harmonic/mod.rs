//! Harmonic measure of comb shapes `B_m` seen from the origin.
//!
//! Three independent routes are provided: exit counts of a rotor-router
//! process run until every interior rotor has made only full turns
//! ([`harmonic_by_rotor`]), the exact linear recursion along the backbone
//! ([`harmonic_by_recursion`]), and plain random walks
//! ([`harmonic_by_montecarlo`]). [`exact`] solves the Dirichlet problem
//! directly and serves as a reference for small shapes.

pub mod asymptotics;
pub mod exact;
mod layout;
pub mod montecarlo;
pub mod recursion;
pub mod rotor;
pub mod weights;

use std::collections::BTreeMap;
use std::io::Write;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Vertex;

pub use asymptotics::{estimate_c, matrix_recursion_step, verify_monotone_bounds, CBracket};
pub use montecarlo::harmonic_by_montecarlo;
pub use recursion::{dirichlet_odometer, harmonic_by_recursion, RationalSeq};
pub use rotor::{add_particle_ex, harmonic_by_rotor, RotorMeasure};
pub use weights::{weight_invariance_check, WeightSystem};

/// Non-negative integer weights on boundary vertices; the normalized
/// measure is `nu(z) = e(z) / sum(e)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BoundaryMeasure {
    counts: BTreeMap<Vertex, BigUint>,
}

#[derive(Debug, Serialize, Deserialize)]
struct MeasureRow {
    x: i64,
    y: i64,
    e: String,
    nu_num: String,
    nu_den: String,
}

impl BoundaryMeasure {
    pub fn from_counts(counts: impl IntoIterator<Item = (Vertex, BigUint)>) -> Self {
        BoundaryMeasure { counts: counts.into_iter().collect() }
    }

    pub fn counts(&self) -> &BTreeMap<Vertex, BigUint> {
        &self.counts
    }

    pub fn count(&self, v: Vertex) -> BigUint {
        self.counts.get(&v).cloned().unwrap_or_default()
    }

    pub fn total(&self) -> BigUint {
        self.counts.values().sum()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.counts.keys().copied()
    }

    /// `e(v) / total`, or zero for an empty measure.
    pub fn nu(&self, v: Vertex) -> BigRational {
        let total = self.total();
        if total.is_zero() {
            return BigRational::zero();
        }
        BigRational::new(self.count(v).into(), total.into())
    }

    pub fn nu_f64(&self, v: Vertex) -> f64 {
        self.nu(v).to_f64().unwrap_or(f64::NAN)
    }

    /// Invariance under `x -> -x` and `y -> -y`.
    pub fn is_symmetric(&self) -> bool {
        self.counts.iter().all(|(v, c)| {
            [Vertex::new(-v.x, v.y), Vertex::new(v.x, -v.y)]
                .iter()
                .all(|w| self.counts.get(w) == Some(c))
        })
    }

    /// Whether the normalized measures coincide exactly.
    pub fn same_distribution(&self, other: &BoundaryMeasure) -> bool {
        self.counts.keys().eq(other.counts.keys())
            && self.counts.keys().all(|&v| self.nu(v) == other.nu(v))
    }

    fn rows(&self) -> Vec<MeasureRow> {
        let total = self.total();
        self.counts
            .iter()
            .map(|(v, c)| {
                let nu = if total.is_zero() {
                    BigRational::zero()
                } else {
                    BigRational::new(c.clone().into(), total.clone().into())
                };
                MeasureRow {
                    x: v.x,
                    y: v.y,
                    e: c.to_string(),
                    nu_num: nu.numer().to_string(),
                    nu_den: nu.denom().to_string(),
                }
            })
            .collect()
    }

    /// CSV with columns `x,y,e,nu_num,nu_den`; `nu` is in lowest terms.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "x,y,e,nu_num,nu_den")?;
        for r in self.rows() {
            writeln!(out, "{},{},{},{},{}", r.x, r.y, r.e, r.nu_num, r.nu_den)?;
        }
        Ok(())
    }

    pub fn read_csv(text: &str) -> Result<Self> {
        let mut counts = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || (i == 0 && line.starts_with("x,")) {
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 5 {
                return Err(Error::Parse(format!("line {}: expected 5 fields", i + 1)));
            }
            let bad = |e: &dyn std::fmt::Display| Error::Parse(format!("line {}: {e}", i + 1));
            let x: i64 = fields[0].parse().map_err(|e| bad(&e))?;
            let y: i64 = fields[1].parse().map_err(|e| bad(&e))?;
            let e: BigUint = fields[2].parse().map_err(|e| bad(&e))?;
            counts.insert(Vertex::new(x, y), e);
        }
        Ok(BoundaryMeasure { counts })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.rows())?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let rows: Vec<MeasureRow> = serde_json::from_str(text)?;
        let mut counts = BTreeMap::new();
        for r in rows {
            let e: BigUint = r
                .e
                .parse()
                .map_err(|err| Error::Parse(format!("count {:?}: {err}", r.e)))?;
            counts.insert(Vertex::new(r.x, r.y), e);
        }
        Ok(BoundaryMeasure { counts })
    }
}

/// Largest `|nu_a(z) - nu_b(z)|` over the union of supports.
pub fn max_discrepancy(a: &BoundaryMeasure, b: &BoundaryMeasure) -> f64 {
    a.vertices()
        .chain(b.vertices())
        .map(|v| (a.nu_f64(v) - b.nu_f64(v)).abs())
        .fold(0.0, f64::max)
}

/// Largest standardized deviation `|p_hat - p| / sqrt(p(1-p)/samples)` of
/// an empirical measure from a reference, with `samples = sum(e)` of the
/// empirical one. Vertices with `p` in `{0, 1}` must match exactly.
pub fn max_z_score(empirical: &BoundaryMeasure, reference: &BoundaryMeasure) -> f64 {
    let samples = empirical.total().to_f64().unwrap_or(0.0);
    reference
        .vertices()
        .chain(empirical.vertices())
        .map(|v| {
            let p = reference.nu_f64(v);
            let p_hat = empirical.nu_f64(v);
            let var = p * (1.0 - p) / samples;
            if var == 0.0 {
                if p_hat == p {
                    0.0
                } else {
                    f64::INFINITY
                }
            } else {
                (p_hat - p).abs() / var.sqrt()
            }
        })
        .fold(0.0, f64::max)
}
