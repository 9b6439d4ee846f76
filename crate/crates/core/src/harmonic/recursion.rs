//! Harmonic measure of `B_m` from the backbone recursion.
//!
//! Work in the quadrant shifted so that the left tip of `B_m` sits at `0`
//! and the origin at `m`. Once every interior rotor has made only full
//! turns, the normalized odometer on tooth `x` is `e(x) (h(x) - y)`, where
//! `e(x)` counts the particles absorbed at the tip of that tooth.
//! Harmonicity on the backbone then forces, for `0 < x < m`,
//!
//! `e(x+1) h(x+1) + e(x-1) h(x-1) - 2 e(x) (h(x) + 1) = 0`,
//!
//! and the first vertex right of the tip sends as many particles to the tip
//! as up its own tooth, giving `e(0) = h(1) e(1)`.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::BoundaryMeasure;
use crate::error::{Error, Result};
use crate::geometry::{ClusterShape, Profile};

/// Exact rational sequence `e(0), e(1), ...`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalSeq {
    values: Vec<BigRational>,
}

impl RationalSeq {
    pub fn new(values: Vec<BigRational>) -> Self {
        RationalSeq { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, x: usize) -> &BigRational {
        &self.values[x]
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    /// `e(x) / x` for `x >= 1`.
    pub fn normalized(&self, x: usize) -> BigRational {
        assert!(x >= 1, "normalized sequence starts at x = 1");
        &self.values[x] / BigRational::from_integer(BigInt::from(x))
    }

    /// `(e(3k), e(3k+1), e(3k+2))` when all three terms are present.
    pub fn mod3_vector(&self, k: usize) -> Option<[BigRational; 3]> {
        let base = 3 * k;
        (base + 2 < self.values.len()).then(|| {
            [
                self.values[base].clone(),
                self.values[base + 1].clone(),
                self.values[base + 2].clone(),
            ]
        })
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.to_f64().unwrap_or(f64::NAN)).collect()
    }
}

fn int(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Solve the backbone recursion for `e(0..=len-1)` from the seeds `e(0)`, `e(1)`.
pub fn solve_sequence(
    profile: &Profile,
    len: usize,
    e0: BigRational,
    e1: BigRational,
) -> Result<RationalSeq> {
    let mut values = Vec::with_capacity(len.max(2));
    values.push(e0);
    values.push(e1);
    for x in 1..len.saturating_sub(1) as u64 {
        let h_next = profile.height(x + 1);
        if h_next == 0 {
            return Err(Error::DegenerateProfile { x: x + 1 });
        }
        let i = x as usize;
        let rhs = &values[i] * int(2 * (profile.height(x) + 1)) - &values[i - 1] * int(profile.height(x - 1));
        values.push(rhs / int(h_next));
    }
    values.truncate(len);
    Ok(RationalSeq::new(values))
}

fn check_profile(shape: &ClusterShape) -> Result<()> {
    if shape.m() >= 1 && shape.height(0) != 0 {
        return Err(Error::Domain("recursion needs h(0) = 0".into()));
    }
    for x in 1..=shape.m() {
        if shape.height(x) == 0 {
            return Err(Error::DegenerateProfile { x });
        }
    }
    Ok(())
}

/// Spread `e(m - |x|)` over the concrete inner boundary, scaled to the
/// smallest proportional vector of integers.
fn measure_from_sequence(shape: &ClusterShape, seq: &RationalSeq) -> BoundaryMeasure {
    let m = shape.m();
    let den_lcm = seq.values()[..=m as usize]
        .iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let scaled: Vec<BigInt> = seq.values()[..=m as usize]
        .iter()
        .map(|v| (v * BigRational::from_integer(den_lcm.clone())).to_integer())
        .collect();
    let g = scaled.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    let g = if g.is_zero() { BigInt::one() } else { g };
    let counts = shape.inner_boundary().into_iter().map(|z| {
        let s = (m - z.x.unsigned_abs()) as usize;
        let c = (&scaled[s] / &g).abs().to_biguint().unwrap_or_default();
        (z, c)
    });
    BoundaryMeasure::from_counts(counts)
}

/// Harmonic measure of `shape` from the recursion, seeded with
/// `e(0) = 1`, `e(1) = 1 / h(1)`.
pub fn harmonic_by_recursion(shape: &ClusterShape) -> Result<(RationalSeq, BoundaryMeasure)> {
    check_profile(shape)?;
    if shape.m() == 0 {
        let seq = RationalSeq::new(vec![BigRational::one()]);
        let measure = BoundaryMeasure::from_counts([(crate::geometry::Vertex::ORIGIN, BigUint::one())]);
        return Ok((seq, measure));
    }
    let e1 = BigRational::new(BigInt::one(), BigInt::from(shape.height(1)));
    harmonic_by_recursion_with_seeds(shape, BigRational::one(), e1)
}

pub fn harmonic_by_recursion_with_seeds(
    shape: &ClusterShape,
    e0: BigRational,
    e1: BigRational,
) -> Result<(RationalSeq, BoundaryMeasure)> {
    check_profile(shape)?;
    let len = (shape.m() + 1).max(2) as usize;
    let seq = solve_sequence(shape.profile(), len, e0, e1)?;
    if seq.values().iter().any(|v| !v.is_positive()) {
        return Err(Error::Domain("recursion produced a non-positive term".into()));
    }
    let measure = measure_from_sequence(shape, &seq);
    Ok((seq, measure))
}

/// `e(x) (h(x) - y)` on the shifted quadrant `0 <= x <= m`, `0 <= y <= h(x)`.
pub fn dirichlet_odometer(
    seq: &RationalSeq,
    profile: &Profile,
    m: u64,
) -> BTreeMap<(u64, u64), BigRational> {
    let mut out = BTreeMap::new();
    for x in 0..=m {
        let h = profile.height(x);
        for y in 0..=h {
            out.insert((x, y), seq.get(x as usize) * int(h - y));
        }
    }
    out
}
