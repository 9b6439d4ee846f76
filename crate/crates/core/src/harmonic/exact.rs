//! Exact solutions of the Dirichlet problem on small shapes by Gaussian
//! elimination over the rationals.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::weights::WeightSystem;
use crate::error::{Error, Result};
use crate::geometry::{neighbors, ClusterShape, Vertex};

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Solve `a * x = b` with partial pivoting on the first non-zero entry.
pub(crate) fn solve_dense(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> Result<Vec<BigRational>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or_else(|| Error::Domain("singular linear system".into()))?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = a[col][col].recip();
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] * &inv;
            let (upper, lower) = a.split_at_mut(r);
            for (target, pivot_entry) in lower[0][col..].iter_mut().zip(&upper[col][col..]) {
                let delta = &factor * pivot_entry;
                if !delta.is_zero() {
                    *target -= delta;
                }
            }
            let delta = &factor * &b[col];
            b[r] -= delta;
        }
    }
    let mut x = vec![BigRational::zero(); n];
    for r in (0..n).rev() {
        let mut acc = b[r].clone();
        for c in r + 1..n {
            if !a[r][c].is_zero() {
                acc -= &a[r][c] * &x[c];
            }
        }
        x[r] = acc / &a[r][r];
    }
    Ok(x)
}

fn interior_index(shape: &ClusterShape) -> (Vec<Vertex>, HashMap<Vertex, usize>) {
    let interior: Vec<Vertex> = shape.interior().into_iter().collect();
    let index = interior.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    (interior, index)
}

/// Expected number of visits to each interior vertex by a simple random
/// walk from the origin before it first hits the inner boundary.
pub fn green_function(shape: &ClusterShape) -> Result<BTreeMap<Vertex, BigRational>> {
    let (interior, index) = interior_index(shape);
    let n = interior.len();
    // g(x) - sum_{y ~ x, y interior} g(y) / d(y) = [x = o]
    let mut a = vec![vec![BigRational::zero(); n]; n];
    let mut b = vec![BigRational::zero(); n];
    for (i, &x) in interior.iter().enumerate() {
        a[i][i] = BigRational::one();
        for y in neighbors(x) {
            if let Some(&j) = index.get(&y) {
                a[i][j] -= BigRational::new(BigInt::one(), BigInt::from(y.degree()));
            }
        }
        if x == Vertex::ORIGIN {
            b[i] = BigRational::one();
        }
    }
    let g = solve_dense(a, b)?;
    Ok(interior.into_iter().zip(g).collect())
}

/// Harmonic measure of the inner boundary seen from the origin.
pub fn exact_harmonic_measure(shape: &ClusterShape) -> Result<BTreeMap<Vertex, BigRational>> {
    let boundary = shape.inner_boundary();
    if boundary.contains(&Vertex::ORIGIN) {
        return Ok(boundary
            .into_iter()
            .map(|z| (z, if z == Vertex::ORIGIN { rat(1) } else { rat(0) }))
            .collect());
    }
    let g = green_function(shape)?;
    let mut nu = BTreeMap::new();
    for z in boundary {
        let mut total = BigRational::zero();
        for y in neighbors(z) {
            if let Some(gy) = g.get(&y) {
                total += gy / rat(y.degree() as i64);
            }
        }
        nu.insert(z, total);
    }
    Ok(nu)
}

/// `psi(x) = P_x[walk first hits the boundary at z]` on the whole shape.
pub fn hitting_probability(shape: &ClusterShape, z: Vertex) -> Result<WeightSystem> {
    let boundary = shape.inner_boundary();
    if !boundary.contains(&z) {
        return Err(Error::Domain(format!("{z} is not on the inner boundary")));
    }
    let (interior, index) = interior_index(shape);
    let n = interior.len();
    // d(x) psi(x) - sum_{y ~ x} psi(y) = 0, boundary values moved to the right
    let mut a = vec![vec![BigRational::zero(); n]; n];
    let mut b = vec![BigRational::zero(); n];
    for (i, &x) in interior.iter().enumerate() {
        a[i][i] = rat(x.degree() as i64);
        for y in neighbors(x) {
            match index.get(&y) {
                Some(&j) => a[i][j] -= rat(1),
                None if y == z => b[i] += rat(1),
                None => {}
            }
        }
    }
    let values = solve_dense(a, b)?;
    let mut psi: HashMap<Vertex, BigRational> = interior.into_iter().zip(values).collect();
    psi.insert(z, rat(1));
    Ok(WeightSystem::new(psi))
}
