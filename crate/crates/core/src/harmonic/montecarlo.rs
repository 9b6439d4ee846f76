//! Monte Carlo estimate of the harmonic measure.
//!
//! Samples are split into fixed chunks; chunk `i` draws from the ChaCha8
//! stream `i` of the given seed, so the result depends only on
//! `(shape, samples, seed)` and not on the thread count.

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::layout::Layout;
use super::BoundaryMeasure;
use crate::geometry::ClusterShape;

const CHUNK: u64 = 1 << 15;

fn run_chunk(layout: &Layout, seed: u64, chunk: u64, samples: u64) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk);
    let mut hits = vec![0u64; layout.len()];
    for _ in 0..samples {
        let mut at = layout.origin;
        while !layout.boundary[at] {
            let k = rng.gen_range(0..layout.degree[at]);
            at = layout.nbrs[at][k as usize] as usize;
        }
        hits[at] += 1;
    }
    hits
}

/// Empirical hitting distribution of `samples` simple random walks from
/// the origin. Every boundary vertex appears, possibly with count zero.
pub fn harmonic_by_montecarlo(shape: &ClusterShape, samples: u64, seed: u64) -> BoundaryMeasure {
    let layout = Layout::new(shape);
    let chunks = samples.div_ceil(CHUNK);
    let hits = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let n = CHUNK.min(samples - c * CHUNK);
            run_chunk(&layout, seed, c, n)
        })
        .reduce(
            || vec![0u64; layout.len()],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    BoundaryMeasure::from_counts(
        (0..layout.len())
            .filter(|&i| layout.boundary[i])
            .map(|i| (layout.vertex(i), BigUint::from(hits[i]))),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harmonic::max_z_score;

    #[test]
    fn deterministic_and_complete() {
        let shape = ClusterShape::cluster(2);
        let a = harmonic_by_montecarlo(&shape, 50_000, 7);
        let b = harmonic_by_montecarlo(&shape, 50_000, 7);
        assert_eq!(a, b);
        assert_eq!(a.total(), BigUint::from(50_000u32));
        assert_eq!(a.counts().len(), shape.inner_boundary().len());
        assert_ne!(a, harmonic_by_montecarlo(&shape, 50_000, 8));
    }

    #[test]
    fn cross_is_near_uniform() {
        let shape = ClusterShape::cluster(1);
        let mc = harmonic_by_montecarlo(&shape, 200_000, 1);
        let uniform = BoundaryMeasure::from_counts(shape.inner_boundary().into_iter().map(|v| (v, 1u32.into())));
        assert!(max_z_score(&mc, &uniform) < 4.0);
    }
}
