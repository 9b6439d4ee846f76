//! Grow the rotor-router cluster particle by particle and watch it pass
//! through the shapes `B_m`.
//!
//! cargo run --release --example aggregate_cluster -- 12

use std::collections::BTreeSet;

use comb_rotor::{cardinality_bm, Aggregator, ClusterShape, Vertex};

fn main() -> comb_rotor::Result<()> {
    let m_max: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(10);
    let mut agg = Aggregator::new();
    println!("{:>3} {:>7} {:>12} {:>8}", "m", "|B_m|", "topplings", "exact");
    for m in 0..=m_max {
        let n = cardinality_bm(m);
        agg.add_particles(n - agg.particles())?;
        let shape: BTreeSet<Vertex> = ClusterShape::cluster(m).vertices().into_iter().collect();
        println!("{m:>3} {n:>7} {:>12} {:>8}", agg.steps(), agg.cluster() == shape);
    }
    println!("odometer at the origin: {}", agg.odometer(Vertex::ORIGIN));
    Ok(())
}
