//! Draw the aggregate of 15 particles with odometer labels, and the
//! harmonic measure of `B_5`.
//!
//! cargo run --example draw_cluster -- out_dir

use std::path::PathBuf;

use comb_rotor::harmonic::harmonic_by_recursion;
use comb_rotor::render::{render_measure, render_state, RenderOptions};
use comb_rotor::snapshot::Snapshot;
use comb_rotor::{aggregate, ClusterShape};

fn main() -> comb_rotor::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| ".".into()));
    std::fs::create_dir_all(&dir)?;

    let agg = aggregate(15)?;
    std::fs::write(dir.join("cluster15.svg"), render_state(&agg.state, RenderOptions { labels: true }))?;
    std::fs::write(dir.join("cluster15.json"), Snapshot::from_state(&agg.state).to_json()?)?;

    let shape = ClusterShape::cluster(5);
    let (_, measure) = harmonic_by_recursion(&shape)?;
    std::fs::write(dir.join("measure5.svg"), render_measure(&shape, &measure))?;
    println!("wrote cluster15.svg, cluster15.json, measure5.svg to {}", dir.display());
    Ok(())
}
