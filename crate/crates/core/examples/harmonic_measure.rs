//! Harmonic measure of `B_m` seen from the origin, computed three ways.

use comb_rotor::harmonic::rotor::DEFAULT_CAP;
use comb_rotor::harmonic::{harmonic_by_montecarlo, harmonic_by_recursion, harmonic_by_rotor, max_z_score};
use comb_rotor::ClusterShape;

fn main() -> comb_rotor::Result<()> {
    for shape in [ClusterShape::square(4), ClusterShape::cluster(4)] {
        let name = shape.profile().name();
        let (seq, exact) = harmonic_by_recursion(&shape)?;
        let rotor = harmonic_by_rotor(&shape, DEFAULT_CAP)?;
        let mc = harmonic_by_montecarlo(&shape, 200_000, 1);
        let e: Vec<String> = seq.values().iter().map(|v| v.to_string()).collect();
        println!("{name} profile, m = 4");
        println!("  e(0..=4) = {}", e.join(", "));
        println!(
            "  rotor: {} particles, exact {}, agrees with recursion {}",
            rotor.particles,
            rotor.exact,
            rotor.measure.same_distribution(&exact)
        );
        println!("  Monte Carlo: max deviation {:.2} sigma", max_z_score(&mc, &exact));
        for z in exact.vertices().filter(|z| z.x >= 0 && z.y >= 0) {
            println!("    nu{z} = {} ~ {:.5}", exact.nu(z), mc.nu_f64(z));
        }
    }
    Ok(())
}
