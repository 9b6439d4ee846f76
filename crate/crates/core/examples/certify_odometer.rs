//! Certify the closed-form odometer of `B_m` without simulating the walk:
//! topple every vertex `u_m(x)` times and check the resulting state.

use comb_rotor::oracle::odometer_map;
use comb_rotor::{cardinality_bm, verify_odometer, ClusterShape, Vertex};

fn main() -> comb_rotor::Result<()> {
    for m in [3, 10, 40] {
        let u = odometer_map(m)?;
        let interior = ClusterShape::cluster(m).interior();
        let verdict = verify_odometer(&u, cardinality_bm(m), Some(&interior))?;
        println!(
            "m={m:>2}: at most one {} | active set finite {} | one on active set {} | acyclic {}",
            verdict.at_most_one,
            verdict.finite_active_set,
            verdict.one_on_active_set,
            verdict.acyclic_on_active_set
        );
    }

    // one extra toppling at the origin is caught
    let mut u = odometer_map(5)?;
    *u.get_mut(&Vertex::ORIGIN).unwrap() += 1;
    let verdict = verify_odometer(&u, cardinality_bm(5), None)?;
    println!("perturbed u_5: failed conditions {:?}", verdict.failed_conditions());
    Ok(())
}
