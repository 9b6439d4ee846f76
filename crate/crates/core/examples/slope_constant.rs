//! Exact run of the cluster recursion: `e(x)/x` decreases towards a
//! constant below 1/2.
//!
//! cargo run --release --example slope_constant -- 3000

use comb_rotor::harmonic::asymptotics::cluster_sequence;
use comb_rotor::harmonic::{estimate_c, verify_monotone_bounds};
use num_traits::ToPrimitive;

fn main() -> comb_rotor::Result<()> {
    let x_max: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(3000);
    let seq = cluster_sequence(61);
    for x in [1, 2, 3, 9, 20, 60] {
        println!("e({x})/{x} = {:.6}", seq.normalized(x).to_f64().unwrap());
    }
    println!("monotone bounds up to {x_max}: {}", verify_monotone_bounds(x_max)?);
    let bracket = estimate_c(x_max)?;
    println!(
        "c in [{:.7}, {:.7}] (upper bound e({x_max})/{x_max}, lower end extrapolated)",
        bracket.lower_f64(),
        bracket.upper_f64()
    );
    Ok(())
}
