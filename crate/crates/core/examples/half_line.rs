//! The half-line process: particles start at 1, the sink is 0, and rotors
//! alternate between up and down.

use comb_rotor::halfline::HalfLine;
use comb_rotor::oracle::{halfline_h_r, halfline_odometer};

fn main() {
    let mut line = HalfLine::new();
    for n in 1..=21u64 {
        let stop = line.add_particle();
        let (h, r) = halfline_h_r(n);
        let exact = line.odometer_slice() == halfline_odometer(n).as_slice();
        println!(
            "n={n:>2} stopped at {stop:>2}  extent {} frontier {}  (closed form {h}, {r})  odometer {:?}{}",
            line.extent(),
            line.frontier(),
            line.odometer_slice(),
            if exact { "" } else { "  MISMATCH" }
        );
    }
}
