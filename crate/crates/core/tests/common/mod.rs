#![allow(dead_code)]

use std::collections::BTreeSet;

use comb_rotor::geometry::neighbors;
use comb_rotor::Vertex;
use rand::seq::IteratorRandom;
use rand::Rng;

/// Random connected set of `size` comb vertices containing the origin.
pub fn random_region(rng: &mut impl Rng, size: usize) -> BTreeSet<Vertex> {
    let mut region = BTreeSet::from([Vertex::ORIGIN]);
    let mut list = vec![Vertex::ORIGIN];
    while region.len() < size {
        let v = list[rng.gen_range(0..list.len())];
        let w = *neighbors(v).iter().choose(rng).unwrap();
        if region.insert(w) {
            list.push(w);
        }
    }
    region
}
