#![allow(dead_code)]

use multicut_core::gen::{generate, GenParams};
use multicut_core::Instance;

pub const MAX_EDGES: usize = 14;

/// Unweighted instances planar after deleting at most two edges.
pub fn kplanar_instance(seed: u64) -> Option<Instance> {
    let p = GenParams {
        seed,
        n: 5 + (seed % 5) as usize,
        density: [0.4, 0.55, 0.7, 0.85][(seed / 5 % 4) as usize],
        t: 2 + (seed / 3 % 3) as usize,
        pi: (seed % 3) as usize,
        ..GenParams::default()
    };
    generate(&p).ok().filter(|i| i.m() <= MAX_EDGES)
}

/// Weighted instances (1..=5 plus some infinite edges) with one to three
/// crossing pairs.
pub fn crossing_instance(seed: u64) -> Option<Instance> {
    let p = GenParams {
        seed,
        n: 5 + (seed % 4) as usize,
        density: [0.3, 0.5, 0.7][(seed / 4 % 3) as usize],
        t: 2 + (seed / 12 % 3) as usize,
        crossings: 1 + (seed % 3) as usize,
        max_weight: 5,
        inf_prob: 0.15,
        ..GenParams::default()
    };
    generate(&p).ok().filter(|i| i.m() <= MAX_EDGES)
}

/// Weighted planar instances.
pub fn planar_instance(seed: u64) -> Option<Instance> {
    let p = GenParams {
        seed,
        n: 4 + (seed % 6) as usize,
        density: [0.2, 0.5, 0.8][(seed / 6 % 3) as usize],
        t: 2 + (seed / 2 % 3) as usize,
        max_weight: 5,
        inf_prob: 0.1,
        ..GenParams::default()
    };
    generate(&p).ok().filter(|i| i.m() <= MAX_EDGES)
}

/// First `count` instances of a family, skipping seeds it rejects.
pub fn family(count: usize, make: impl Fn(u64) -> Option<Instance>) -> Vec<(u64, Instance)> {
    (0..).filter_map(|s| make(s).map(|i| (s, i))).take(count).collect()
}
