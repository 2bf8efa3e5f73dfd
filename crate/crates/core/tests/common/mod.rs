#![allow(dead_code)]

use std::collections::BTreeSet;

use horton_islands::{Point, PointSet};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// `n` distinct points (fewer if the grid is too small) with coordinates in
/// `0..grid`. Small grids give many collinear triples.
pub fn random_set(rng: &mut ChaCha8Rng, n: usize, grid: i64) -> PointSet {
    let n = n.min((grid * grid) as usize);
    let mut seen = BTreeSet::new();
    let mut pts = Vec::with_capacity(n);
    while pts.len() < n {
        let (x, y) = (rng.gen_range(0..grid), rng.gen_range(0..grid));
        if seen.insert((x, y)) {
            pts.push(Point::new(x, y));
        }
    }
    PointSet::new(pts).unwrap()
}

/// Random subset of `0..n`, sorted.
pub fn random_subset(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Vec<usize> {
    (0..n).filter(|_| rng.gen_bool(p)).collect()
}

pub fn run_in_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .unwrap()
        .install(f)
}
