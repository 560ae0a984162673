//! Shared workloads for the benchmarks.

use hadarank_core::exactalg::{Ideal, ProjPoint};
use hadarank_core::groebner::GbOptions;
use hadarank_core::rankengine::RankOptions;
use hadarank_core::zoo::zoo_entry;

pub fn gb() -> GbOptions {
    GbOptions { budget: 5_000_000, cache_dir: None }
}

pub fn rank_options(max_m: usize) -> RankOptions {
    RankOptions { max_m, gb: gb(), ..RankOptions::default() }
}

pub fn zoo_ideal(name: &str) -> Ideal {
    zoo_entry(name).expect("zoo entry").ideal.expect("implicit equations")
}

pub fn point(text: &str) -> ProjPoint {
    ProjPoint::parse(text).expect("point")
}

/// The binomial surface x1^2 - 2 x0 x2 with the points (2^m : 2^m : 1).
pub fn binomial_point(m: u32) -> ProjPoint {
    let k = 1i64 << m;
    ProjPoint::from_ints(&[k, k, 1]).expect("point")
}
