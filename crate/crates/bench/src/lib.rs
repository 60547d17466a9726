//! Fixed inputs shared by the benchmarks.

use rainbow_core::{ColouredGraph, Family};

/// Sizes swept by every benchmark group.
pub const SIZES: [usize; 3] = [10, 20, 40];

pub fn fixture(family: Family, n: usize) -> ColouredGraph {
    family
        .generate(n, 7)
        .expect("benchmark sizes are valid for every family")
}
