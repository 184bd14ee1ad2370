//! Shared instance builders for the benchmark suite.

use fairhouse::experiments::{gen_random_instance, ValuationModel};
use fairhouse::instance::Instance;
use fairhouse::rational::ratio;

/// A weighted 5-agent instance at the experiment harness's dense end.
pub fn weighted_instance(houses: usize, seed: u64) -> Instance {
    gen_random_instance(5, houses, &ratio(7, 10), ValuationModel::Weighted, seed)
}

/// A binary 5-agent instance at medium density.
pub fn binary_instance(houses: usize, seed: u64) -> Instance {
    gen_random_instance(5, houses, &ratio(1, 2), ValuationModel::Binary, seed)
}
