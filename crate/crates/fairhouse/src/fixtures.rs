//! Instance fixtures shared by golden tests and the CLI examples.

use crate::format::parse_instance;
use crate::instance::Instance;

pub const BINARY_TRADEOFF: &str = include_str!("../../../fixtures/binary-tradeoff.inst");
pub const EQUAL_TOTAL_ENVY: &str = include_str!("../../../fixtures/equal-total-envy.inst");
pub const SCARCE_HOUSES: &str = include_str!("../../../fixtures/scarce-houses.inst");
pub const DOMINANT_VALUE: &str = include_str!("../../../fixtures/dominant-value.inst");

/// 4 agents, 5 houses, binary. Two houses carry all the demand: the
/// maximum-size envy-free allocation has zero welfare, welfare
/// maximization leaves two agents envious, and a complete allocation can
/// get away with one.
pub fn binary_tradeoff() -> Instance {
    parse_instance(BINARY_TRADEOFF).expect("fixture parses")
}

/// 4 agents, 3 houses, weighted. Two welfare-maximal allocations share
/// total envy 5 while leaving three versus one agent envious.
pub fn equal_total_envy() -> Instance {
    parse_instance(EQUAL_TOTAL_ENVY).expect("fixture parses")
}

/// 3 agents, 2 houses, binary. Complete allocations differ in total envy.
pub fn scarce_houses() -> Instance {
    parse_instance(SCARCE_HOUSES).expect("fixture parses")
}

/// 3 agents, 3 houses, weighted. One dominant valuation forces two
/// envious agents under welfare maximization; a complete allocation
/// leaves exactly one.
pub fn dominant_value() -> Instance {
    parse_instance(DOMINANT_VALUE).expect("fixture parses")
}
