//! Fair house allocation: exact solvers, metrics, and a brute-force oracle.
//!
//! The house allocation problem assigns at most one house per agent and
//! each house to at most one agent; agents hold non-negative exact-rational
//! values over houses. This crate computes allocations that trade four envy
//! measures (envy-freeness, number of envious agents, total envy, minimax
//! total envy) against efficiency constraints (maximum size, maximum
//! utilitarian welfare, maximum egalitarian welfare, completeness), plus an
//! exhaustive oracle for the intractable combinations and an experiment
//! harness over random instances.

pub mod experiments;
pub mod fixtures;
pub mod format;
pub mod instance;
pub mod matching;
pub mod metrics;
pub mod oracle;
pub mod rational;
pub mod solvers;

pub use instance::{Allocation, AllocationError, Instance, ValidationError};
pub use metrics::{agent_total_envy, evaluate, is_complete, pairwise_envy, EnvyReport};
