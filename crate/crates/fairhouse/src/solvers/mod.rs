//! Solver families: envy-freeness, utilitarian welfare, egalitarian
//! welfare.

use thiserror::Error;

pub mod ef;
pub mod esw;
pub mod usw;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("values must be binary (0 or 1)")]
    NotBinary,
    #[error("requires at most as many houses as agents: got {houses} houses for {agents} agents")]
    TooManyHouses { agents: usize, houses: usize },
    #[error("cannot complete the allocation: houses remain but every agent is assigned")]
    CannotComplete,
    #[error("shift amount must lie strictly between zero and the minimum positive value")]
    InvalidShift,
}
