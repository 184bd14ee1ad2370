//! Problem instances and allocations.
//!
//! An instance holds a dense n×m matrix of non-negative exact-rational
//! valuations: `value(i, h)` is agent `i`'s value for house `h`, with zero
//! meaning "not liked". An allocation injectively maps agents to houses;
//! agents may stay unassigned and houses may stay unallocated.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use thiserror::Error;

use crate::rational::denominator_lcm;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("instance must have at least one agent")]
    NoAgents,
    #[error("instance must have at least one house")]
    NoHouses,
    #[error("row {row} has {got} values, expected {expected}")]
    RaggedRow {
        row: usize,
        expected: usize,
        got: usize,
    },
    #[error("value for agent {agent}, house {house} is negative")]
    NegativeValue { agent: usize, house: usize },
    #[error("expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AllocationError {
    #[error("house {house} is assigned to more than one agent")]
    DuplicateHouse { house: usize },
    #[error("house index {house} out of range (instance has {houses} houses)")]
    HouseOutOfRange { house: usize, houses: usize },
    #[error("allocation covers {got} agents, instance has {expected}")]
    AgentCountMismatch { expected: usize, got: usize },
}

/// A house allocation instance: agents, houses, and exact-rational values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    values: Vec<Vec<BigRational>>,
    agent_labels: Option<Vec<String>>,
    house_labels: Option<Vec<String>>,
}

impl Instance {
    /// Builds an instance from an n×m value matrix, checking density and
    /// non-negativity.
    pub fn new(values: Vec<Vec<BigRational>>) -> Result<Self, ValidationError> {
        if values.is_empty() {
            return Err(ValidationError::NoAgents);
        }
        let m = values[0].len();
        if m == 0 {
            return Err(ValidationError::NoHouses);
        }
        for (row, vs) in values.iter().enumerate() {
            if vs.len() != m {
                return Err(ValidationError::RaggedRow {
                    row,
                    expected: m,
                    got: vs.len(),
                });
            }
            for (house, v) in vs.iter().enumerate() {
                if v.is_negative() {
                    return Err(ValidationError::NegativeValue { agent: row, house });
                }
            }
        }
        Ok(Instance {
            values,
            agent_labels: None,
            house_labels: None,
        })
    }

    /// Convenience constructor from integer values.
    pub fn from_integers(values: &[&[i64]]) -> Result<Self, ValidationError> {
        let rows = values
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&v| BigRational::from_integer(BigInt::from(v)))
                    .collect()
            })
            .collect();
        Instance::new(rows)
    }

    pub fn set_agent_labels(&mut self, labels: Vec<String>) -> Result<(), ValidationError> {
        if labels.len() != self.agent_count() {
            return Err(ValidationError::LabelCount {
                expected: self.agent_count(),
                got: labels.len(),
            });
        }
        self.agent_labels = Some(labels);
        Ok(())
    }

    pub fn set_house_labels(&mut self, labels: Vec<String>) -> Result<(), ValidationError> {
        if labels.len() != self.house_count() {
            return Err(ValidationError::LabelCount {
                expected: self.house_count(),
                got: labels.len(),
            });
        }
        self.house_labels = Some(labels);
        Ok(())
    }

    pub fn agent_count(&self) -> usize {
        self.values.len()
    }

    pub fn house_count(&self) -> usize {
        self.values[0].len()
    }

    pub fn value(&self, agent: usize, house: usize) -> &BigRational {
        &self.values[agent][house]
    }

    pub fn agent_values(&self, agent: usize) -> &[BigRational] {
        &self.values[agent]
    }

    pub fn agent_labels(&self) -> Option<&[String]> {
        self.agent_labels.as_deref()
    }

    pub fn house_labels(&self) -> Option<&[String]> {
        self.house_labels.as_deref()
    }

    pub fn is_binary(&self) -> bool {
        let one = BigRational::one();
        self.values
            .iter()
            .flatten()
            .all(|v| v.is_zero() || *v == one)
    }

    /// Maximum value agent `i` holds for any house in `houses`.
    pub fn max_value_over(&self, agent: usize, houses: &[usize]) -> BigRational {
        houses
            .iter()
            .map(|&h| self.values[agent][h].clone())
            .max()
            .unwrap_or_else(BigRational::zero)
    }

    /// Smallest strictly positive value anywhere in the matrix, if any.
    pub fn min_positive_value(&self) -> Option<BigRational> {
        self.values
            .iter()
            .flatten()
            .filter(|v| v.is_positive())
            .min()
            .cloned()
    }

    pub fn total_value(&self) -> BigRational {
        self.values.iter().flatten().sum()
    }

    /// Pointwise scaling by a positive rational, yielding a new instance.
    pub fn scaled(&self, factor: &BigRational) -> Instance {
        assert!(factor.is_positive(), "scale factor must be positive");
        let values = self
            .values
            .iter()
            .map(|row| row.iter().map(|v| v * factor).collect())
            .collect();
        Instance {
            values,
            agent_labels: self.agent_labels.clone(),
            house_labels: self.house_labels.clone(),
        }
    }

    /// Scales all values by the LCM of their denominators, producing an
    /// integer matrix together with the factor used. Solver cost layerings
    /// need unit welfare gaps, which integrality guarantees.
    pub fn to_integer_values(&self) -> (Vec<Vec<BigInt>>, BigInt) {
        let scale = denominator_lcm(self.values.iter().flatten());
        let matrix = self
            .values
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| (v * BigRational::from_integer(scale.clone())).to_integer())
                    .collect()
            })
            .collect();
        (matrix, scale)
    }
}

/// A partial injective assignment of agents to houses.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Allocation {
    slots: Vec<Option<usize>>,
}

impl Allocation {
    /// Builds an allocation, rejecting duplicate house assignments.
    pub fn new(slots: Vec<Option<usize>>) -> Result<Self, AllocationError> {
        let mut seen = std::collections::BTreeSet::new();
        for slot in slots.iter().flatten() {
            if !seen.insert(*slot) {
                return Err(AllocationError::DuplicateHouse { house: *slot });
            }
        }
        Ok(Allocation { slots })
    }

    pub fn empty(agent_count: usize) -> Self {
        Allocation {
            slots: vec![None; agent_count],
        }
    }

    /// Builds from explicit (agent, house) pairs; unlisted agents stay
    /// unassigned.
    pub fn from_pairs(
        agent_count: usize,
        pairs: &[(usize, usize)],
    ) -> Result<Self, AllocationError> {
        let mut slots = vec![None; agent_count];
        for &(agent, house) in pairs {
            slots[agent] = Some(house);
        }
        Allocation::new(slots)
    }

    pub fn agent_count(&self) -> usize {
        self.slots.len()
    }

    pub fn house_of(&self, agent: usize) -> Option<usize> {
        self.slots[agent]
    }

    pub fn slots(&self) -> &[Option<usize>] {
        &self.slots
    }

    /// Number of assigned agents.
    pub fn size(&self) -> usize {
        self.slots.iter().flatten().count()
    }

    pub fn assigned_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.slots
            .iter()
            .enumerate()
            .filter_map(|(i, h)| h.map(|h| (i, h)))
    }

    pub fn is_house_assigned(&self, house: usize) -> bool {
        self.slots.iter().flatten().any(|&h| h == house)
    }

    /// Checks dimensional consistency against an instance.
    pub fn check_against(&self, inst: &Instance) -> Result<(), AllocationError> {
        if self.slots.len() != inst.agent_count() {
            return Err(AllocationError::AgentCountMismatch {
                expected: inst.agent_count(),
                got: self.slots.len(),
            });
        }
        for house in self.slots.iter().flatten() {
            if *house >= inst.house_count() {
                return Err(AllocationError::HouseOutOfRange {
                    house: *house,
                    houses: inst.house_count(),
                });
            }
        }
        Ok(())
    }
}
