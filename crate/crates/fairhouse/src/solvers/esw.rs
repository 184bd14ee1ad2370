//! Egalitarian-welfare solvers.
//!
//! The egalitarian optimum is lexicographic: first the largest number k of
//! agents that can simultaneously receive positive value, then the largest
//! threshold β such that k agents can all receive at least β. The solver
//! sweeps the distinct positive values in descending order, matching on
//! the threshold graph G_β (edges where v_i(h) ≥ β).

use num::rational::BigRational;
use num::{Signed, Zero};

use crate::instance::{Allocation, Instance};
use crate::matching::{max_cardinality_matching, BipartiteGraph, Matching};
use crate::metrics;
use crate::oracle::{oracle_solve, Constraint, Objective, OracleError, OracleOutcome};
use crate::solvers::ef::max_size_envy_free;
use crate::solvers::SolverError;

/// An egalitarian optimum: k agents receive value at least beta > 0, or
/// (k, beta) = (0, 0) alongside an empty allocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EswResult {
    pub allocation: Allocation,
    pub k: usize,
    pub beta: BigRational,
}

/// An envy-free egalitarian optimum. Envy-freeness is guaranteed with
/// respect to the reduced valuations that zero out everything below beta;
/// `envy_free_under_original` reports whether it also holds for the
/// original values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EfEswResult {
    pub allocation: Allocation,
    pub k: usize,
    pub beta: BigRational,
    pub envy_free_under_original: bool,
}

fn threshold_graph(inst: &Instance, beta: &BigRational) -> BipartiteGraph {
    let mut g = BipartiteGraph::new(inst.agent_count(), inst.house_count());
    for agent in 0..inst.agent_count() {
        for house in 0..inst.house_count() {
            if inst.value(agent, house) >= beta {
                g.add_edge(agent, house);
            }
        }
    }
    g
}

fn matching_to_allocation(n: usize, matching: &Matching) -> Allocation {
    let mut slots = vec![None; n];
    for &(agent, house) in matching.pairs() {
        slots[agent] = Some(house);
    }
    Allocation::new(slots).expect("matchings are injective")
}

/// Allocation of maximum egalitarian welfare.
pub fn max_esw(inst: &Instance) -> EswResult {
    let n = inst.agent_count();
    let mut betas: Vec<BigRational> = (0..n)
        .flat_map(|a| inst.agent_values(a).iter())
        .filter(|v| v.is_positive())
        .cloned()
        .collect();
    betas.sort();
    betas.dedup();
    betas.reverse();

    // One matching per distinct threshold; G_β grows as β descends, so the
    // matching size must be non-decreasing along the sweep.
    let matchings: Vec<Matching> = betas
        .iter()
        .map(|beta| max_cardinality_matching(&threshold_graph(inst, beta)))
        .collect();
    for window in matchings.windows(2) {
        assert!(
            window[0].len() <= window[1].len(),
            "matching size must not increase as the threshold drops"
        );
    }

    for k in (1..=n).rev() {
        for (beta, matching) in betas.iter().zip(&matchings) {
            if matching.len() >= k {
                debug_assert_eq!(matching.len(), k, "first hit has size exactly k");
                return EswResult {
                    allocation: matching_to_allocation(n, matching),
                    k: matching.len(),
                    beta: beta.clone(),
                };
            }
        }
    }
    EswResult {
        allocation: Allocation::empty(n),
        k: 0,
        beta: BigRational::zero(),
    }
}

/// Envy-free allocation of maximum egalitarian welfare, or `None` when
/// fewer than k agents can receive at least beta without envy.
pub fn max_esw_envy_free(inst: &Instance) -> Option<EfEswResult> {
    let EswResult { k, beta, .. } = max_esw(inst);
    // Reduced valuations: drop everything below the threshold.
    let reduced_rows: Vec<Vec<BigRational>> = (0..inst.agent_count())
        .map(|agent| {
            inst.agent_values(agent)
                .iter()
                .map(|v| {
                    if *v >= beta && v.is_positive() {
                        v.clone()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    let reduced = Instance::new(reduced_rows).expect("reduction keeps values non-negative");
    let ef = max_size_envy_free(&reduced);
    let positive = ef
        .allocation
        .assigned_pairs()
        .filter(|&(agent, house)| reduced.value(agent, house).is_positive())
        .count();
    if positive < k {
        return None;
    }
    let original_report =
        metrics::evaluate(inst, &ef.allocation).expect("solver output is valid");
    Some(EfEswResult {
        allocation: ef.allocation,
        k,
        beta,
        envy_free_under_original: original_report.is_envy_free(),
    })
}

/// Adds `beta` to every valuation. Requires 0 < beta < the minimum
/// positive value, so that the shifted instance makes every house
/// positively valued without reordering any comparison among originals.
pub fn shift_valuations(inst: &Instance, beta: &BigRational) -> Result<Instance, SolverError> {
    let min_positive = inst.min_positive_value().ok_or(SolverError::InvalidShift)?;
    if !beta.is_positive() || *beta >= min_positive {
        return Err(SolverError::InvalidShift);
    }
    let rows = (0..inst.agent_count())
        .map(|agent| {
            inst.agent_values(agent)
                .iter()
                .map(|v| v + beta)
                .collect()
        })
        .collect();
    Ok(Instance::new(rows).expect("shift keeps values non-negative"))
}

/// Minimum #envy among egalitarian-optimal allocations. NP-hard in
/// general; answered exactly by the oracle within its budget.
pub fn min_num_envy_max_esw(inst: &Instance, budget: u64) -> Result<OracleOutcome, OracleError> {
    oracle_solve(inst, Objective::MinNumEnvy, Constraint::MaxEsw, budget)
}

/// Minimum total envy among egalitarian-optimal allocations (oracle).
pub fn min_total_envy_max_esw(inst: &Instance, budget: u64) -> Result<OracleOutcome, OracleError> {
    oracle_solve(inst, Objective::MinTotalEnvy, Constraint::MaxEsw, budget)
}

/// Minimax total envy among egalitarian-optimal allocations (oracle).
pub fn minimax_total_envy_max_esw(
    inst: &Instance,
    budget: u64,
) -> Result<OracleOutcome, OracleError> {
    oracle_solve(inst, Objective::MinimaxTotalEnvy, Constraint::MaxEsw, budget)
}
