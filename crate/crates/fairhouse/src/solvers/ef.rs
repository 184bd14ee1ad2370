//! Envy-freeness solvers.
//!
//! The central routine grows a graph of every agent's most-preferred
//! positively valued houses over the surviving house set, deletes the
//! houses of a minimal Hall violator while one exists, and finishes with a
//! maximum-size allocation. Deleted houses can never appear in an
//! envy-free allocation, so the result is envy-free and of maximum size.

use num::Zero;

use crate::instance::{Allocation, Instance};
use crate::matching::{
    find_minimal_hall_violator, max_cardinality_matching, max_size_allocation, BipartiteGraph,
};
use crate::metrics;
use crate::solvers::usw::max_usw_value;
use crate::solvers::SolverError;

/// Output of the maximum-size solver: the allocation plus every house
/// removed by a Hall-violator iteration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EfMaxSize {
    pub allocation: Allocation,
    pub deleted_houses: Vec<usize>,
}

/// Graph linking each agent to its most-preferred positively valued houses
/// among `houses` (right vertices use local indices into `houses`).
fn top_edge_graph(inst: &Instance, houses: &[usize]) -> BipartiteGraph {
    let mut g = BipartiteGraph::new(inst.agent_count(), houses.len());
    for agent in 0..inst.agent_count() {
        let top = inst.max_value_over(agent, houses);
        if top.is_zero() {
            continue;
        }
        for (local, &house) in houses.iter().enumerate() {
            if *inst.value(agent, house) == top {
                g.add_edge(agent, local);
            }
        }
    }
    g
}

/// Maximum-size envy-free allocation.
pub fn max_size_envy_free(inst: &Instance) -> EfMaxSize {
    let mut remaining: Vec<usize> = (0..inst.house_count()).collect();
    let mut deleted = Vec::new();
    loop {
        let g = top_edge_graph(inst, &remaining);
        match find_minimal_hall_violator(&g) {
            Some(violator) => {
                let doomed: Vec<usize> =
                    violator.houses.iter().map(|&r| remaining[r]).collect();
                deleted.extend(doomed.iter().copied());
                remaining.retain(|h| !doomed.contains(h));
            }
            None => {
                let allocation = max_size_allocation(&g, &remaining);
                // Only matched agents receive positive value; the
                // complement pairing hands out zero-valued houses.
                let matched = max_cardinality_matching(&g);
                for (agent, house) in allocation.assigned_pairs() {
                    if matched.right_of(agent).is_none() {
                        assert!(
                            inst.value(agent, house).is_zero(),
                            "complement pairing must assign zero-valued houses"
                        );
                    }
                }
                return EfMaxSize {
                    allocation,
                    deleted_houses: deleted,
                };
            }
        }
    }
}

/// Envy-free allocation of maximum utilitarian welfare, or `None` when no
/// envy-free allocation attains the unconstrained welfare optimum.
///
/// The maximum-size solver's output already maximizes welfare among all
/// envy-free allocations, so comparing its welfare against the global
/// optimum is decisive.
pub fn max_usw_envy_free(inst: &Instance) -> Option<Allocation> {
    let result = max_size_envy_free(inst);
    let report = metrics::evaluate(inst, &result.allocation).expect("solver output is valid");
    if report.usw == max_usw_value(inst) {
        Some(result.allocation)
    } else {
        None
    }
}

/// Maximum-size envy-free allocation for binary instances, by the two-step
/// procedure: an envy-free matching on the liked-edges graph, then greedy
/// assignment of houses whose likers are all matched.
pub fn max_size_envy_free_binary(inst: &Instance) -> Result<Allocation, SolverError> {
    if !inst.is_binary() {
        return Err(SolverError::NotBinary);
    }
    let liked = |agent: usize, house: usize| !inst.value(agent, house).is_zero();

    // Envy-free matching: iterated Hall-violator deletion restricted to
    // liked edges, then a maximum matching on what survives.
    let mut remaining: Vec<usize> = (0..inst.house_count()).collect();
    let matching = loop {
        let mut g = BipartiteGraph::new(inst.agent_count(), remaining.len());
        for agent in 0..inst.agent_count() {
            for (local, &house) in remaining.iter().enumerate() {
                if liked(agent, house) {
                    g.add_edge(agent, local);
                }
            }
        }
        match find_minimal_hall_violator(&g) {
            Some(violator) => {
                let doomed: Vec<usize> =
                    violator.houses.iter().map(|&r| remaining[r]).collect();
                remaining.retain(|h| !doomed.contains(h));
            }
            None => break max_cardinality_matching(&g),
        }
    };

    let mut slots: Vec<Option<usize>> = vec![None; inst.agent_count()];
    let mut matched_agent = vec![false; inst.agent_count()];
    let mut house_taken = vec![false; inst.house_count()];
    for &(agent, local) in matching.pairs() {
        slots[agent] = Some(remaining[local]);
        matched_agent[agent] = true;
        house_taken[remaining[local]] = true;
    }

    // Greedy step over all houses, deleted ones included: a house whose
    // likers are all matched can be handed to any unassigned agent without
    // creating envy.
    let free_houses: Vec<usize> = (0..inst.house_count())
        .filter(|&h| !house_taken[h])
        .collect();
    for house in free_houses {
        let all_likers_matched =
            (0..inst.agent_count()).all(|a| !liked(a, house) || matched_agent[a]);
        if !all_likers_matched {
            continue;
        }
        if let Some(agent) = slots.iter().position(Option::is_none) {
            slots[agent] = Some(house);
        } else {
            break;
        }
    }
    Ok(Allocation::new(slots).expect("assignments are injective"))
}
