//! Utilitarian-welfare-constrained solvers.
//!
//! Both welfare solvers reduce to a minimum-cost perfect matching over the
//! agents and the houses plus one dummy slot per agent. Edge costs carry a
//! dominant welfare component `−v·L` and a small envy component, with `L`
//! chosen so that any welfare improvement beats any envy saving. The
//! separation argument needs welfare gaps of at least one unit, so values
//! are scaled to integers (exactly, by the LCM of their denominators)
//! before costs are built. Matched dummy slots decode to "unassigned".

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::instance::{Allocation, Instance};
use crate::matching::{max_cardinality_matching, min_cost_perfect_matching, BipartiteGraph};
use crate::metrics;
use crate::solvers::SolverError;

enum EnvyCost {
    /// One unit for any agent not on a most-preferred real house.
    PerAgent,
    /// The exact total envy the assignment induces in a welfare-maximal
    /// allocation: Σ_h̄ max{v(h̄) − v(h), 0}.
    Amount,
}

fn rational(v: BigInt) -> BigRational {
    BigRational::from_integer(v)
}

/// Builds the layered cost graph over integer-normalized values and
/// returns the min-cost matching decoded to an allocation.
fn solve_layered(inst: &Instance, envy: EnvyCost) -> Allocation {
    let n = inst.agent_count();
    let m = inst.house_count();
    let (values, _) = inst.to_integer_values();
    let level: BigInt = match envy {
        EnvyCost::PerAgent => BigInt::from(n + 1),
        EnvyCost::Amount => values.iter().flatten().sum::<BigInt>() + BigInt::one(),
    };

    let mut g = BipartiteGraph::new(n, m + n);
    for (agent, row) in values.iter().enumerate() {
        let top = row.iter().max().cloned().unwrap_or_else(BigInt::zero);
        let envy_of = |held: &BigInt| -> BigInt {
            match envy {
                EnvyCost::PerAgent => BigInt::one(),
                EnvyCost::Amount => row
                    .iter()
                    .filter(|v| *v > held)
                    .map(|v| v - held)
                    .sum(),
            }
        };
        for (house, v) in row.iter().enumerate() {
            if v.is_positive() {
                let mut cost = -(v * &level);
                if *v != top {
                    cost += envy_of(v);
                }
                g.add_edge_with_cost(agent, house, rational(cost));
            }
        }
        let dummy_cost = rational(envy_of(&BigInt::zero()));
        for dummy in 0..n {
            g.add_edge_with_cost(agent, m + dummy, dummy_cost.clone());
        }
    }

    let matching = min_cost_perfect_matching(&g).expect("dummy slots guarantee feasibility");
    let mut slots = vec![None; n];
    for &(agent, right) in matching.pairs() {
        if right < m {
            slots[agent] = Some(right);
        }
    }
    Allocation::new(slots).expect("matchings are injective")
}

/// Maximum utilitarian welfare over all allocations, as the value of a
/// maximum-weight matching.
pub fn max_usw_value(inst: &Instance) -> BigRational {
    let n = inst.agent_count();
    let m = inst.house_count();
    let mut g = BipartiteGraph::new(n, m + n);
    for agent in 0..n {
        for house in 0..m {
            let v = inst.value(agent, house);
            if v.is_positive() {
                g.add_edge_with_cost(agent, house, -v.clone());
            }
        }
        for dummy in 0..n {
            g.add_edge_with_cost(agent, m + dummy, BigRational::zero());
        }
    }
    let matching = min_cost_perfect_matching(&g).expect("dummy slots guarantee feasibility");
    -matching.total_cost(&g).expect("graph is costed")
}

/// Allocation of maximum utilitarian welfare that, among those, minimizes
/// the number of envious agents.
pub fn min_num_envy_max_usw(inst: &Instance) -> Allocation {
    solve_layered(inst, EnvyCost::PerAgent)
}

/// Allocation of maximum utilitarian welfare that, among those, minimizes
/// the total envy.
pub fn min_total_envy_max_usw(inst: &Instance) -> Allocation {
    solve_layered(inst, EnvyCost::Amount)
}

/// Extends an allocation by pairing unassigned houses with unassigned
/// agents in ascending index order until it is complete. For a welfare
/// maximal input with m ≤ n the extension changes no envy metric: no
/// agent prefers a leftover house to its own (welfare could grow
/// otherwise), and the recipients value their new houses zero.
pub fn complete_allocation(inst: &Instance, alloc: &Allocation) -> Result<Allocation, SolverError> {
    let mut slots = alloc.slots().to_vec();
    let mut house_taken = vec![false; inst.house_count()];
    for slot in slots.iter().flatten() {
        house_taken[*slot] = true;
    }
    let mut current = Allocation::new(slots.clone()).expect("input allocation is valid");
    let free_houses: Vec<usize> = (0..inst.house_count()).filter(|&h| !house_taken[h]).collect();
    let free_agents: Vec<usize> = (0..inst.agent_count()).filter(|&a| slots[a].is_none()).collect();
    let mut free_houses = free_houses.into_iter();
    let mut free_agents = free_agents.into_iter();
    while !metrics::is_complete(inst, &current) {
        let (Some(house), Some(agent)) = (free_houses.next(), free_agents.next()) else {
            return Err(SolverError::CannotComplete);
        };
        slots[agent] = Some(house);
        current = Allocation::new(slots.clone()).expect("pairing is injective");
    }
    Ok(current)
}

/// Complete allocation minimizing the number of envious agents, for
/// instances with m ≤ n.
///
/// In a complete allocation with m ≤ n every house is assigned, so an
/// agent is non-envious exactly when it attains its maximum value. A
/// maximum matching on most-preferred positive edges maximizes the number
/// of such agents; any completion of it is optimal.
pub fn min_num_envy_complete(inst: &Instance) -> Result<Allocation, SolverError> {
    let n = inst.agent_count();
    let m = inst.house_count();
    if m > n {
        return Err(SolverError::TooManyHouses {
            agents: n,
            houses: m,
        });
    }
    let all_houses: Vec<usize> = (0..m).collect();
    let mut g = BipartiteGraph::new(n, m);
    for agent in 0..n {
        let top = inst.max_value_over(agent, &all_houses);
        if top.is_zero() {
            continue;
        }
        for house in 0..m {
            if *inst.value(agent, house) == top {
                g.add_edge(agent, house);
            }
        }
    }
    let matching = max_cardinality_matching(&g);
    let mut slots = vec![None; n];
    for &(agent, house) in matching.pairs() {
        slots[agent] = Some(house);
    }
    let base = Allocation::new(slots).expect("matchings are injective");
    complete_allocation(inst, &base)
}

/// Complete allocation minimizing total envy, for instances with m ≤ n.
///
/// In a complete allocation with m ≤ n every house is assigned, so an
/// agent's aggregate envy depends only on the value it ends up holding:
/// envy_i = Σ_h max{v_i(h) − v_i(A(i)), 0}. Minimizing total envy is then
/// an assignment problem over agents and houses plus n − m "stay
/// unassigned" slots.
///
/// Completing a min-total-envy welfare-maximal allocation does not always
/// reach this optimum on weighted instances: pinning welfare first can
/// force one agent to absorb more envy than an allocation that sacrifices
/// a welfare unit. The direct cost construction sidesteps that.
pub fn min_total_envy_complete(inst: &Instance) -> Result<Allocation, SolverError> {
    let n = inst.agent_count();
    let m = inst.house_count();
    if m > n {
        return Err(SolverError::TooManyHouses {
            agents: n,
            houses: m,
        });
    }
    let mut g = BipartiteGraph::new(n, n);
    for agent in 0..n {
        let row = inst.agent_values(agent);
        let held_envy = |held: &BigRational| -> BigRational {
            row.iter()
                .filter(|v| *v > held)
                .map(|v| v - held)
                .sum()
        };
        for house in 0..m {
            g.add_edge_with_cost(agent, house, held_envy(inst.value(agent, house)));
        }
        let unassigned_cost = held_envy(&BigRational::zero());
        for slot in m..n {
            g.add_edge_with_cost(agent, slot, unassigned_cost.clone());
        }
    }
    let matching = min_cost_perfect_matching(&g).expect("slots make the graph feasible");
    let mut slots = vec![None; n];
    for &(agent, right) in matching.pairs() {
        if right < m {
            slots[agent] = Some(right);
        }
    }
    Ok(Allocation::new(slots).expect("matchings are injective"))
}
