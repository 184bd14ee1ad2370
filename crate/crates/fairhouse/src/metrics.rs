//! Envy and welfare metrics.
//!
//! All quantities follow the same convention: an unassigned agent holds the
//! empty house, valued zero, and participates fully in envy computations.
//! Envy is only felt towards houses that are actually assigned.

use num::rational::BigRational;
use num::{Signed, Zero};

use crate::instance::{Allocation, AllocationError, Instance};

/// Full metric report for one allocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnvyReport {
    /// Aggregate envy of each agent towards all others.
    pub per_agent_envy: Vec<BigRational>,
    pub envious_flags: Vec<bool>,
    /// Number of agents with at least one strictly positive pairwise envy.
    pub num_envious: usize,
    pub total_envy: BigRational,
    pub max_agent_envy: BigRational,
    pub usw: BigRational,
    /// Minimum positive assigned value over the `esw_k` agents who receive
    /// positive value; zero when no agent does.
    pub esw: BigRational,
    pub esw_k: usize,
    pub size: usize,
}

impl EnvyReport {
    pub fn is_envy_free(&self) -> bool {
        self.num_envious == 0
    }
}

fn value_of(inst: &Instance, alloc: &Allocation, agent: usize) -> BigRational {
    match alloc.house_of(agent) {
        Some(h) => inst.value(agent, h).clone(),
        None => BigRational::zero(),
    }
}

/// Envy of agent `i` towards agent `j`: max{v_i(A(j)) − v_i(A(i)), 0}.
///
/// Panics if either index is out of range or the allocation does not fit
/// the instance.
pub fn pairwise_envy(
    inst: &Instance,
    alloc: &Allocation,
    envier: usize,
    envied: usize,
) -> BigRational {
    assert!(envier < inst.agent_count(), "agent index out of range");
    assert!(envied < inst.agent_count(), "agent index out of range");
    let own = value_of(inst, alloc, envier);
    let other = match alloc.house_of(envied) {
        Some(h) => inst.value(envier, h).clone(),
        None => BigRational::zero(),
    };
    if other > own {
        other - own
    } else {
        BigRational::zero()
    }
}

/// Aggregate envy of one agent: the sum of its pairwise envies.
pub fn agent_total_envy(inst: &Instance, alloc: &Allocation, agent: usize) -> BigRational {
    assert!(agent < inst.agent_count(), "agent index out of range");
    let own = value_of(inst, alloc, agent);
    let mut total = BigRational::zero();
    for (j, house) in alloc.assigned_pairs() {
        if j == agent {
            continue;
        }
        let other = inst.value(agent, house);
        if *other > own {
            total += other - &own;
        }
    }
    total
}

/// Computes every metric for an allocation.
pub fn evaluate(inst: &Instance, alloc: &Allocation) -> Result<EnvyReport, AllocationError> {
    alloc.check_against(inst)?;
    let n = inst.agent_count();
    let mut per_agent_envy = Vec::with_capacity(n);
    let mut usw = BigRational::zero();
    let mut esw: Option<BigRational> = None;
    let mut esw_k = 0usize;
    for agent in 0..n {
        let own = value_of(inst, alloc, agent);
        if own.is_positive() {
            esw_k += 1;
            esw = Some(match esw {
                Some(cur) if cur <= own => cur,
                _ => own.clone(),
            });
        }
        usw += &own;
        per_agent_envy.push(agent_total_envy(inst, alloc, agent));
    }
    let envious_flags: Vec<bool> = per_agent_envy.iter().map(|e| e.is_positive()).collect();
    let num_envious = envious_flags.iter().filter(|&&f| f).count();
    let total_envy = per_agent_envy.iter().sum();
    let max_agent_envy = per_agent_envy
        .iter()
        .max()
        .cloned()
        .unwrap_or_else(BigRational::zero);
    Ok(EnvyReport {
        num_envious,
        total_envy,
        max_agent_envy,
        usw,
        esw: esw.unwrap_or_else(BigRational::zero),
        esw_k,
        size: alloc.size(),
        per_agent_envy,
        envious_flags,
    })
}

/// Completeness: agent-saturating when m ≥ n, house-saturating when m < n.
pub fn is_complete(inst: &Instance, alloc: &Allocation) -> bool {
    let n = inst.agent_count();
    let m = inst.house_count();
    if m >= n {
        alloc.size() == n
    } else {
        alloc.size() == m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::rational::ratio;

    fn alloc(n: usize, pairs: &[(usize, usize)]) -> Allocation {
        Allocation::from_pairs(n, pairs).unwrap()
    }

    #[test]
    fn pairwise_envy_on_known_allocations() {
        // Blue allocation of the 4x5 binary example: a3 envies a1 by 1.
        let tradeoff = fixtures::binary_tradeoff();
        let blue = alloc(4, &[(0, 0), (1, 1)]);
        assert_eq!(pairwise_envy(&tradeoff, &blue, 2, 0), ratio(1, 1));
        // Self-envy is always zero.
        assert_eq!(pairwise_envy(&tradeoff, &blue, 2, 2), ratio(0, 1));
        // Red allocation of the weighted 4x3 example: a4 envies a3 by 3.
        let ties = fixtures::equal_total_envy();
        let red = alloc(4, &[(0, 0), (1, 1), (2, 2)]);
        assert_eq!(pairwise_envy(&ties, &red, 3, 2), ratio(3, 1));
    }

    #[test]
    fn agent_total_envy_on_known_allocations() {
        let ties = fixtures::equal_total_envy();
        let green = alloc(4, &[(1, 0), (2, 1), (3, 2)]);
        assert_eq!(agent_total_envy(&ties, &green, 0), ratio(5, 1));
        // An agent holding its unique top house has zero envy.
        let inst = Instance::from_integers(&[&[9, 1], &[1, 9]]).unwrap();
        let top = alloc(2, &[(0, 0), (1, 1)]);
        assert_eq!(agent_total_envy(&inst, &top, 0), ratio(0, 1));
        // Red allocation of the 3x2 example: agent a2 accumulates envy 2.
        let scarce = fixtures::scarce_houses();
        let red = alloc(3, &[(0, 1), (2, 0)]);
        assert_eq!(agent_total_envy(&scarce, &red, 1), ratio(2, 1));
    }

    #[test]
    fn evaluate_on_known_allocations() {
        let ties = fixtures::equal_total_envy();
        let red = alloc(4, &[(0, 0), (1, 1), (2, 2)]);
        let report = evaluate(&ties, &red).unwrap();
        assert_eq!(report.num_envious, 3);
        assert_eq!(report.total_envy, ratio(5, 1));
        assert_eq!(report.usw, ratio(15, 1));
        assert_eq!(report.size, 3);

        let tradeoff = fixtures::binary_tradeoff();
        let empty = Allocation::empty(4);
        let report = evaluate(&tradeoff, &empty).unwrap();
        assert_eq!(report.num_envious, 0);
        assert_eq!(report.total_envy, ratio(0, 1));
        assert_eq!(report.usw, ratio(0, 1));
        assert_eq!(report.size, 0);
        assert_eq!(report.esw_k, 0);
        assert_eq!(report.esw, ratio(0, 1));

        let blue = alloc(4, &[(0, 0), (1, 1)]);
        assert_eq!(evaluate(&tradeoff, &blue).unwrap().total_envy, ratio(2, 1));
        let swapped = alloc(4, &[(2, 0), (3, 1)]);
        assert_eq!(evaluate(&tradeoff, &swapped).unwrap().total_envy, ratio(3, 1));
    }

    #[test]
    fn evaluate_rejects_invalid_allocation() {
        let tradeoff = fixtures::binary_tradeoff();
        let bad = Allocation::new(vec![Some(9), None, None, None]).unwrap();
        assert!(evaluate(&tradeoff, &bad).is_err());
    }

    #[test]
    fn completeness_follows_the_smaller_side() {
        let tradeoff = fixtures::binary_tradeoff();
        let green = alloc(4, &[(0, 0), (1, 2), (2, 3), (3, 4)]);
        assert!(is_complete(&tradeoff, &green));
        assert!(!is_complete(&tradeoff, &Allocation::empty(4)));
        let scarce = fixtures::scarce_houses();
        let both = alloc(3, &[(0, 0), (1, 1)]);
        assert!(is_complete(&scarce, &both));
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_instance_and_alloc() -> impl Strategy<Value = (Instance, Allocation)> {
            (1usize..=5, 1usize..=5)
                .prop_flat_map(|(n, m)| {
                    let values = proptest::collection::vec(0i64..8, n * m);
                    let choices = proptest::collection::vec(0usize..=m, n);
                    (Just((n, m)), values, choices)
                })
                .prop_map(|((n, m), values, choices)| {
                    let rows: Vec<Vec<BigRational>> = (0..n)
                        .map(|a| (0..m).map(|h| ratio(values[a * m + h], 2)).collect())
                        .collect();
                    let inst = Instance::new(rows).unwrap();
                    // Drop duplicate house picks to keep injectivity.
                    let mut used = vec![false; m];
                    let slots: Vec<Option<usize>> = choices
                        .into_iter()
                        .map(|c| {
                            if c < m && !used[c] {
                                used[c] = true;
                                Some(c)
                            } else {
                                None
                            }
                        })
                        .collect();
                    (inst, Allocation::new(slots).unwrap())
                })
        }

        proptest! {
            #[test]
            fn report_internal_consistency((inst, alloc) in arb_instance_and_alloc()) {
                let n = inst.agent_count();
                let report = evaluate(&inst, &alloc).unwrap();
                prop_assert!(report.num_envious <= n);
                prop_assert!(report.total_envy >= report.max_agent_envy);
                prop_assert!(report.max_agent_envy >= BigRational::zero());
                // An agent's aggregate envy is zero iff no pairwise envy is
                // positive; #envy counts exactly the positive aggregates.
                for i in 0..n {
                    let pairwise_positive =
                        (0..n).any(|j| pairwise_envy(&inst, &alloc, i, j).is_positive());
                    prop_assert_eq!(report.per_agent_envy[i].is_positive(), pairwise_positive);
                    prop_assert_eq!(report.envious_flags[i], pairwise_positive);
                }
                let all_pairs_zero = (0..n).all(|i| {
                    (0..n).all(|j| !pairwise_envy(&inst, &alloc, i, j).is_positive())
                });
                prop_assert_eq!(report.is_envy_free(), all_pairs_zero);
            }

            #[test]
            fn scaling_scales_amounts_and_fixes_counts(
                (inst, alloc) in arb_instance_and_alloc(),
                num in 1i64..6,
                den in 1i64..6,
            ) {
                let factor = ratio(num, den);
                let scaled = inst.scaled(&factor);
                let before = evaluate(&inst, &alloc).unwrap();
                let after = evaluate(&scaled, &alloc).unwrap();
                prop_assert_eq!(after.num_envious, before.num_envious);
                prop_assert_eq!(after.envious_flags, before.envious_flags);
                prop_assert_eq!(after.size, before.size);
                prop_assert_eq!(after.esw_k, before.esw_k);
                prop_assert_eq!(after.total_envy, &before.total_envy * &factor);
                prop_assert_eq!(after.usw, &before.usw * &factor);
                prop_assert_eq!(after.esw, &before.esw * &factor);
                prop_assert_eq!(after.max_agent_envy, &before.max_agent_envy * &factor);
            }
        }
    }
}
