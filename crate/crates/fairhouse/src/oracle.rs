//! Exhaustive ground-truth solver over all partial injective allocations.
//!
//! The oracle enumerates the full allocation space in lexicographic order
//! (unassigned sorts before house 0) and optimizes any envy objective under
//! any efficiency constraint, including the combinations with no known
//! polynomial algorithm. It is a correctness instrument for desk-scale
//! instances, guarded by an enumeration budget rather than hard size caps.
//!
//! Internally values are scaled to integers by the LCM of their
//! denominators; comparisons and sums then run in `i128` when they fit and
//! in `BigInt` otherwise. Scaling by a positive rational preserves every
//! ordering the oracle depends on, and reported values are re-derived from
//! the witness with exact rational arithmetic.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::Zero;
use thiserror::Error;

use crate::instance::{Allocation, Instance};
use crate::metrics;

/// Default enumeration budget.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Objective {
    /// Maximize size among envy-free allocations.
    MaxSizeEnvyFree,
    /// Minimize the number of envious agents.
    MinNumEnvy,
    /// Minimize the total envy over all agents.
    MinTotalEnvy,
    /// Minimize the largest per-agent aggregate envy.
    MinimaxTotalEnvy,
}

impl Objective {
    pub fn as_str(&self) -> &'static str {
        match self {
            Objective::MaxSizeEnvyFree => "max-size-ef",
            Objective::MinNumEnvy => "min-num-envy",
            Objective::MinTotalEnvy => "min-total-envy",
            Objective::MinimaxTotalEnvy => "minimax-total-envy",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Constraint {
    Unconstrained,
    /// Restrict to allocations of maximum utilitarian welfare.
    MaxUsw,
    /// Restrict to allocations attaining the lexicographic (k, β)
    /// egalitarian optimum: most agents with positive value, then the
    /// largest worst positive value.
    MaxEsw,
    /// Restrict to complete allocations.
    Complete,
    /// Restrict to allocations of at least the given size.
    MinSize(usize),
}

impl Constraint {
    pub fn as_str(&self) -> &'static str {
        match self {
            Constraint::Unconstrained => "none",
            Constraint::MaxUsw => "max-usw",
            Constraint::MaxEsw => "max-esw",
            Constraint::Complete => "complete",
            Constraint::MinSize(_) => "size",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("enumeration budget exceeded: {candidates} allocations, budget {budget}")]
    BudgetExceeded { candidates: u128, budget: u64 },
}

/// A solved oracle cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    /// Optimal objective value (a count for #envy and size objectives).
    pub value: BigRational,
    /// Lexicographically smallest optimal allocation.
    pub witness: Allocation,
    /// Number of allocations attaining the optimum.
    pub optima_count: u64,
    /// Number of allocations examined.
    pub candidates: u64,
}

/// Outcome of a solve: the constraint set can be empty (size bound above
/// the achievable size) or contain no envy-free allocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleOutcome {
    Solved(OracleResult),
    Infeasible(String),
}

impl OracleOutcome {
    pub fn solved(&self) -> Option<&OracleResult> {
        match self {
            OracleOutcome::Solved(r) => Some(r),
            OracleOutcome::Infeasible(_) => None,
        }
    }
}

/// Number of partial injective allocations: Σ_k C(n,k)·m!/(m−k)!.
/// Saturates at `u128::MAX`.
pub fn allocation_count(agents: usize, houses: usize) -> u128 {
    let mut total: u128 = 0;
    // term_k = C(n,k) · P(m,k); term_0 = 1.
    let mut term: u128 = 1;
    for k in 0..=agents.min(houses) {
        if k > 0 {
            // term_k = term_{k−1} · (n−k+1)/k · (m−k+1)
            let Some(t) = term
                .checked_mul((agents - k + 1) as u128)
                .map(|t| t / k as u128)
                .and_then(|t| t.checked_mul((houses - k + 1) as u128))
            else {
                return u128::MAX;
            };
            term = t;
        }
        total = match total.checked_add(term) {
            Some(t) => t,
            None => return u128::MAX,
        };
    }
    total
}

fn check_budget(inst: &Instance, budget: u64) -> Result<(), OracleError> {
    let candidates = allocation_count(inst.agent_count(), inst.house_count());
    if candidates > budget as u128 {
        return Err(OracleError::BudgetExceeded { candidates, budget });
    }
    Ok(())
}

/// Streaming lexicographic enumeration of every partial injective
/// allocation. `None` slots sort before any house index.
#[derive(Debug)]
pub struct AllocationEnumerator {
    houses: usize,
    slots: Vec<Option<usize>>,
    used: Vec<bool>,
    started: bool,
    done: bool,
}

impl AllocationEnumerator {
    fn new(agents: usize, houses: usize) -> Self {
        AllocationEnumerator {
            houses,
            slots: vec![None; agents],
            used: vec![false; houses],
            started: false,
            done: false,
        }
    }

    fn advance(&mut self) -> bool {
        let n = self.slots.len();
        let mut pos = n;
        while pos > 0 {
            pos -= 1;
            let from = match self.slots[pos] {
                Some(h) => {
                    self.used[h] = false;
                    h + 1
                }
                None => 0,
            };
            if let Some(h) = (from..self.houses).find(|&h| !self.used[h]) {
                self.slots[pos] = Some(h);
                self.used[h] = true;
                return true;
            }
            self.slots[pos] = None;
        }
        false
    }
}

impl Iterator for AllocationEnumerator {
    type Item = Allocation;

    fn next(&mut self) -> Option<Allocation> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
        } else if !self.advance() {
            self.done = true;
            return None;
        }
        Some(Allocation::new(self.slots.clone()).expect("enumeration is injective"))
    }
}

/// Yields every partial injective allocation exactly once, in
/// lexicographic order, after checking the enumeration budget.
pub fn enumerate_allocations(
    inst: &Instance,
    budget: u64,
) -> Result<AllocationEnumerator, OracleError> {
    check_budget(inst, budget)?;
    Ok(AllocationEnumerator::new(
        inst.agent_count(),
        inst.house_count(),
    ))
}

/// Integer domain the oracle folds over: `i128` when scaled values fit,
/// `BigInt` otherwise.
trait OracleNum: Clone + Ord {
    fn zero() -> Self;
    fn from_usize(v: usize) -> Self;
    fn add_assign_ref(&mut self, rhs: &Self);
    fn sub_ref(lhs: &Self, rhs: &Self) -> Self;
    fn to_bigint(&self) -> BigInt;
}

impl OracleNum for i128 {
    fn zero() -> Self {
        0
    }
    fn from_usize(v: usize) -> Self {
        v as i128
    }
    fn add_assign_ref(&mut self, rhs: &Self) {
        *self += rhs;
    }
    fn sub_ref(lhs: &Self, rhs: &Self) -> Self {
        lhs - rhs
    }
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl OracleNum for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn from_usize(v: usize) -> Self {
        BigInt::from(v)
    }
    fn add_assign_ref(&mut self, rhs: &Self) {
        *self += rhs;
    }
    fn sub_ref(lhs: &Self, rhs: &Self) -> Self {
        lhs - rhs
    }
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
}

struct FoldMetrics<T> {
    usw: T,
    total_envy: T,
    max_agent_envy: T,
    num_envious: usize,
    size: usize,
    esw_k: usize,
    esw: T,
}

struct ScaledMatrix<T> {
    n: usize,
    m: usize,
    vals: Vec<T>,
    scale: BigInt,
}

impl<T: OracleNum> ScaledMatrix<T> {
    fn eval(&self, slots: &[Option<usize>]) -> FoldMetrics<T> {
        let zero = T::zero();
        let mut usw = T::zero();
        let mut total_envy = T::zero();
        let mut max_agent_envy = T::zero();
        let mut num_envious = 0usize;
        let mut size = 0usize;
        let mut esw_k = 0usize;
        let mut esw: Option<T> = None;
        for i in 0..self.n {
            let own = match slots[i] {
                Some(h) => {
                    size += 1;
                    self.vals[i * self.m + h].clone()
                }
                None => zero.clone(),
            };
            if own > zero {
                esw_k += 1;
                if esw.as_ref().is_none_or(|e| own < *e) {
                    esw = Some(own.clone());
                }
            }
            usw.add_assign_ref(&own);
            let mut agent_envy = T::zero();
            for (j, slot) in slots.iter().enumerate() {
                if j == i {
                    continue;
                }
                if let Some(h) = slot {
                    let other = &self.vals[i * self.m + h];
                    if *other > own {
                        agent_envy.add_assign_ref(&T::sub_ref(other, &own));
                    }
                }
            }
            if agent_envy > zero {
                num_envious += 1;
            }
            if agent_envy > max_agent_envy {
                max_agent_envy = agent_envy.clone();
            }
            total_envy.add_assign_ref(&agent_envy);
        }
        FoldMetrics {
            usw,
            total_envy,
            max_agent_envy,
            num_envious,
            size,
            esw_k,
            esw: esw.unwrap_or_else(T::zero),
        }
    }
}

fn i128_matrix(inst: &Instance) -> Option<ScaledMatrix<i128>> {
    let (matrix, scale) = inst.to_integer_values();
    // Leave headroom for envy sums over every pair.
    let cells = (inst.agent_count() * inst.house_count() + 2) as i128;
    let limit = i128::MAX / (cells * 4);
    let mut vals = Vec::with_capacity(matrix.len() * matrix[0].len());
    for row in &matrix {
        for v in row {
            let as_i128 = i128::try_from(v).ok()?;
            if as_i128 > limit {
                return None;
            }
            vals.push(as_i128);
        }
    }
    Some(ScaledMatrix {
        n: inst.agent_count(),
        m: inst.house_count(),
        vals,
        scale,
    })
}

fn bigint_matrix(inst: &Instance) -> ScaledMatrix<BigInt> {
    let (matrix, scale) = inst.to_integer_values();
    ScaledMatrix {
        n: inst.agent_count(),
        m: inst.house_count(),
        vals: matrix.into_iter().flatten().collect(),
        scale,
    }
}

/// Enumerates allocations through a callback, optionally restricted to
/// complete ones (the only constraint worth pruning for).
fn visit_allocations<F: FnMut(&[Option<usize>])>(
    n: usize,
    m: usize,
    complete_only: bool,
    f: &mut F,
) {
    let target = if complete_only { n.min(m) } else { 0 };
    let mut slots: Vec<Option<usize>> = vec![None; n];
    let mut used = vec![false; m];
    fn rec<F: FnMut(&[Option<usize>])>(
        slots: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
        agent: usize,
        assigned: usize,
        complete_only: bool,
        target: usize,
        f: &mut F,
    ) {
        let n = slots.len();
        if agent == n {
            if !complete_only || assigned == target {
                f(slots);
            }
            return;
        }
        // Unassigned branch first: it sorts lowest.
        if !complete_only || n - agent > target - assigned {
            rec(slots, used, agent + 1, assigned, complete_only, target, f);
        }
        for h in 0..used.len() {
            if used[h] {
                continue;
            }
            used[h] = true;
            slots[agent] = Some(h);
            rec(
                slots,
                used,
                agent + 1,
                assigned + 1,
                complete_only,
                target,
                f,
            );
            slots[agent] = None;
            used[h] = false;
        }
    }
    rec(&mut slots, &mut used, 0, 0, complete_only, target, f);
}

/// Constraint key, maximized lexicographically before the objective is
/// considered.
type Key<T> = (T, T);

struct Best<T> {
    key: Key<T>,
    obj: T,
    witness: Vec<Option<usize>>,
    count: u64,
}

fn solve_with<T: OracleNum>(
    matrix: &ScaledMatrix<T>,
    inst: &Instance,
    objective: Objective,
    constraint: Constraint,
) -> OracleOutcome {
    let complete_only = constraint == Constraint::Complete;
    let mut candidates: u64 = 0;
    let mut best_key: Option<Key<T>> = None;
    let mut best: Option<Best<T>> = None;

    visit_allocations(matrix.n, matrix.m, complete_only, &mut |slots| {
        candidates += 1;
        let met = matrix.eval(slots);
        if let Constraint::MinSize(k) = constraint {
            if met.size < k {
                return;
            }
        }
        let key: Key<T> = match constraint {
            Constraint::MaxUsw => (met.usw.clone(), T::zero()),
            Constraint::MaxEsw => (T::from_usize(met.esw_k), met.esw.clone()),
            _ => (T::zero(), T::zero()),
        };
        if best_key.as_ref().is_none_or(|k| key > *k) {
            best_key = Some(key.clone());
        }
        if objective == Objective::MaxSizeEnvyFree && met.num_envious > 0 {
            return;
        }
        let obj: T = match objective {
            // Maximization, folded into the minimizing tracker.
            Objective::MaxSizeEnvyFree => T::sub_ref(&T::zero(), &T::from_usize(met.size)),
            Objective::MinNumEnvy => T::from_usize(met.num_envious),
            Objective::MinTotalEnvy => met.total_envy.clone(),
            Objective::MinimaxTotalEnvy => met.max_agent_envy.clone(),
        };
        match &mut best {
            None => {
                best = Some(Best {
                    key,
                    obj,
                    witness: slots.to_vec(),
                    count: 1,
                })
            }
            Some(b) => {
                if key > b.key || (key == b.key && obj < b.obj) {
                    b.key = key;
                    b.obj = obj;
                    b.witness = slots.to_vec();
                    b.count = 1;
                } else if key == b.key && obj == b.obj {
                    b.count += 1;
                }
            }
        }
    });

    let Some(best_key) = best_key else {
        return OracleOutcome::Infeasible(format!(
            "no allocation satisfies the {} constraint",
            constraint.as_str()
        ));
    };
    let Some(Best {
        key,
        witness,
        count: optima_count,
        ..
    }) = best
    else {
        return OracleOutcome::Infeasible("no envy-free allocation qualifies".to_string());
    };
    if key != best_key {
        return OracleOutcome::Infeasible(format!(
            "no envy-free allocation attains the {} optimum",
            constraint.as_str()
        ));
    }

    let witness = Allocation::new(witness).expect("enumeration is injective");
    let report = metrics::evaluate(inst, &witness).expect("witness fits instance");
    let value = match objective {
        Objective::MaxSizeEnvyFree => BigRational::from_integer(BigInt::from(report.size)),
        Objective::MinNumEnvy => BigRational::from_integer(BigInt::from(report.num_envious)),
        Objective::MinTotalEnvy => report.total_envy,
        Objective::MinimaxTotalEnvy => report.max_agent_envy,
    };
    OracleOutcome::Solved(OracleResult {
        value,
        witness,
        optima_count,
        candidates,
    })
}

/// Solves one (objective, constraint) cell exactly by enumeration.
pub fn oracle_solve(
    inst: &Instance,
    objective: Objective,
    constraint: Constraint,
    budget: u64,
) -> Result<OracleOutcome, OracleError> {
    check_budget(inst, budget)?;
    Ok(match i128_matrix(inst) {
        Some(matrix) => solve_with(&matrix, inst, objective, constraint),
        None => solve_with(&bigint_matrix(inst), inst, objective, constraint),
    })
}

/// Brute-force lexicographic egalitarian optimum: the largest number of
/// agents that can simultaneously receive positive value, then the largest
/// worst positive value among them. Returns (0, 0) when nothing positive
/// is achievable.
pub fn max_esw_signature(
    inst: &Instance,
    budget: u64,
) -> Result<(usize, BigRational), OracleError> {
    check_budget(inst, budget)?;
    fn fold<T: OracleNum>(matrix: &ScaledMatrix<T>) -> (usize, BigRational) {
        let mut best: (usize, T) = (0, T::zero());
        visit_allocations(matrix.n, matrix.m, false, &mut |slots| {
            let met = matrix.eval(slots);
            let sig = (met.esw_k, met.esw);
            if sig > best {
                best = sig;
            }
        });
        let beta = BigRational::new(best.1.to_bigint(), matrix.scale.clone());
        (best.0, beta)
    }
    Ok(match i128_matrix(inst) {
        Some(matrix) => fold(&matrix),
        None => fold(&bigint_matrix(inst)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::rational::ratio;

    #[test]
    fn allocation_counts_match_the_closed_form() {
        assert_eq!(allocation_count(1, 1), 2);
        assert_eq!(allocation_count(2, 2), 7);
        assert_eq!(allocation_count(4, 5), 501);
    }

    #[test]
    fn enumerator_yields_each_allocation_once_in_lex_order() {
        let inst = Instance::from_integers(&[&[1, 0], &[0, 1]]).unwrap();
        let all: Vec<Allocation> = enumerate_allocations(&inst, 100).unwrap().collect();
        assert_eq!(all.len(), 7);
        let mut sorted = all.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted, all);
        assert_eq!(all[0], Allocation::empty(2));
    }

    #[test]
    fn enumerator_counts_the_example_space() {
        let inst = fixtures::binary_tradeoff();
        assert_eq!(enumerate_allocations(&inst, 1000).unwrap().count(), 501);
    }

    #[test]
    fn budget_guard_trips() {
        let inst = fixtures::binary_tradeoff();
        let err = enumerate_allocations(&inst, 500).unwrap_err();
        assert_eq!(
            err,
            OracleError::BudgetExceeded {
                candidates: 501,
                budget: 500
            }
        );
    }

    #[test]
    fn tradeoff_min_envy_complete_is_one() {
        let inst = fixtures::binary_tradeoff();
        let out = oracle_solve(&inst, Objective::MinNumEnvy, Constraint::Complete, 10_000)
            .unwrap();
        let result = out.solved().unwrap();
        assert_eq!(result.value, ratio(1, 1));
        assert!(metrics::is_complete(&inst, &result.witness));
    }

    #[test]
    fn tradeoff_min_envy_max_usw_is_two() {
        let inst = fixtures::binary_tradeoff();
        let out = oracle_solve(&inst, Objective::MinNumEnvy, Constraint::MaxUsw, 10_000)
            .unwrap();
        let result = out.solved().unwrap();
        assert_eq!(result.value, ratio(2, 1));
        let report = metrics::evaluate(&inst, &result.witness).unwrap();
        assert_eq!(report.usw, ratio(2, 1));
    }

    #[test]
    fn equal_total_envy_instance_optimum_is_five() {
        let inst = fixtures::equal_total_envy();
        let out = oracle_solve(&inst, Objective::MinTotalEnvy, Constraint::MaxUsw, 10_000)
            .unwrap();
        let result = out.solved().unwrap();
        assert_eq!(result.value, ratio(5, 1));
        let report = metrics::evaluate(&inst, &result.witness).unwrap();
        assert_eq!(report.usw, ratio(15, 1));
    }

    #[test]
    fn tradeoff_max_size_ef_is_three_with_zero_envy() {
        let inst = fixtures::binary_tradeoff();
        let out = oracle_solve(
            &inst,
            Objective::MaxSizeEnvyFree,
            Constraint::Unconstrained,
            10_000,
        )
        .unwrap();
        let result = out.solved().unwrap();
        assert_eq!(result.value, ratio(3, 1));
        let report = metrics::evaluate(&inst, &result.witness).unwrap();
        assert!(report.is_envy_free());
    }

    #[test]
    fn ef_with_max_usw_is_infeasible_on_the_binary_tradeoff_instance() {
        let inst = fixtures::binary_tradeoff();
        let out = oracle_solve(
            &inst,
            Objective::MaxSizeEnvyFree,
            Constraint::MaxUsw,
            10_000,
        )
        .unwrap();
        assert!(matches!(out, OracleOutcome::Infeasible(_)));
    }

    #[test]
    fn single_agent_single_house_has_no_envy_anywhere() {
        let inst = Instance::from_integers(&[&[7]]).unwrap();
        for objective in [
            Objective::MinNumEnvy,
            Objective::MinTotalEnvy,
            Objective::MinimaxTotalEnvy,
        ] {
            let out = oracle_solve(&inst, objective, Constraint::Unconstrained, 100).unwrap();
            assert_eq!(out.solved().unwrap().value, ratio(0, 1));
        }
        // With nobody to envy, the lone agent can simply take the house.
        let out = oracle_solve(&inst, Objective::MaxSizeEnvyFree, Constraint::Unconstrained, 100)
            .unwrap();
        assert_eq!(out.solved().unwrap().value, ratio(1, 1));
    }

    #[test]
    fn oversized_size_constraint_reports_infeasible() {
        let inst = fixtures::scarce_houses();
        let out = oracle_solve(&inst, Objective::MinNumEnvy, Constraint::MinSize(3), 10_000)
            .unwrap();
        assert!(matches!(out, OracleOutcome::Infeasible(_)));
    }

    #[test]
    fn max_esw_signature_of_the_binary_tradeoff_instance() {
        let inst = fixtures::binary_tradeoff();
        assert_eq!(
            max_esw_signature(&inst, 10_000).unwrap(),
            (2, ratio(1, 1))
        );
    }

    #[test]
    fn relaxing_complete_never_worsens_minimized_objectives() {
        let inst = fixtures::dominant_value();
        for objective in [
            Objective::MinNumEnvy,
            Objective::MinTotalEnvy,
            Objective::MinimaxTotalEnvy,
        ] {
            let complete =
                oracle_solve(&inst, objective, Constraint::Complete, 10_000).unwrap();
            let free =
                oracle_solve(&inst, objective, Constraint::Unconstrained, 10_000).unwrap();
            let complete = complete.solved().unwrap();
            let free = free.solved().unwrap();
            assert!(free.value <= complete.value);
        }
    }

    #[test]
    fn relaxing_the_constraint_helps_on_random_instances() {
        use proptest::prelude::*;
        use proptest::strategy::ValueTree;
        let mut runner = proptest::test_runner::TestRunner::deterministic();
        let strategy = (1usize..=3, 1usize..=4, proptest::collection::vec(0i64..5, 12));
        for _ in 0..64 {
            let (n, m, raw) = strategy.new_tree(&mut runner).unwrap().current();
            let rows: Vec<Vec<_>> = (0..n)
                .map(|a| (0..m).map(|h| ratio(raw[a * 4 + h], 1)).collect())
                .collect();
            let inst = Instance::new(rows).unwrap();
            for objective in [
                Objective::MinNumEnvy,
                Objective::MinTotalEnvy,
                Objective::MinimaxTotalEnvy,
            ] {
                let complete = oracle_solve(&inst, objective, Constraint::Complete, 100_000)
                    .unwrap();
                let free = oracle_solve(&inst, objective, Constraint::Unconstrained, 100_000)
                    .unwrap();
                assert!(free.solved().unwrap().value <= complete.solved().unwrap().value);
            }
        }
    }

    #[test]
    fn rational_instances_use_the_exact_path() {
        let inst = Instance::new(vec![
            vec![ratio(1, 3), ratio(1, 7)],
            vec![ratio(2, 3), ratio(5, 7)],
        ])
        .unwrap();
        let out = oracle_solve(&inst, Objective::MinTotalEnvy, Constraint::Complete, 1_000)
            .unwrap();
        let result = out.solved().unwrap();
        // Witness must attain the value under exact arithmetic.
        let report = metrics::evaluate(&inst, &result.witness).unwrap();
        assert_eq!(report.total_envy, result.value);
    }

    #[test]
    fn witness_is_the_lex_smallest_optimum_and_counts_are_exact() {
        use crate::metrics::{evaluate, is_complete};
        // Independent route: full enumeration with rational metrics.
        for (raw, n, m) in [
            (vec![3i64, 1, 0, 2, 2, 0], 2usize, 3usize),
            (vec![1, 1, 1, 1, 2, 0], 3, 2),
            (vec![0, 0, 0, 0, 0, 0], 2, 3),
            (vec![5, 4, 3, 2, 1, 6], 2, 3),
        ] {
            let rows: Vec<Vec<BigRational>> = (0..n)
                .map(|a| (0..m).map(|h| ratio(raw[a * m + h], 1)).collect())
                .collect();
            let inst = Instance::new(rows).unwrap();
            for constraint in [Constraint::Unconstrained, Constraint::Complete] {
                let solved = oracle_solve(&inst, Objective::MinTotalEnvy, constraint, 10_000)
                    .unwrap();
                let result = solved.solved().unwrap();
                let mut best: Option<BigRational> = None;
                let mut witness = None;
                let mut count = 0u64;
                for alloc in enumerate_allocations(&inst, 10_000).unwrap() {
                    if constraint == Constraint::Complete && !is_complete(&inst, &alloc) {
                        continue;
                    }
                    let te = evaluate(&inst, &alloc).unwrap().total_envy;
                    match &best {
                        Some(b) if *b < te => {}
                        Some(b) if *b == te => count += 1,
                        _ => {
                            best = Some(te);
                            witness = Some(alloc);
                            count = 1;
                        }
                    }
                }
                assert_eq!(result.value, best.unwrap());
                assert_eq!(result.witness, witness.unwrap());
                assert_eq!(result.optima_count, count);
            }
        }
    }

    #[test]
    fn values_beyond_i128_take_the_bigint_path() {
        use num::bigint::BigInt;
        let huge = BigRational::from_integer(BigInt::from(2).pow(140));
        let tiny = BigRational::new(BigInt::from(1), BigInt::from(2).pow(140));
        let zero = BigRational::from_integer(BigInt::from(0));
        let inst = Instance::new(vec![
            vec![huge.clone(), tiny.clone()],
            vec![tiny.clone(), huge.clone()],
            vec![zero.clone(), tiny.clone()],
        ])
        .unwrap();
        let out = oracle_solve(&inst, Objective::MinTotalEnvy, Constraint::MaxUsw, 1_000)
            .unwrap();
        let result = out.solved().unwrap();
        // Both agents on their huge diagonal; agent 2's best outcome is
        // staying unassigned while house 1 is taken, envying by `tiny`.
        assert_eq!(result.value, tiny);
        let (k, beta) = max_esw_signature(&inst, 1_000).unwrap();
        assert_eq!(k, 2);
        assert_eq!(beta, huge);
    }
}
