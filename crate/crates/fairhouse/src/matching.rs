//! Bipartite matching primitives underlying every solver.
//!
//! Everything here is deterministic: vertices are visited in ascending
//! index order and cost ties in the assignment solver are broken towards
//! the lexicographically smallest pair list. Costs are exact rationals;
//! the assignment solver clears denominators internally and works on
//! integers, so no ordering decision ever goes through floating point.

use std::collections::VecDeque;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::Zero;
use thiserror::Error;

use crate::instance::Allocation;
use crate::rational::denominator_lcm;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatchingError {
    #[error("no matching saturates the smaller side of the graph")]
    Infeasible,
    #[error("operation requires edge costs on every edge")]
    MissingCosts,
}

/// A bipartite graph over `left_count` agents and `right_count` slots,
/// with optional exact-rational edge costs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    left_count: usize,
    right_count: usize,
    adj: Vec<Vec<usize>>,
    costs: Option<Vec<Vec<BigRational>>>,
}

impl BipartiteGraph {
    pub fn new(left_count: usize, right_count: usize) -> Self {
        BipartiteGraph {
            left_count,
            right_count,
            adj: vec![Vec::new(); left_count],
            costs: None,
        }
    }

    fn insert(&mut self, left: usize, right: usize, cost: Option<BigRational>) {
        assert!(left < self.left_count, "left vertex {left} out of range");
        assert!(right < self.right_count, "right vertex {right} out of range");
        if self.edge_count() > 0 {
            assert_eq!(
                self.costs.is_some(),
                cost.is_some(),
                "graph mixes costed and uncosted edges"
            );
        }
        let n_left = self.left_count;
        let row = &mut self.adj[left];
        let pos = match row.binary_search(&right) {
            Ok(_) => panic!("duplicate edge ({left}, {right})"),
            Err(pos) => pos,
        };
        row.insert(pos, right);
        if let Some(c) = cost {
            let costs = self
                .costs
                .get_or_insert_with(|| vec![Vec::new(); n_left]);
            costs[left].insert(pos, c);
        }
    }

    pub fn add_edge(&mut self, left: usize, right: usize) {
        self.insert(left, right, None);
    }

    pub fn add_edge_with_cost(&mut self, left: usize, right: usize, cost: BigRational) {
        self.insert(left, right, Some(cost));
    }

    pub fn left_count(&self) -> usize {
        self.left_count
    }

    pub fn right_count(&self) -> usize {
        self.right_count
    }

    pub fn neighbors(&self, left: usize) -> &[usize] {
        &self.adj[left]
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum()
    }

    pub fn has_edge(&self, left: usize, right: usize) -> bool {
        self.adj[left].binary_search(&right).is_ok()
    }

    pub fn cost(&self, left: usize, right: usize) -> Option<&BigRational> {
        let costs = self.costs.as_ref()?;
        let pos = self.adj[left].binary_search(&right).ok()?;
        costs[left].get(pos)
    }
}

/// A matching, stored as (left, right) pairs sorted by left index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    pairs: Vec<(usize, usize)>,
}

impl Matching {
    fn from_pairs(mut pairs: Vec<(usize, usize)>) -> Self {
        pairs.sort_unstable();
        Matching { pairs }
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn right_of(&self, left: usize) -> Option<usize> {
        self.pairs
            .iter()
            .find(|&&(l, _)| l == left)
            .map(|&(_, r)| r)
    }

    /// Total cost under the graph's cost function.
    pub fn total_cost(&self, g: &BipartiteGraph) -> Result<BigRational, MatchingError> {
        let mut total = BigRational::zero();
        for &(l, r) in &self.pairs {
            total += g.cost(l, r).ok_or(MatchingError::MissingCosts)?;
        }
        Ok(total)
    }
}

/// An agent set whose joint neighborhood is strictly smaller than itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HallViolator {
    /// N′, ascending.
    pub agents: Vec<usize>,
    /// H′ = N(N′), ascending.
    pub houses: Vec<usize>,
}

fn augment(
    g: &BipartiteGraph,
    left: usize,
    visited: &mut [bool],
    match_right: &mut [Option<usize>],
    match_left: &mut [Option<usize>],
) -> bool {
    for &r in g.neighbors(left) {
        if visited[r] {
            continue;
        }
        visited[r] = true;
        let take = match match_right[r] {
            None => true,
            Some(other) => augment(g, other, visited, match_right, match_left),
        };
        if take {
            match_right[r] = Some(left);
            match_left[left] = Some(r);
            return true;
        }
    }
    false
}

/// Maximum-cardinality matching via augmenting paths, deterministic in
/// ascending vertex order.
pub fn max_cardinality_matching(g: &BipartiteGraph) -> Matching {
    let mut match_right: Vec<Option<usize>> = vec![None; g.right_count()];
    let mut match_left: Vec<Option<usize>> = vec![None; g.left_count()];
    for l in 0..g.left_count() {
        let mut visited = vec![false; g.right_count()];
        augment(g, l, &mut visited, &mut match_right, &mut match_left);
    }
    Matching::from_pairs(
        match_left
            .iter()
            .enumerate()
            .filter_map(|(l, r)| r.map(|r| (l, r)))
            .collect(),
    )
}

/// Finds a minimal Hall violator, or `None` when every left vertex with at
/// least one edge can be saturated.
///
/// The violator is grown by alternating BFS from the lowest-index
/// unmatched vertex that has edges; the result satisfies |H′| = |N′| − 1
/// and H′ = N(N′).
pub fn find_minimal_hall_violator(g: &BipartiteGraph) -> Option<HallViolator> {
    let matching = max_cardinality_matching(g);
    let mut match_right: Vec<Option<usize>> = vec![None; g.right_count()];
    let mut matched_left = vec![false; g.left_count()];
    for &(l, r) in matching.pairs() {
        match_right[r] = Some(l);
        matched_left[l] = true;
    }
    let seed = (0..g.left_count())
        .find(|&l| !matched_left[l] && !g.neighbors(l).is_empty())?;

    let mut in_agents = vec![false; g.left_count()];
    let mut in_houses = vec![false; g.right_count()];
    in_agents[seed] = true;
    let mut queue = VecDeque::from([seed]);
    while let Some(l) = queue.pop_front() {
        for &r in g.neighbors(l) {
            if in_houses[r] {
                continue;
            }
            in_houses[r] = true;
            // Every reachable house is matched, or an augmenting path
            // would exist from the unmatched seed.
            if let Some(l2) = match_right[r] {
                if !in_agents[l2] {
                    in_agents[l2] = true;
                    queue.push_back(l2);
                }
            }
        }
    }
    let agents: Vec<usize> = (0..g.left_count()).filter(|&l| in_agents[l]).collect();
    let houses: Vec<usize> = (0..g.right_count()).filter(|&r| in_houses[r]).collect();
    debug_assert_eq!(houses.len() + 1, agents.len());
    Some(HallViolator { agents, houses })
}

/// Maximum-size allocation: a maximum matching, extended by pairing
/// unmatched agents with unmatched slots in ascending index order. The
/// `house_ids` slice maps the graph's right vertices to house indices in
/// the returned allocation.
pub fn max_size_allocation(g: &BipartiteGraph, house_ids: &[usize]) -> Allocation {
    assert_eq!(house_ids.len(), g.right_count(), "house id map size mismatch");
    let matching = max_cardinality_matching(g);
    let mut slots: Vec<Option<usize>> = vec![None; g.left_count()];
    let mut right_used = vec![false; g.right_count()];
    for &(l, r) in matching.pairs() {
        slots[l] = Some(house_ids[r]);
        right_used[r] = true;
    }
    let mut free_rights = (0..g.right_count()).filter(|&r| !right_used[r]);
    for slot in slots.iter_mut() {
        if slot.is_none() {
            match free_rights.next() {
                Some(r) => *slot = Some(house_ids[r]),
                None => break,
            }
        }
    }
    Allocation::new(slots).expect("matchings are injective")
}

/// Shortest-augmenting-path assignment solver on integer costs. `None`
/// entries are forbidden edges. Requires rows ≤ cols; returns the column
/// matched to each row, or `None` when no row-saturating matching exists.
fn hungarian(a: &[Vec<Option<BigInt>>]) -> Option<Vec<usize>> {
    let rows = a.len();
    if rows == 0 {
        return Some(Vec::new());
    }
    let cols = a[0].len();
    debug_assert!(rows <= cols);
    let mut u = vec![BigInt::zero(); rows + 1];
    let mut v = vec![BigInt::zero(); cols + 1];
    // p[j] = 1-based row matched to column j; 0 means unmatched.
    let mut p = vec![0usize; cols + 1];
    let mut way = vec![0usize; cols + 1];
    for i in 1..=rows {
        p[0] = i;
        let mut j0 = 0usize;
        let mut minv: Vec<Option<BigInt>> = vec![None; cols + 1];
        let mut used = vec![false; cols + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta: Option<BigInt> = None;
            let mut j1 = 0usize;
            for j in 1..=cols {
                if used[j] {
                    continue;
                }
                if let Some(c) = &a[i0 - 1][j - 1] {
                    let cur = c - &u[i0] - &v[j];
                    if minv[j].as_ref().is_none_or(|mv| cur < *mv) {
                        minv[j] = Some(cur);
                        way[j] = j0;
                    }
                }
                if let Some(mv) = &minv[j] {
                    if delta.as_ref().is_none_or(|d| mv < d) {
                        delta = Some(mv.clone());
                        j1 = j;
                    }
                }
            }
            let delta = delta?;
            for j in 0..=cols {
                if used[j] {
                    u[p[j]] += &delta;
                    v[j] -= &delta;
                } else if let Some(mv) = minv[j].as_mut() {
                    *mv -= &delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut result = vec![usize::MAX; rows];
    for j in 1..=cols {
        if p[j] != 0 {
            result[p[j] - 1] = j - 1;
        }
    }
    result.iter().all(|&c| c != usize::MAX).then_some(result)
}

/// Minimum-cost matching saturating the smaller side.
///
/// Among minimum-cost matchings the lexicographically smallest pair list
/// is returned (pairs sorted by the saturated side's index). Costs are
/// scaled to integers exactly, then refined with a positional tie-break
/// term strictly smaller than one cost unit.
pub fn min_cost_perfect_matching(g: &BipartiteGraph) -> Result<Matching, MatchingError> {
    if g.edge_count() > 0 && g.costs.is_none() {
        return Err(MatchingError::MissingCosts);
    }
    let transpose = g.left_count() > g.right_count();
    let (rows, cols) = if transpose {
        (g.right_count(), g.left_count())
    } else {
        (g.left_count(), g.right_count())
    };
    if rows == 0 {
        return Ok(Matching::from_pairs(Vec::new()));
    }

    let all_costs: Vec<&BigRational> = (0..g.left_count())
        .flat_map(|l| g.neighbors(l).iter().map(move |&r| g.cost(l, r).unwrap()))
        .collect();
    let scale = denominator_lcm(all_costs.iter().copied());
    let scale_rat = BigRational::from_integer(scale);

    // Tie-break term: row i contributes col·base^(rows−1−i), the base-`cols`
    // positional encoding of the assignment vector. The sum stays below
    // base^rows, one unit of scaled base cost.
    let base = BigInt::from(cols);
    let unit = base.pow(rows as u32);
    let mut matrix: Vec<Vec<Option<BigInt>>> = vec![vec![None; cols]; rows];
    let mut digit = unit.clone();
    for (i, row) in matrix.iter_mut().enumerate() {
        digit /= &base;
        for (j, cell) in row.iter_mut().enumerate() {
            let (l, r) = if transpose { (j, i) } else { (i, j) };
            if let Some(c) = g.cost(l, r) {
                let scaled = (c * &scale_rat).to_integer();
                *cell = Some(scaled * &unit + BigInt::from(j) * &digit);
            }
        }
        let _ = i;
    }

    let assignment = hungarian(&matrix).ok_or(MatchingError::Infeasible)?;
    let pairs = assignment
        .into_iter()
        .enumerate()
        .map(|(i, j)| if transpose { (j, i) } else { (i, j) })
        .collect();
    Ok(Matching::from_pairs(pairs))
}
