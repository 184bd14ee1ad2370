//! Random-instance study: generators, sweep runner, summaries, CSV.
//!
//! A sweep runs four solvers per generated instance — MEC (min #envy
//! complete), MEMW (min #envy max USW), MTEC (min total envy complete),
//! MTEMW (min total envy max USW) — over a grid of house counts and edge
//! densities λ. Complete-allocation solvers fall back to the oracle when
//! m > n. Per-trial seeds derive from the base seed and cell key, so a
//! sweep is reproducible cell by cell and byte-identical run to run.

use std::fmt::Write as _;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::instance::{Allocation, Instance};
use crate::metrics;
use crate::oracle::{self, Constraint, Objective, OracleOutcome, DEFAULT_BUDGET};
use crate::rational::render_rational;
use crate::solvers::usw;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValuationModel {
    /// Liked edges get value 1.
    Binary,
    /// Liked edges get distinct integers drawn without replacement from
    /// [MaxDeg − Deg(agent) + 1, MaxDeg].
    Weighted,
}

impl ValuationModel {
    pub fn as_str(&self) -> &'static str {
        match self {
            ValuationModel::Binary => "binary",
            ValuationModel::Weighted => "weighted",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExperimentError {
    #[error("invalid experiment config: {0}")]
    InvalidConfig(String),
}

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub agent_count: usize,
    /// House-count multipliers; house counts are multiplier·n rounded to
    /// nearest.
    pub multipliers: Vec<BigRational>,
    /// Edge densities, each in [0, 1].
    pub lambdas: Vec<BigRational>,
    pub model: ValuationModel,
    pub trials: usize,
    pub base_seed: u64,
    pub oracle_budget: u64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            agent_count: 5,
            multipliers: vec![
                BigRational::from_integer(BigInt::one()),
                BigRational::from_integer(BigInt::from(2)),
            ],
            lambdas: (1..=10)
                .map(|k| BigRational::new(BigInt::from(k), BigInt::from(10)))
                .collect(),
            model: ValuationModel::Binary,
            trials: 100,
            base_seed: 0,
            oracle_budget: DEFAULT_BUDGET,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<(), ExperimentError> {
        if self.agent_count == 0 {
            return Err(ExperimentError::InvalidConfig(
                "agent count must be positive".into(),
            ));
        }
        if self.trials == 0 {
            return Err(ExperimentError::InvalidConfig(
                "trials must be at least 1".into(),
            ));
        }
        if self.multipliers.is_empty() || self.lambdas.is_empty() {
            return Err(ExperimentError::InvalidConfig(
                "multiplier and lambda grids must be non-empty".into(),
            ));
        }
        for mult in &self.multipliers {
            if !mult.is_positive() {
                return Err(ExperimentError::InvalidConfig(
                    "house multipliers must be positive".into(),
                ));
            }
        }
        for lambda in &self.lambdas {
            if lambda.is_negative() || *lambda > BigRational::one() {
                return Err(ExperimentError::InvalidConfig(
                    "lambda must lie in [0, 1]".into(),
                ));
            }
            if lambda.denom().to_u64().is_none() || lambda.numer().to_u64().is_none() {
                return Err(ExperimentError::InvalidConfig(
                    "lambda precision exceeds the generator's range".into(),
                ));
            }
        }
        Ok(())
    }

    /// House counts on the grid: multiplier·n rounded to nearest integer.
    pub fn house_counts(&self) -> Vec<usize> {
        let n = BigRational::from_integer(BigInt::from(self.agent_count));
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        self.multipliers
            .iter()
            .map(|mult| {
                let rounded = (mult * &n + &half).floor();
                rounded.to_integer().to_usize().unwrap_or(1).max(1)
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolverCode {
    Mec,
    Memw,
    Mtec,
    Mtemw,
}

impl SolverCode {
    pub const ALL: [SolverCode; 4] = [
        SolverCode::Mec,
        SolverCode::Memw,
        SolverCode::Mtec,
        SolverCode::Mtemw,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            SolverCode::Mec => "MEC",
            SolverCode::Memw => "MEMW",
            SolverCode::Mtec => "MTEC",
            SolverCode::Mtemw => "MTEMW",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverMetrics {
    pub num_envious: usize,
    pub total_envy: BigRational,
    pub usw: BigRational,
}

/// One trial's results: metrics per solver, or a status tag for cells the
/// solver could not serve (oracle budget exceeded).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialRecord {
    pub model: ValuationModel,
    pub house_count: usize,
    pub lambda: BigRational,
    pub trial: usize,
    pub seed: u64,
    pub outcomes: Vec<(SolverCode, Result<SolverMetrics, String>)>,
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e3779b97f4a7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d049bb133111eb);
    x ^ (x >> 31)
}

fn mix_bytes(mut state: u64, bytes: &[u8]) -> u64 {
    for &b in bytes {
        state = splitmix64(state ^ u64::from(b));
    }
    state
}

/// Stable per-trial seed from the base seed and the cell key.
pub fn derive_trial_seed(
    base_seed: u64,
    model: ValuationModel,
    house_count: usize,
    lambda: &BigRational,
    trial: usize,
) -> u64 {
    let mut state = splitmix64(base_seed);
    state = splitmix64(state ^ match model {
        ValuationModel::Binary => 1,
        ValuationModel::Weighted => 2,
    });
    state = splitmix64(state ^ house_count as u64);
    state = mix_bytes(state, render_rational(lambda).as_bytes());
    splitmix64(state ^ trial as u64)
}

/// Generates one random instance: each (agent, house) pair is liked
/// independently with probability λ; the model maps liked edges to values.
pub fn gen_random_instance(
    agents: usize,
    houses: usize,
    lambda: &BigRational,
    model: ValuationModel,
    seed: u64,
) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let num = lambda.numer().to_u64().expect("validated lambda");
    let den = lambda.denom().to_u64().expect("validated lambda");
    let mut liked = vec![vec![false; houses]; agents];
    for row in liked.iter_mut() {
        for cell in row.iter_mut() {
            // Exact rational probability: no float thresholds.
            *cell = rng.gen_range(0..den) < num;
        }
    }

    let mut values = vec![vec![BigRational::zero(); houses]; agents];
    match model {
        ValuationModel::Binary => {
            for (row, liked_row) in values.iter_mut().zip(&liked) {
                for (cell, &is_liked) in row.iter_mut().zip(liked_row) {
                    if is_liked {
                        *cell = BigRational::one();
                    }
                }
            }
        }
        ValuationModel::Weighted => {
            let agent_deg: Vec<usize> = liked
                .iter()
                .map(|row| row.iter().filter(|&&l| l).count())
                .collect();
            let house_deg: Vec<usize> = (0..houses)
                .map(|h| liked.iter().filter(|row| row[h]).count())
                .collect();
            let max_deg = agent_deg
                .iter()
                .chain(house_deg.iter())
                .copied()
                .max()
                .unwrap_or(0);
            for agent in 0..agents {
                let deg = agent_deg[agent];
                if deg == 0 {
                    continue;
                }
                let mut pool: Vec<usize> = (max_deg - deg + 1..=max_deg).collect();
                pool.shuffle(&mut rng);
                let mut next = pool.into_iter();
                for house in 0..houses {
                    if liked[agent][house] {
                        let v = next.next().expect("pool size equals degree");
                        values[agent][house] = BigRational::from_integer(BigInt::from(v));
                    }
                }
            }
        }
    }
    Instance::new(values).expect("generated values are non-negative")
}

fn solver_metrics(inst: &Instance, alloc: &Allocation) -> SolverMetrics {
    let report = metrics::evaluate(inst, alloc).expect("solver output is valid");
    SolverMetrics {
        num_envious: report.num_envious,
        total_envy: report.total_envy,
        usw: report.usw,
    }
}

fn oracle_complete_cell(
    inst: &Instance,
    objective: Objective,
    budget: u64,
) -> Result<SolverMetrics, String> {
    match oracle::oracle_solve(inst, objective, Constraint::Complete, budget) {
        Ok(OracleOutcome::Solved(result)) => Ok(solver_metrics(inst, &result.witness)),
        Ok(OracleOutcome::Infeasible(reason)) => Err(reason),
        Err(_) => Err("budget-exceeded".to_string()),
    }
}

fn run_trial(
    inst: &Instance,
    model: ValuationModel,
    house_count: usize,
    lambda: &BigRational,
    trial: usize,
    seed: u64,
    budget: u64,
) -> TrialRecord {
    let n = inst.agent_count();
    let m = inst.house_count();
    let mut outcomes = Vec::with_capacity(4);
    for code in SolverCode::ALL {
        let outcome = match code {
            SolverCode::Memw => Ok(solver_metrics(inst, &usw::min_num_envy_max_usw(inst))),
            SolverCode::Mtemw => Ok(solver_metrics(inst, &usw::min_total_envy_max_usw(inst))),
            SolverCode::Mec => {
                if m <= n {
                    Ok(solver_metrics(
                        inst,
                        &usw::min_num_envy_complete(inst).expect("m <= n"),
                    ))
                } else {
                    oracle_complete_cell(inst, Objective::MinNumEnvy, budget)
                }
            }
            SolverCode::Mtec => {
                if m <= n {
                    Ok(solver_metrics(
                        inst,
                        &usw::min_total_envy_complete(inst).expect("m <= n"),
                    ))
                } else {
                    oracle_complete_cell(inst, Objective::MinTotalEnvy, budget)
                }
            }
        };
        outcomes.push((code, outcome));
    }
    TrialRecord {
        model,
        house_count,
        lambda: lambda.clone(),
        trial,
        seed,
        outcomes,
    }
}

/// Runs the full sweep, one record per (house count, λ, trial), in
/// deterministic grid order.
pub fn run_sweep(config: &ExperimentConfig) -> Result<Vec<TrialRecord>, ExperimentError> {
    config.validate()?;
    let mut records = Vec::new();
    for house_count in config.house_counts() {
        for lambda in &config.lambdas {
            for trial in 0..config.trials {
                let seed = derive_trial_seed(
                    config.base_seed,
                    config.model,
                    house_count,
                    lambda,
                    trial,
                );
                let inst = gen_random_instance(
                    config.agent_count,
                    house_count,
                    lambda,
                    config.model,
                    seed,
                );
                records.push(run_trial(
                    &inst,
                    config.model,
                    house_count,
                    lambda,
                    trial,
                    seed,
                    config.oracle_budget,
                ));
            }
        }
    }
    Ok(records)
}

/// Per-cell mean and 95% confidence interval for one solver and metric.
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub model: ValuationModel,
    pub house_count: usize,
    pub lambda: BigRational,
    pub solver: SolverCode,
    pub metric: &'static str,
    /// Exact mean over successful trials; `None` when none succeeded.
    pub mean: Option<BigRational>,
    /// 1.96 · sample standard deviation / √trials; 0 for a single trial.
    pub ci_halfwidth: f64,
    pub trials: usize,
}

pub const SUMMARY_METRICS: [&str; 3] = ["num_envious", "total_envy", "usw"];

fn metric_value(metrics: &SolverMetrics, metric: &str) -> BigRational {
    match metric {
        "num_envious" => BigRational::from_integer(BigInt::from(metrics.num_envious)),
        "total_envy" => metrics.total_envy.clone(),
        "usw" => metrics.usw.clone(),
        other => unreachable!("unknown metric {other}"),
    }
}

/// Summarizes records into per-(cell, solver, metric) rows, in grid order.
pub fn summarize(records: &[TrialRecord]) -> Vec<SummaryRow> {
    let mut cells: Vec<(ValuationModel, usize, BigRational)> = Vec::new();
    for r in records {
        let key = (r.model, r.house_count, r.lambda.clone());
        if !cells.contains(&key) {
            cells.push(key);
        }
    }
    let mut rows = Vec::new();
    for (model, house_count, lambda) in cells {
        for solver in SolverCode::ALL {
            for metric in SUMMARY_METRICS {
                let values: Vec<BigRational> = records
                    .iter()
                    .filter(|r| {
                        r.model == model && r.house_count == house_count && r.lambda == lambda
                    })
                    .filter_map(|r| {
                        r.outcomes
                            .iter()
                            .find(|(code, _)| *code == solver)
                            .and_then(|(_, outcome)| outcome.as_ref().ok())
                    })
                    .map(|m| metric_value(m, metric))
                    .collect();
                let trials = values.len();
                let (mean, ci_halfwidth) = if trials == 0 {
                    (None, 0.0)
                } else {
                    let total: BigRational = values.iter().sum();
                    let mean = total / BigRational::from_integer(BigInt::from(trials));
                    let ci = if trials > 1 {
                        let variance: BigRational = values
                            .iter()
                            .map(|v| {
                                let d = v - &mean;
                                &d * &d
                            })
                            .sum::<BigRational>()
                            / BigRational::from_integer(BigInt::from(trials - 1));
                        let sd = variance.to_f64().unwrap_or(0.0).sqrt();
                        1.96 * sd / (trials as f64).sqrt()
                    } else {
                        0.0
                    };
                    (Some(mean), ci)
                };
                rows.push(SummaryRow {
                    model,
                    house_count,
                    lambda: lambda.clone(),
                    solver,
                    metric,
                    mean,
                    ci_halfwidth,
                    trials,
                });
            }
        }
    }
    rows
}

/// Trial CSV. Numbers render as exact decimals or `p/q`; the status column
/// is `ok` or a failure tag with empty metric fields.
pub fn trials_csv(records: &[TrialRecord]) -> String {
    let mut out = String::from("model,m,lambda,trial,seed,solver,num_envious,total_envy,usw,status\n");
    for r in records {
        for (code, outcome) in &r.outcomes {
            match outcome {
                Ok(m) => {
                    let _ = writeln!(
                        out,
                        "{},{},{},{},{},{},{},{},{},ok",
                        r.model.as_str(),
                        r.house_count,
                        render_rational(&r.lambda),
                        r.trial,
                        r.seed,
                        code.as_str(),
                        m.num_envious,
                        render_rational(&m.total_envy),
                        render_rational(&m.usw),
                    );
                }
                Err(status) => {
                    let _ = writeln!(
                        out,
                        "{},{},{},{},{},{},,,,{}",
                        r.model.as_str(),
                        r.house_count,
                        render_rational(&r.lambda),
                        r.trial,
                        r.seed,
                        code.as_str(),
                        status,
                    );
                }
            }
        }
    }
    out
}

/// Summary CSV over cells, solvers, and metrics.
pub fn summary_csv(rows: &[SummaryRow]) -> String {
    let mut out = String::from("model,m,lambda,solver,metric,mean,ci_halfwidth,trials\n");
    for r in rows {
        let mean = r.mean.as_ref().map(render_rational).unwrap_or_default();
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            r.model.as_str(),
            r.house_count,
            render_rational(&r.lambda),
            r.solver.as_str(),
            r.metric,
            mean,
            r.ci_halfwidth,
            r.trials,
        );
    }
    out
}
