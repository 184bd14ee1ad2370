//! Command-line front end: solve, oracle, experiment, validate.
//!
//! Exit codes: 0 success; 1 input or config error; 2 when an
//! existence-style problem answers "none exists" (or an oracle cell is
//! infeasible); 3 when a problem's precondition fails (e.g. m ≤ n);
//! 4 when the oracle's enumeration budget is exceeded.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num::rational::BigRational;

use fairhouse::experiments::{
    self, ExperimentConfig, SolverCode, TrialRecord, ValuationModel,
};
use fairhouse::format;
use fairhouse::instance::{Allocation, Instance};
use fairhouse::metrics::{self, EnvyReport};
use fairhouse::oracle::{self, Constraint, Objective, OracleOutcome, DEFAULT_BUDGET};
use fairhouse::rational::{parse_rational, render_rational};
use fairhouse::solvers::{ef, esw, usw, SolverError};

const EXIT_OK: u8 = 0;
const EXIT_INPUT: u8 = 1;
const EXIT_NONE: u8 = 2;
const EXIT_PRECONDITION: u8 = 3;
const EXIT_BUDGET: u8 = 4;

#[derive(Parser)]
#[command(
    name = "fairhouse",
    about = "Fair house allocation: envy-minimizing solvers, an exhaustive oracle, and a random-instance experiment harness",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one fairness/efficiency problem on an instance file.
    Solve {
        instance: PathBuf,
        problem: Problem,
        /// Write the allocation to this file (otherwise printed).
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Exhaustive optimum for an (objective, constraint) cell.
    Oracle {
        instance: PathBuf,
        #[arg(long, value_enum)]
        objective: ObjectiveArg,
        #[arg(long, value_enum, default_value_t = ConstraintArg::None)]
        constraint: ConstraintArg,
        /// Size bound for --constraint size.
        #[arg(long)]
        size_k: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Random-instance sweep; writes trial and summary CSVs.
    Experiment {
        /// TOML config file; flags override its fields.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Number of agents.
        #[arg(long)]
        n: Option<usize>,
        /// House-count multipliers, e.g. 1,1.6,2 (exact rationals).
        #[arg(long, value_delimiter = ',')]
        multipliers: Option<Vec<String>>,
        /// Edge densities, e.g. 0.1,0.2,...,1 (exact rationals).
        #[arg(long, value_delimiter = ',')]
        lambdas: Option<Vec<String>>,
        #[arg(long, value_enum)]
        model: Option<ModelArg>,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Oracle budget for complete cells with m > n.
        #[arg(long)]
        budget: Option<u64>,
        /// Directory for trials.csv and summary.csv.
        #[arg(long, default_value = "experiment-out")]
        out: PathBuf,
    },
    /// Recompute metrics for an allocation file against an instance.
    Validate {
        instance: PathBuf,
        allocation: PathBuf,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Problem {
    EfMaxSize,
    EfMaxUsw,
    EfMaxEsw,
    MinEnvyMaxUsw,
    MinTotalEnvyMaxUsw,
    MinEnvyComplete,
    MinTotalEnvyComplete,
    MaxEsw,
}

impl Problem {
    fn as_str(&self) -> &'static str {
        match self {
            Problem::EfMaxSize => "ef-max-size",
            Problem::EfMaxUsw => "ef-max-usw",
            Problem::EfMaxEsw => "ef-max-esw",
            Problem::MinEnvyMaxUsw => "min-envy-max-usw",
            Problem::MinTotalEnvyMaxUsw => "min-total-envy-max-usw",
            Problem::MinEnvyComplete => "min-envy-complete",
            Problem::MinTotalEnvyComplete => "min-total-envy-complete",
            Problem::MaxEsw => "max-esw",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ObjectiveArg {
    MaxSizeEf,
    MinNumEnvy,
    MinTotalEnvy,
    MinimaxTotalEnvy,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConstraintArg {
    None,
    MaxUsw,
    MaxEsw,
    Complete,
    Size,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModelArg {
    Binary,
    Weighted,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Csv,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Help and version requests are not errors.
            if err.use_stderr() {
                eprint!("{err}");
                return ExitCode::from(EXIT_INPUT);
            }
            print!("{err}");
            return ExitCode::from(EXIT_OK);
        }
    };
    let code = match cli.command {
        Command::Solve {
            instance,
            problem,
            out,
            format,
        } => cmd_solve(&instance, problem, out.as_deref(), format),
        Command::Oracle {
            instance,
            objective,
            constraint,
            size_k,
            budget,
            format,
        } => cmd_oracle(&instance, objective, constraint, size_k, budget, format),
        Command::Experiment {
            config,
            n,
            multipliers,
            lambdas,
            model,
            trials,
            seed,
            budget,
            out,
        } => cmd_experiment(ExperimentArgs {
            config,
            n,
            multipliers,
            lambdas,
            model,
            trials,
            seed,
            budget,
            out,
        }),
        Command::Validate {
            instance,
            allocation,
            format,
        } => cmd_validate(&instance, &allocation, format),
    };
    ExitCode::from(code)
}

fn load_instance(path: &Path) -> Result<Instance, u8> {
    let text = fs::read_to_string(path).map_err(|e| {
        eprintln!("error: cannot read {}: {e}", path.display());
        EXIT_INPUT
    })?;
    format::parse_instance(&text).map_err(|e| {
        eprintln!("error: {}: {e}", path.display());
        EXIT_INPUT
    })
}

fn render_report(problem: &str, report: &EnvyReport, format: OutputFormat) -> String {
    match format {
        OutputFormat::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "problem: {problem}");
            let _ = writeln!(out, "size: {}", report.size);
            let _ = writeln!(out, "usw: {}", render_rational(&report.usw));
            let _ = writeln!(
                out,
                "esw: {} (k={})",
                render_rational(&report.esw),
                report.esw_k
            );
            let _ = writeln!(out, "num_envious: {}", report.num_envious);
            let _ = writeln!(out, "total_envy: {}", render_rational(&report.total_envy));
            let _ = writeln!(
                out,
                "max_agent_envy: {}",
                render_rational(&report.max_agent_envy)
            );
            let per_agent: Vec<String> =
                report.per_agent_envy.iter().map(render_rational).collect();
            let _ = writeln!(out, "per_agent_envy: {}", per_agent.join(" "));
            out
        }
        OutputFormat::Csv => {
            let mut out = String::from(
                "problem,size,usw,esw,esw_k,num_envious,total_envy,max_agent_envy\n",
            );
            let _ = writeln!(
                out,
                "{problem},{},{},{},{},{},{},{}",
                report.size,
                render_rational(&report.usw),
                render_rational(&report.esw),
                report.esw_k,
                report.num_envious,
                render_rational(&report.total_envy),
                render_rational(&report.max_agent_envy),
            );
            out
        }
    }
}

fn emit_allocation(
    alloc: &Allocation,
    out: Option<&Path>,
    format: OutputFormat,
) -> Result<(), u8> {
    let text = format::write_allocation(alloc);
    match out {
        Some(path) => fs::write(path, &text).map_err(|e| {
            eprintln!("error: cannot write {}: {e}", path.display());
            EXIT_INPUT
        }),
        None => {
            if format == OutputFormat::Text {
                println!("allocation:");
                print!("{text}");
            }
            Ok(())
        }
    }
}

fn cmd_solve(
    instance_path: &Path,
    problem: Problem,
    out: Option<&Path>,
    format: OutputFormat,
) -> u8 {
    let inst = match load_instance(instance_path) {
        Ok(inst) => inst,
        Err(code) => return code,
    };
    let mut extra = String::new();
    let allocation = match problem {
        Problem::EfMaxSize => {
            let result = ef::max_size_envy_free(&inst);
            let houses: Vec<String> =
                result.deleted_houses.iter().map(usize::to_string).collect();
            let _ = writeln!(extra, "deleted_houses: {}", houses.join(" "));
            result.allocation
        }
        Problem::EfMaxUsw => match ef::max_usw_envy_free(&inst) {
            Some(alloc) => alloc,
            None => {
                println!(
                    "none exists: no envy-free allocation attains the maximum utilitarian welfare"
                );
                return EXIT_NONE;
            }
        },
        Problem::EfMaxEsw => match esw::max_esw_envy_free(&inst) {
            Some(result) => {
                let _ = writeln!(
                    extra,
                    "k: {}\nbeta: {}\nenvy_free_under_original: {}",
                    result.k,
                    render_rational(&result.beta),
                    result.envy_free_under_original
                );
                result.allocation
            }
            None => {
                println!(
                    "none exists: no envy-free allocation attains the maximum egalitarian welfare"
                );
                return EXIT_NONE;
            }
        },
        Problem::MinEnvyMaxUsw => usw::min_num_envy_max_usw(&inst),
        Problem::MinTotalEnvyMaxUsw => usw::min_total_envy_max_usw(&inst),
        Problem::MinEnvyComplete => match usw::min_num_envy_complete(&inst) {
            Ok(alloc) => alloc,
            Err(err @ SolverError::TooManyHouses { .. }) => {
                eprintln!("error: {err}; use `fairhouse oracle --constraint complete`");
                return EXIT_PRECONDITION;
            }
            Err(err) => {
                eprintln!("error: {err}");
                return EXIT_INPUT;
            }
        },
        Problem::MinTotalEnvyComplete => match usw::min_total_envy_complete(&inst) {
            Ok(alloc) => alloc,
            Err(err @ SolverError::TooManyHouses { .. }) => {
                eprintln!("error: {err}; use `fairhouse oracle --constraint complete`");
                return EXIT_PRECONDITION;
            }
            Err(err) => {
                eprintln!("error: {err}");
                return EXIT_INPUT;
            }
        },
        Problem::MaxEsw => {
            let result = esw::max_esw(&inst);
            let _ = writeln!(
                extra,
                "k: {}\nbeta: {}",
                result.k,
                render_rational(&result.beta)
            );
            result.allocation
        }
    };
    let report = metrics::evaluate(&inst, &allocation).expect("solver output is valid");
    print!("{}", render_report(problem.as_str(), &report, format));
    if format == OutputFormat::Text {
        print!("{extra}");
    }
    if emit_allocation(&allocation, out, format).is_err() {
        return EXIT_INPUT;
    }
    EXIT_OK
}

fn cmd_oracle(
    instance_path: &Path,
    objective: ObjectiveArg,
    constraint: ConstraintArg,
    size_k: Option<usize>,
    budget: u64,
    format: OutputFormat,
) -> u8 {
    let inst = match load_instance(instance_path) {
        Ok(inst) => inst,
        Err(code) => return code,
    };
    let objective = match objective {
        ObjectiveArg::MaxSizeEf => Objective::MaxSizeEnvyFree,
        ObjectiveArg::MinNumEnvy => Objective::MinNumEnvy,
        ObjectiveArg::MinTotalEnvy => Objective::MinTotalEnvy,
        ObjectiveArg::MinimaxTotalEnvy => Objective::MinimaxTotalEnvy,
    };
    let constraint = match constraint {
        ConstraintArg::None => Constraint::Unconstrained,
        ConstraintArg::MaxUsw => Constraint::MaxUsw,
        ConstraintArg::MaxEsw => Constraint::MaxEsw,
        ConstraintArg::Complete => Constraint::Complete,
        ConstraintArg::Size => match size_k {
            Some(k) => Constraint::MinSize(k),
            None => {
                eprintln!("error: --constraint size requires --size-k");
                return EXIT_INPUT;
            }
        },
    };
    match oracle::oracle_solve(&inst, objective, constraint, budget) {
        Ok(OracleOutcome::Solved(result)) => {
            match format {
                OutputFormat::Text => {
                    println!("objective: {}", objective.as_str());
                    println!("constraint: {}", constraint.as_str());
                    println!("value: {}", render_rational(&result.value));
                    println!("optima: {}", result.optima_count);
                    println!("candidates: {}", result.candidates);
                    println!("witness:");
                    print!("{}", format::write_allocation(&result.witness));
                }
                OutputFormat::Csv => {
                    println!("objective,constraint,value,optima,candidates");
                    println!(
                        "{},{},{},{},{}",
                        objective.as_str(),
                        constraint.as_str(),
                        render_rational(&result.value),
                        result.optima_count,
                        result.candidates
                    );
                }
            }
            EXIT_OK
        }
        Ok(OracleOutcome::Infeasible(reason)) => {
            println!("infeasible: {reason}");
            EXIT_NONE
        }
        Err(err) => {
            eprintln!("error: {err}");
            EXIT_BUDGET
        }
    }
}

struct ExperimentArgs {
    config: Option<PathBuf>,
    n: Option<usize>,
    multipliers: Option<Vec<String>>,
    lambdas: Option<Vec<String>>,
    model: Option<ModelArg>,
    trials: Option<usize>,
    seed: Option<u64>,
    budget: Option<u64>,
    out: PathBuf,
}

#[derive(serde::Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    agents: Option<usize>,
    multipliers: Option<Vec<toml::Value>>,
    lambdas: Option<Vec<toml::Value>>,
    model: Option<String>,
    trials: Option<usize>,
    seed: Option<u64>,
    budget: Option<u64>,
}

fn parse_grid_value(value: &toml::Value) -> Result<BigRational, String> {
    match value {
        toml::Value::String(s) => parse_rational(s),
        toml::Value::Integer(i) => parse_rational(&i.to_string()),
        other => Err(format!(
            "write `{other}` as a string for exact rational conversion"
        )),
    }
}

fn parse_grid_strings(values: &[String]) -> Result<Vec<BigRational>, String> {
    values.iter().map(|s| parse_rational(s)).collect()
}

fn build_experiment_config(args: &ExperimentArgs) -> Result<ExperimentConfig, String> {
    let mut config = ExperimentConfig::default();
    if let Some(path) = &args.config {
        let text = fs::read_to_string(path)
            .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        let file: ConfigFile = toml::from_str(&text)
            .map_err(|e| format!("cannot parse {}: {e}", path.display()))?;
        if let Some(n) = file.agents {
            config.agent_count = n;
        }
        if let Some(values) = &file.multipliers {
            config.multipliers = values
                .iter()
                .map(parse_grid_value)
                .collect::<Result<_, _>>()?;
        }
        if let Some(values) = &file.lambdas {
            config.lambdas = values
                .iter()
                .map(parse_grid_value)
                .collect::<Result<_, _>>()?;
        }
        if let Some(model) = &file.model {
            config.model = match model.as_str() {
                "binary" => ValuationModel::Binary,
                "weighted" => ValuationModel::Weighted,
                other => return Err(format!("unknown model `{other}`")),
            };
        }
        if let Some(trials) = file.trials {
            config.trials = trials;
        }
        if let Some(seed) = file.seed {
            config.base_seed = seed;
        }
        if let Some(budget) = file.budget {
            config.oracle_budget = budget;
        }
    }
    if let Some(n) = args.n {
        config.agent_count = n;
    }
    if let Some(values) = &args.multipliers {
        config.multipliers = parse_grid_strings(values)?;
    }
    if let Some(values) = &args.lambdas {
        config.lambdas = parse_grid_strings(values)?;
    }
    if let Some(model) = args.model {
        config.model = match model {
            ModelArg::Binary => ValuationModel::Binary,
            ModelArg::Weighted => ValuationModel::Weighted,
        };
    }
    if let Some(trials) = args.trials {
        config.trials = trials;
    }
    if let Some(seed) = args.seed {
        config.base_seed = seed;
    }
    if let Some(budget) = args.budget {
        config.oracle_budget = budget;
    }
    Ok(config)
}

fn cmd_experiment(args: ExperimentArgs) -> u8 {
    let config = match build_experiment_config(&args) {
        Ok(config) => config,
        Err(msg) => {
            eprintln!("error: {msg}");
            return EXIT_INPUT;
        }
    };
    let records: Vec<TrialRecord> = match experiments::run_sweep(&config) {
        Ok(records) => records,
        Err(err) => {
            eprintln!("error: {err}");
            return EXIT_INPUT;
        }
    };
    let summary = experiments::summarize(&records);
    if let Err(e) = fs::create_dir_all(&args.out) {
        eprintln!("error: cannot create {}: {e}", args.out.display());
        return EXIT_INPUT;
    }
    let trials_path = args.out.join("trials.csv");
    let summary_path = args.out.join("summary.csv");
    if let Err(e) = fs::write(&trials_path, experiments::trials_csv(&records)) {
        eprintln!("error: cannot write {}: {e}", trials_path.display());
        return EXIT_INPUT;
    }
    if let Err(e) = fs::write(&summary_path, experiments::summary_csv(&summary)) {
        eprintln!("error: cannot write {}: {e}", summary_path.display());
        return EXIT_INPUT;
    }
    let failures = records
        .iter()
        .flat_map(|r| r.outcomes.iter())
        .filter(|(_, o)| o.is_err())
        .count();
    println!(
        "wrote {} trial rows to {} and {} summary rows to {}",
        records.len() * SolverCode::ALL.len(),
        trials_path.display(),
        summary.len(),
        summary_path.display()
    );
    if failures > 0 {
        println!("{failures} solver cells unavailable (see status column)");
    }
    EXIT_OK
}

fn cmd_validate(instance_path: &Path, allocation_path: &Path, format: OutputFormat) -> u8 {
    let inst = match load_instance(instance_path) {
        Ok(inst) => inst,
        Err(code) => return code,
    };
    let text = match fs::read_to_string(allocation_path) {
        Ok(text) => text,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", allocation_path.display());
            return EXIT_INPUT;
        }
    };
    let alloc = match format::parse_allocation(&text, &inst) {
        Ok(alloc) => alloc,
        Err(e) => {
            eprintln!("error: {}: {e}", allocation_path.display());
            return EXIT_INPUT;
        }
    };
    let report = metrics::evaluate(&inst, &alloc).expect("parse_allocation validated");
    print!("{}", render_report("validate", &report, format));
    if format == OutputFormat::Text {
        println!("complete: {}", metrics::is_complete(&inst, &alloc));
        println!("envy_free: {}", report.is_envy_free());
    }
    EXIT_OK
}
