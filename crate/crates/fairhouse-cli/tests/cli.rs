//! End-to-end tests of the command-line interface and its exit-code
//! protocol.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fairhouse"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

#[test]
fn solve_ef_max_size_reports_the_golden_numbers() {
    let out = run(&["solve", fixture("binary-tradeoff.inst").to_str().unwrap(), "ef-max-size"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("size: 3"), "{text}");
    assert!(text.contains("usw: 0"), "{text}");
    assert!(text.contains("deleted_houses: 0 1"), "{text}");
}

#[test]
fn solve_ef_max_usw_answers_none_with_exit_two() {
    let out = run(&["solve", fixture("binary-tradeoff.inst").to_str().unwrap(), "ef-max-usw"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("none exists"));
}

#[test]
fn solve_min_envy_complete_on_the_dominant_value_instance() {
    let out = run(&[
        "solve",
        fixture("dominant-value.inst").to_str().unwrap(),
        "min-envy-complete",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("num_envious: 1"));
}

#[test]
fn solve_complete_problems_reject_surplus_houses_with_exit_three() {
    let out = run(&[
        "solve",
        fixture("binary-tradeoff.inst").to_str().unwrap(),
        "min-envy-complete",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn solve_min_envy_max_usw_csv_row() {
    let out = run(&[
        "solve",
        fixture("equal-total-envy.inst").to_str().unwrap(),
        "min-envy-max-usw",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("problem,size,usw,esw,esw_k,num_envious,total_envy,max_agent_envy"));
    assert!(text.contains("min-envy-max-usw,3,15,"), "{text}");
}

#[test]
fn solve_writes_allocation_that_validate_agrees_with() {
    let dir = tempfile::tempdir().unwrap();
    let alloc_path = dir.path().join("ties.alloc");
    let solve = run(&[
        "solve",
        fixture("equal-total-envy.inst").to_str().unwrap(),
        "min-total-envy-max-usw",
        "--out",
        alloc_path.to_str().unwrap(),
    ]);
    assert_eq!(solve.status.code(), Some(0));
    let solve_text = stdout(&solve);

    let validate = run(&[
        "validate",
        fixture("equal-total-envy.inst").to_str().unwrap(),
        alloc_path.to_str().unwrap(),
    ]);
    assert_eq!(validate.status.code(), Some(0));
    let validate_text = stdout(&validate);
    for field in ["usw: 15", "total_envy: 5"] {
        assert!(solve_text.contains(field), "{solve_text}");
        assert!(validate_text.contains(field), "{validate_text}");
    }
}

#[test]
fn validate_green_allocation_of_the_binary_tradeoff_instance() {
    let dir = tempfile::tempdir().unwrap();
    let alloc_path = dir.path().join("green.alloc");
    std::fs::write(&alloc_path, "0 -> 0\n1 -> 2\n2 -> 3\n3 -> 4\n").unwrap();
    let out = run(&[
        "validate",
        fixture("binary-tradeoff.inst").to_str().unwrap(),
        alloc_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("num_envious: 1"), "{text}");
    assert!(text.contains("complete: true"), "{text}");
}

#[test]
fn validate_empty_allocation_reports_zeros() {
    let dir = tempfile::tempdir().unwrap();
    let alloc_path = dir.path().join("empty.alloc");
    std::fs::write(&alloc_path, "0 -> -\n1 -> -\n2 -> -\n3 -> -\n").unwrap();
    let out = run(&[
        "validate",
        fixture("binary-tradeoff.inst").to_str().unwrap(),
        alloc_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("num_envious: 0"), "{text}");
    assert!(text.contains("usw: 0"), "{text}");
}

#[test]
fn validate_rejects_duplicate_houses_with_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let alloc_path = dir.path().join("dup.alloc");
    std::fs::write(&alloc_path, "0 -> 1\n1 -> 1\n").unwrap();
    let out = run(&[
        "validate",
        fixture("binary-tradeoff.inst").to_str().unwrap(),
        alloc_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn oracle_reports_min_total_envy_max_usw_on_the_binary_tradeoff_instance() {
    let out = run(&[
        "oracle",
        fixture("binary-tradeoff.inst").to_str().unwrap(),
        "--objective",
        "min-total-envy",
        "--constraint",
        "max-usw",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("value: 2"));
}

#[test]
fn oracle_budget_overrun_exits_four() {
    let out = run(&[
        "oracle",
        fixture("binary-tradeoff.inst").to_str().unwrap(),
        "--objective",
        "min-num-envy",
        "--budget",
        "10",
    ]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn experiment_runs_are_byte_identical_under_a_fixed_seed() {
    let dir = tempfile::tempdir().unwrap();
    let out_a = dir.path().join("a");
    let out_b = dir.path().join("b");
    for out_dir in [&out_a, &out_b] {
        let out = run(&[
            "experiment",
            "--n",
            "3",
            "--multipliers",
            "1",
            "--lambdas",
            "0.5,1",
            "--model",
            "binary",
            "--trials",
            "2",
            "--seed",
            "42",
            "--out",
            out_dir.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    }
    for file in ["trials.csv", "summary.csv"] {
        let a = std::fs::read(out_a.join(file)).unwrap();
        let b = std::fs::read(out_b.join(file)).unwrap();
        assert_eq!(a, b, "{file} differs between identical runs");
    }
    let trials = std::fs::read_to_string(out_a.join("trials.csv")).unwrap();
    // 1 house count × 2 lambdas × 2 trials × 4 solvers + header.
    assert_eq!(trials.lines().count(), 17);
    assert!(trials.starts_with("model,m,lambda,trial,seed,solver,num_envious,total_envy,usw,status"));
}

#[test]
fn experiment_accepts_a_toml_config() {
    let dir = tempfile::tempdir().unwrap();
    let config_path = dir.path().join("exp.toml");
    std::fs::write(
        &config_path,
        "agents = 3\nmultipliers = [\"1\"]\nlambdas = [\"0.4\"]\nmodel = \"weighted\"\ntrials = 2\nseed = 9\n",
    )
    .unwrap();
    let out_dir = dir.path().join("out");
    let out = run(&[
        "experiment",
        "--config",
        config_path.to_str().unwrap(),
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let trials = std::fs::read_to_string(out_dir.join("trials.csv")).unwrap();
    assert_eq!(trials.lines().count(), 9);
    assert!(trials.contains("weighted,3,0.4,"));
}

#[test]
fn missing_instance_file_exits_one() {
    let out = run(&["solve", "no-such-file.inst", "ef-max-size"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn bad_flags_exit_one() {
    let out = run(&["solve"]);
    assert_eq!(out.status.code(), Some(1));
}
