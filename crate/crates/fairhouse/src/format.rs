//! Text formats for instances and allocations.
//!
//! Instance files are line oriented:
//!
//! ```text
//! agents 4
//! houses 5
//! values
//! 1 1 0 0 0
//! 0 1 0 0 0
//! 1 0 0 0 0
//! 0 1 0 0 0
//! agent_labels a1 a2 a3 a4
//! house_labels h1 h2 h3 h4 h5
//! ```
//!
//! Values may be integers, `p/q` fractions, or decimals (converted exactly).
//! Blank lines and `#` comments are ignored. Label lines are optional.
//!
//! Allocation files hold one line per agent, `agent -> house` with `-` for
//! unassigned, using zero-based indices.

use std::fmt::Write as _;

use thiserror::Error;

use crate::instance::{Allocation, AllocationError, Instance, ValidationError};
use crate::rational::{parse_rational, render_rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("invalid instance: {0}")]
    Validation(#[from] ValidationError),
    #[error("invalid allocation: {0}")]
    Allocation(#[from] AllocationError),
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        message: message.into(),
    }
}

/// Lines that carry content, with their 1-based positions.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(idx, line)| (idx + 1, line.trim()))
        .filter(|(_, line)| !line.is_empty() && !line.starts_with('#'))
}

/// Parses the instance text format.
pub fn parse_instance(text: &str) -> Result<Instance, FormatError> {
    let mut agents: Option<usize> = None;
    let mut houses: Option<usize> = None;
    let mut rows: Vec<Vec<num::BigRational>> = Vec::new();
    let mut agent_labels: Option<Vec<String>> = None;
    let mut house_labels: Option<Vec<String>> = None;

    let mut lines = content_lines(text).peekable();
    while let Some((lineno, line)) = lines.next() {
        let (key, rest) = match line.split_once(char::is_whitespace) {
            Some((k, r)) => (k, r.trim()),
            None => (line, ""),
        };
        match key {
            "agents" => {
                if agents.is_some() {
                    return Err(syntax(lineno, "duplicate `agents` field"));
                }
                let n: usize = rest
                    .parse()
                    .map_err(|_| syntax(lineno, format!("invalid agent count `{rest}`")))?;
                if n == 0 {
                    return Err(FormatError::Validation(ValidationError::NoAgents));
                }
                agents = Some(n);
            }
            "houses" => {
                if houses.is_some() {
                    return Err(syntax(lineno, "duplicate `houses` field"));
                }
                let m: usize = rest
                    .parse()
                    .map_err(|_| syntax(lineno, format!("invalid house count `{rest}`")))?;
                if m == 0 {
                    return Err(FormatError::Validation(ValidationError::NoHouses));
                }
                houses = Some(m);
            }
            "values" => {
                if !rest.is_empty() {
                    return Err(syntax(lineno, "`values` takes no inline data"));
                }
                let n =
                    agents.ok_or_else(|| syntax(lineno, "`agents` must precede `values`"))?;
                let m =
                    houses.ok_or_else(|| syntax(lineno, "`houses` must precede `values`"))?;
                for row_idx in 0..n {
                    let (row_line, row_text) = lines.next().ok_or_else(|| {
                        syntax(lineno, format!("expected {n} value rows, found {row_idx}"))
                    })?;
                    let mut row = Vec::with_capacity(m);
                    for (field, tok) in row_text.split_whitespace().enumerate() {
                        let v = parse_rational(tok).map_err(|e| {
                            syntax(row_line, format!("value field {}: {e}", field + 1))
                        })?;
                        row.push(v);
                    }
                    if row.len() != m {
                        return Err(syntax(
                            row_line,
                            format!("expected {m} values in row, got {}", row.len()),
                        ));
                    }
                    rows.push(row);
                }
            }
            "agent_labels" => {
                agent_labels = Some(rest.split_whitespace().map(str::to_string).collect());
            }
            "house_labels" => {
                house_labels = Some(rest.split_whitespace().map(str::to_string).collect());
            }
            other => {
                return Err(syntax(lineno, format!("unknown field `{other}`")));
            }
        }
    }

    let n = agents.ok_or_else(|| syntax(0, "missing `agents` field"))?;
    houses.ok_or_else(|| syntax(0, "missing `houses` field"))?;
    if rows.len() != n {
        return Err(syntax(
            0,
            format!("missing `values` section ({} of {n} rows)", rows.len()),
        ));
    }
    let mut inst = Instance::new(rows)?;
    if let Some(labels) = agent_labels {
        inst.set_agent_labels(labels)?;
    }
    if let Some(labels) = house_labels {
        inst.set_house_labels(labels)?;
    }
    Ok(inst)
}

/// Writes an instance in the text format; `parse_instance` round-trips it.
pub fn write_instance(inst: &Instance) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "agents {}", inst.agent_count());
    let _ = writeln!(out, "houses {}", inst.house_count());
    out.push_str("values\n");
    for agent in 0..inst.agent_count() {
        let row: Vec<String> = inst
            .agent_values(agent)
            .iter()
            .map(render_rational)
            .collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    if let Some(labels) = inst.agent_labels() {
        let _ = writeln!(out, "agent_labels {}", labels.join(" "));
    }
    if let Some(labels) = inst.house_labels() {
        let _ = writeln!(out, "house_labels {}", labels.join(" "));
    }
    out
}

/// Parses an allocation file against an instance.
pub fn parse_allocation(text: &str, inst: &Instance) -> Result<Allocation, FormatError> {
    let mut slots = vec![None; inst.agent_count()];
    let mut seen = vec![false; inst.agent_count()];
    for (lineno, line) in content_lines(text) {
        let (agent_text, house_text) = line
            .split_once("->")
            .ok_or_else(|| syntax(lineno, "expected `agent -> house`"))?;
        let agent: usize = agent_text
            .trim()
            .parse()
            .map_err(|_| syntax(lineno, format!("invalid agent index `{}`", agent_text.trim())))?;
        if agent >= inst.agent_count() {
            return Err(syntax(
                lineno,
                format!(
                    "agent index {agent} out of range (instance has {} agents)",
                    inst.agent_count()
                ),
            ));
        }
        if seen[agent] {
            return Err(syntax(lineno, format!("agent {agent} listed twice")));
        }
        seen[agent] = true;
        let house_text = house_text.trim();
        if house_text != "-" {
            let house: usize = house_text
                .parse()
                .map_err(|_| syntax(lineno, format!("invalid house index `{house_text}`")))?;
            slots[agent] = Some(house);
        }
    }
    let alloc = Allocation::new(slots)?;
    alloc.check_against(inst)?;
    Ok(alloc)
}

/// Writes an allocation, one `agent -> house` line per agent.
pub fn write_allocation(alloc: &Allocation) -> String {
    let mut out = String::new();
    for agent in 0..alloc.agent_count() {
        match alloc.house_of(agent) {
            Some(h) => {
                let _ = writeln!(out, "{agent} -> {h}");
            }
            None => {
                let _ = writeln!(out, "{agent} -> -");
            }
        }
    }
    out
}
