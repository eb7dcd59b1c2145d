//! The JSON report. Field order is fixed and nothing time-dependent is
//! recorded, so equal seeds and flags give byte-identical files.

use heegaard_core::report::{Check, Status};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckEntry {
    pub id: String,
    pub status: String,
    pub residual: String,
    pub detail: String,
}

impl From<&Check> for CheckEntry {
    fn from(c: &Check) -> Self {
        CheckEntry {
            id: c.id.clone(),
            status: c.status.as_str().to_string(),
            residual: c.residual.clone(),
            detail: c.detail.clone(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub known_discrepancy: usize,
    pub info: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    /// Arguments as given, minus the `--json` destination.
    pub command: Vec<String>,
    pub seed: u64,
    pub result: serde_json::Value,
    pub checks: Vec<CheckEntry>,
    pub summary: Summary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub exit_code: i32,
}

pub fn summarize(checks: &[Check]) -> Summary {
    let mut s = Summary::default();
    for c in checks {
        match c.status {
            Status::Pass => s.pass += 1,
            Status::Fail => s.fail += 1,
            Status::KnownDiscrepancy => s.known_discrepancy += 1,
            Status::Info => s.info += 1,
        }
    }
    s
}

/// `0` unless some check failed outright.
pub fn exit_code(checks: &[Check]) -> i32 {
    i32::from(checks.iter().any(Check::is_fatal))
}

/// Drops `--json PATH` / `--json=PATH` from an argument list.
pub fn echo_command(args: &[String]) -> Vec<String> {
    let mut out = Vec::new();
    let mut skip = false;
    for a in args {
        if skip {
            skip = false;
        } else if a == "--json" {
            skip = true;
        } else if !a.starts_with("--json=") {
            out.push(a.clone());
        }
    }
    out
}

pub fn human_line(c: &Check) -> String {
    let mut s = format!("{:<17} {}", c.status.as_str(), c.id);
    if c.residual != "0" {
        s.push_str(&format!("  residual: {}", c.residual));
    }
    if !c.detail.is_empty() {
        s.push_str(&format!("  ({})", c.detail));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn echo_drops_json_destination() {
        let args: Vec<String> = ["--json", "x.json", "ktheory", "--json=y", "--N", "3"].map(String::from).into();
        assert_eq!(echo_command(&args), ["ktheory", "--N", "3"]);
    }

    #[test]
    fn exit_code_ignores_known_discrepancies() {
        let checks = [Check::new("a", Status::KnownDiscrepancy, "r", ""), Check::new("b", Status::Info, "0", "")];
        assert_eq!(exit_code(&checks), 0);
        assert_eq!(exit_code(&[Check::new("c", Status::Fail, "r", "")]), 1);
    }
}
