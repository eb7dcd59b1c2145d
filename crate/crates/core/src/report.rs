//! Outcome records produced by the verification suites.

use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Status {
    Pass,
    Fail,
    /// A failure of a deliberately kept variant formula; expected,
    /// reported, not fatal.
    KnownDiscrepancy,
    /// Informational; never fatal.
    Info,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::KnownDiscrepancy => "known-discrepancy",
            Status::Info => "info",
        }
    }

    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One verified (or refuted) statement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub id: String,
    pub status: Status,
    /// Printed normal form of the residual (`0` when the identity holds).
    pub residual: String,
    /// Free-form detail such as the number of cases covered.
    pub detail: String,
}

impl Check {
    pub fn new(id: impl Into<String>, status: Status, residual: impl Into<String>, detail: impl Into<String>) -> Self {
        Check { id: id.into(), status, residual: residual.into(), detail: detail.into() }
    }

    /// Pass iff `residual` prints as `0`.
    pub fn zero(id: impl Into<String>, residual: impl fmt::Display, detail: impl Into<String>) -> Self {
        let r = residual.to_string();
        Check::new(id, Status::from_bool(r == "0"), r, detail)
    }

    pub fn is_fatal(&self) -> bool {
        self.status == Status::Fail
    }
}

/// Accumulates many cases of one identity into a single check that keeps the
/// first non-zero residual.
#[derive(Debug)]
pub struct CaseTally {
    id: String,
    cases: usize,
    failure: Option<(String, String)>,
}

impl CaseTally {
    pub fn new(id: impl Into<String>) -> Self {
        CaseTally { id: id.into(), cases: 0, failure: None }
    }

    pub fn record(&mut self, case: impl FnOnce() -> String, residual: impl fmt::Display) {
        self.cases += 1;
        if self.failure.is_none() {
            let r = residual.to_string();
            if r != "0" {
                self.failure = Some((case(), r));
            }
        }
    }

    pub fn record_bool(&mut self, case: impl FnOnce() -> String, ok: bool) {
        self.record(case, if ok { "0" } else { "mismatch" });
    }

    pub fn finish(self) -> Check {
        match self.failure {
            None => Check::new(self.id, Status::Pass, "0", format!("{} cases", self.cases)),
            Some((case, r)) => {
                Check::new(self.id, Status::Fail, r, format!("first failure at {case}; {} cases", self.cases))
            }
        }
    }
}
