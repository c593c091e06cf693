//! Verifier outcomes.
//!
//! Verifiers never abort on a failed claim; they return one entry per index
//! `p` so that callers see the full failure map.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// Recorded, not asserted.
    ObservedTrue,
    ObservedFalse,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn observed(value: bool) -> Self {
        if value {
            Status::ObservedTrue
        } else {
            Status::ObservedFalse
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::ObservedTrue => "observed-true",
            Status::ObservedFalse => "observed-false",
        }
    }
}

/// Strength of the evidence behind a result. An explicit chain map checked
/// exactly beats a comparison of cohomology dimensions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Evidence {
    DimsMatch,
    Exact,
}

impl Evidence {
    pub fn as_str(self) -> &'static str {
        match self {
            Evidence::Exact => "exact",
            Evidence::DimsMatch => "dims-match",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub p: Option<i64>,
    pub status: Status,
    pub evidence: Evidence,
    #[serde(skip)]
    pub detail: String,
}

impl CheckResult {
    pub fn new(p: Option<i64>, ok: bool, evidence: Evidence, detail: impl Into<String>) -> Self {
        CheckResult { p, status: Status::from_bool(ok), evidence, detail: detail.into() }
    }

    pub fn exact(p: i64, ok: bool, detail: impl Into<String>) -> Self {
        Self::new(Some(p), ok, Evidence::Exact, detail)
    }

    pub fn failed(p: Option<i64>, detail: impl Into<String>) -> Self {
        Self::new(p, false, Evidence::Exact, detail)
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub results: Vec<CheckResult>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>) -> Self {
        CheckReport { name: name.into(), results: Vec::new() }
    }

    pub fn push(&mut self, r: CheckResult) {
        self.results.push(r);
    }

    /// No asserted entry failed. Observational entries never fail a report.
    pub fn passed(&self) -> bool {
        self.results.iter().all(CheckResult::passed)
    }

    pub fn result(&self, p: i64) -> Option<&CheckResult> {
        self.results.iter().find(|r| r.p == Some(p))
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.results.iter().filter(|r| !r.passed())
    }
}
