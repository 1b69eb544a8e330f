//! Machine- and human-readable verdict reports.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::geometry::Chart;
use crate::paracontact::StructureVerdict;

/// Bumped whenever the JSON layout changes.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    Solved,
    NotApplicable,
    OutsideHypothesis,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Solved => "solved",
            Status::NotApplicable => "not-applicable",
            Status::OutsideHypothesis => "outside-hypothesis",
        }
    }

    pub fn from_pass(pass: bool) -> Self {
        if pass {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub status: Status,
    pub payload: BTreeMap<String, String>,
}

impl CheckOutcome {
    pub fn new(name: impl Into<String>, status: Status) -> Self {
        CheckOutcome {
            name: name.into(),
            status,
            payload: BTreeMap::new(),
        }
    }

    pub fn with(mut self, key: impl Into<String>, value: impl ToString) -> Self {
        self.payload.insert(key.into(), value.to_string());
        self
    }

    /// Pass/fail outcome carrying the witness of a failed identity.
    pub fn from_verdict(v: &StructureVerdict, chart: &Chart) -> Self {
        let mut out = CheckOutcome::new(&v.axiom, Status::from_pass(v.pass));
        for w in &v.witnesses {
            out = out.with(w.label(chart), &w.residual);
        }
        if let Some(note) = &v.note {
            out = out.with("note", note);
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerdictReport {
    pub version: String,
    pub schema: u32,
    pub fixture: String,
    pub checks: Vec<CheckOutcome>,
}

impl VerdictReport {
    pub fn new(fixture: &str) -> Self {
        VerdictReport {
            version: env!("CARGO_PKG_VERSION").to_string(),
            schema: SCHEMA_VERSION,
            fixture: fixture.to_string(),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, check: CheckOutcome) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: VerdictReport) {
        self.checks.extend(other.checks);
    }

    pub fn failed(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Fail)
    }

    pub fn get(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is plain data")
    }

    /// Aligned plain-text table, one check per block.
    pub fn to_text(&self) -> String {
        let width = self
            .checks
            .iter()
            .map(|c| c.status.as_str().len())
            .max()
            .unwrap_or(0);
        let mut out = format!("fixture: {}\n", self.fixture);
        for c in &self.checks {
            let _ = writeln!(out, "{:width$}  {}", c.status.as_str(), c.name);
            let kw = c
                .payload
                .keys()
                .map(|k| k.chars().count())
                .max()
                .unwrap_or(0);
            for (k, v) in &c.payload {
                let pad = kw - k.chars().count();
                let _ = writeln!(out, "{:width$}    {k}{:pad$} : {v}", "", "");
            }
        }
        out
    }
}
