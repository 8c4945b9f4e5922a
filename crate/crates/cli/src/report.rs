use std::collections::BTreeMap;
use std::time::Instant;

use gsp4kit::invcalc::ProofRecord;
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA: &str = "1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Emitted for the record only; never affects the overall status.
    Info,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub lhs: String,
    pub rhs: String,
    pub difference: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub suite: String,
    /// The identity or claim being checked, as a formula.
    pub anchor: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data: Option<Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub checks: usize,
    pub passed: usize,
    pub failed: usize,
    pub info: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub suites: Vec<String>,
    pub passed: bool,
    pub summary: Summary,
    pub checks: Vec<Check>,
    /// Wall time in milliseconds per check id; excluded from comparisons.
    pub timing: BTreeMap<String, f64>,
}

impl Report {
    pub fn new(suites: Vec<String>, runs: Vec<SuiteRun>) -> Report {
        let mut checks = Vec::new();
        let mut timing = BTreeMap::new();
        for r in runs {
            for (c, ms) in r.checks {
                timing.insert(c.id.clone(), ms);
                checks.push(c);
            }
        }
        let count = |s: Status| checks.iter().filter(|c| c.status == s).count();
        let summary = Summary {
            checks: checks.len(),
            passed: count(Status::Pass),
            failed: count(Status::Fail),
            info: count(Status::Info),
        };
        Report { schema: SCHEMA.into(), suites, passed: summary.failed == 0, summary, checks, timing }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn check(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    /// JSON with the timing section emptied.
    pub fn to_json_untimed(&self) -> String {
        let mut r = self.clone();
        r.timing.clear();
        serde_json::to_string_pretty(&r).expect("report serializes")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Collects the checks of one suite with their timings.
pub struct SuiteRun {
    pub suite: &'static str,
    pub checks: Vec<(Check, f64)>,
}

impl SuiteRun {
    pub fn new(suite: &'static str) -> Self {
        SuiteRun { suite, checks: Vec::new() }
    }

    fn push(&mut self, id: &str, anchor: &str, status: Status, witness: Option<Witness>, data: Option<Value>, ms: f64) {
        let check = Check {
            id: format!("{}/{}", self.suite, id),
            suite: self.suite.into(),
            anchor: anchor.into(),
            status,
            witness,
            data,
        };
        self.checks.push((check, ms));
    }

    /// Runs `f`; a kernel error becomes a failed check carrying the message.
    pub fn run<F>(&mut self, id: &str, anchor: &str, f: F)
    where
        F: FnOnce() -> gsp4kit::Result<Outcome>,
    {
        let t = Instant::now();
        let out = f();
        let ms = t.elapsed().as_secs_f64() * 1e3;
        match out {
            Ok(o) => self.push(id, anchor, o.status, o.witness, o.data, ms),
            Err(e) => self.push(
                id,
                anchor,
                Status::Fail,
                Some(Witness { lhs: String::new(), rhs: String::new(), difference: format!("error: {e}") }),
                None,
                ms,
            ),
        }
    }
}

/// Result of one check.
pub struct Outcome {
    pub status: Status,
    pub witness: Option<Witness>,
    pub data: Option<Value>,
}

impl Outcome {
    pub fn pass_if(ok: bool) -> Self {
        Outcome { status: if ok { Status::Pass } else { Status::Fail }, witness: None, data: None }
    }

    /// `lhs = rhs`, with the difference shown.
    pub fn equal(ok: bool, lhs: impl ToString, rhs: impl ToString, difference: impl ToString) -> Self {
        Outcome {
            witness: Some(Witness { lhs: lhs.to_string(), rhs: rhs.to_string(), difference: difference.to_string() }),
            ..Self::pass_if(ok)
        }
    }

    pub fn proof(r: &ProofRecord) -> Self {
        Self::equal(r.holds, &r.lhs, &r.rhs, &r.difference)
    }

    pub fn info(data: Value) -> Self {
        Outcome { status: Status::Info, witness: None, data: Some(data) }
    }

    pub fn with_data(mut self, data: Value) -> Self {
        self.data = Some(data);
        self
    }
}
