//! Verification reports: one JSON object per check.

use std::fmt;

use serde::Serialize;
use serde_json::{json, Value};

use crate::element::{Element, Key, Tensor};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "pass")]
    Pass,
    #[serde(rename = "fail")]
    Fail,
    #[serde(rename = "sampled-pass")]
    SampledPass,
    #[serde(rename = "skipped")]
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::SampledPass => "sampled-pass",
            Status::Skipped => "skipped",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub check: String,
    pub instances: Vec<String>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }

    pub fn skipped(check: &str, instances: &[String], why: &str) -> Self {
        CheckResult {
            check: check.into(),
            instances: instances.to_vec(),
            status: Status::Skipped,
            witness: None,
            detail: Some(json!(why)),
            elapsed_ms: None,
        }
    }

    /// One JSON line with the report position as `index`.
    pub fn json_line(&self, index: usize) -> String {
        let mut v = serde_json::to_value(self).expect("serializable");
        if let Value::Object(m) = &mut v {
            m.insert("index".into(), json!(index));
        }
        serde_json::to_string(&v).expect("serializable")
    }

    pub fn with_detail(mut self, detail: Value) -> Self {
        self.detail = Some(detail);
        self
    }
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub entries: Vec<CheckResult>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, r: CheckResult) {
        self.entries.push(r);
    }

    pub fn extend(&mut self, other: Report) {
        self.entries.extend(other.entries);
    }

    pub fn all_passed(&self) -> bool {
        self.entries.iter().all(CheckResult::passed)
    }

    pub fn failures(&self) -> Vec<&CheckResult> {
        self.entries.iter().filter(|e| !e.passed()).collect()
    }

    pub fn get(&self, check: &str) -> Option<&CheckResult> {
        self.entries.iter().find(|e| e.check == check)
    }

    /// JSON lines with a stable `index` field.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for (i, e) in self.entries.iter().enumerate() {
            out.push_str(&e.json_line(i));
            out.push('\n');
        }
        out
    }
}

impl FromIterator<CheckResult> for Report {
    fn from_iter<I: IntoIterator<Item = CheckResult>>(iter: I) -> Self {
        Report { entries: iter.into_iter().collect() }
    }
}

/// Accumulates one named identity check; keeps the first failure.
pub struct Check {
    name: String,
    instances: Vec<String>,
    sampled: bool,
    failure: Option<Value>,
    cases: usize,
    detail: Option<Value>,
}

impl Check {
    pub fn new(name: &str, instances: &[String], sampled: bool) -> Self {
        Check { name: name.into(), instances: instances.to_vec(), sampled, failure: None, cases: 0, detail: None }
    }

    /// Records one case; `witness` is only built on the first failure.
    pub fn case<W: FnOnce() -> Value>(&mut self, ok: bool, witness: W) -> bool {
        self.cases += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(witness());
        }
        ok
    }

    pub fn failed(&self) -> bool {
        self.failure.is_some()
    }

    pub fn detail(&mut self, d: Value) {
        self.detail = Some(d);
    }

    pub fn finish(self) -> CheckResult {
        let status = if self.failure.is_some() {
            Status::Fail
        } else if self.sampled {
            Status::SampledPass
        } else {
            Status::Pass
        };
        let mut detail = self.detail.unwrap_or_else(|| json!({}));
        if let Value::Object(m) = &mut detail {
            m.insert("cases".into(), json!(self.cases));
        }
        CheckResult {
            check: self.name,
            instances: self.instances,
            status,
            witness: self.failure,
            detail: Some(detail),
            elapsed_ms: None,
        }
    }
}

/// Witness helpers.
pub fn wkey(k: &Key) -> Value {
    Value::String(k.to_string())
}

pub fn wel(e: &Element) -> Value {
    json!({"domain": e.domain().name(), "terms": e.to_json()})
}

pub fn wten(t: &Tensor) -> Value {
    json!({"legs": t.legs().iter().map(|d| d.name().to_string()).collect::<Vec<_>>(), "terms": t.to_json()})
}

/// A single pass/fail entry from a boolean.
pub fn verdict(name: &str, instances: &[String], ok: bool, sampled: bool, detail: Value) -> CheckResult {
    let mut c = Check::new(name, instances, sampled);
    c.case(ok, || detail.clone());
    c.detail(detail);
    c.finish()
}
