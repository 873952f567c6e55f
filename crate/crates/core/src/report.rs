//! Verification reports with a stable JSON layout.

use std::time::Instant;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// Maximum number of witnesses kept per check.
pub const WITNESS_CAP: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub status: Status,
    pub witnesses: Vec<String>,
    pub elapsed_ms: Option<u64>,
}

impl CheckRecord {
    pub fn new(name: impl Into<String>, mut witnesses: Vec<String>) -> Self {
        witnesses.truncate(WITNESS_CAP);
        let status = if witnesses.is_empty() {
            Status::Pass
        } else {
            Status::Fail
        };
        CheckRecord {
            name: name.into(),
            status,
            witnesses,
            elapsed_ms: None,
        }
    }

    pub fn skipped(name: impl Into<String>, reason: impl Into<String>) -> Self {
        CheckRecord {
            name: name.into(),
            status: Status::Skipped,
            witnesses: vec![reason.into()],
            elapsed_ms: None,
        }
    }

    /// True unless the check failed; skipped checks do not count against a run.
    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }

    /// Runs `f`, recording its wall time.
    pub fn timed(name: impl Into<String>, f: impl FnOnce() -> Vec<String>) -> Self {
        let start = Instant::now();
        let mut rec = CheckRecord::new(name, f());
        rec.elapsed_ms = Some(start.elapsed().as_millis() as u64);
        rec
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub config: serde_json::Value,
    pub checks: Vec<CheckRecord>,
}

impl Report {
    pub fn new(mut checks: Vec<CheckRecord>) -> Self {
        checks.sort_by(|a, b| a.name.cmp(&b.name));
        Report {
            tool: "rg-lie".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            config: serde_json::Value::Null,
            checks,
        }
    }

    pub fn with_config(mut self, config: serde_json::Value) -> Self {
        self.config = config;
        self
    }

    pub fn extend(&mut self, more: Vec<CheckRecord>) {
        self.checks.extend(more);
        self.checks.sort_by(|a, b| a.name.cmp(&b.name));
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(CheckRecord::passed)
    }

    /// Drops timing data so that reports of identical runs compare equal.
    pub fn without_timings(mut self) -> Self {
        for c in &mut self.checks {
            c.elapsed_ms = None;
        }
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
