use std::collections::BTreeMap;
use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::error::Result;

use super::cache::canonical_json;

/// Failing cases kept per check.
const MAX_EXAMPLES: usize = 8;

/// One verified statement: how many cases ran and which failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub tag: String,
    pub cases: u64,
    pub failures: u64,
    pub examples: Vec<String>,
    #[serde(default)]
    pub budget_exceeded: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    pub fn new(tag: impl Into<String>) -> Self {
        Check { tag: tag.into(), cases: 0, failures: 0, examples: Vec::new(), budget_exceeded: false, note: None }
    }

    pub fn record(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.examples.len() < MAX_EXAMPLES {
                self.examples.push(detail());
            }
        }
    }

    /// Records a case that could not be evaluated. Budget errors set
    /// `budget_exceeded`; anything else counts as a failure.
    pub fn record_error(&mut self, e: &crate::error::Error, context: impl FnOnce() -> String) {
        if matches!(e, crate::error::Error::Budget(_)) {
            self.cases += 1;
            self.budget_exceeded = true;
            if self.examples.len() < MAX_EXAMPLES {
                self.examples.push(format!("{}: {e}", context()));
            }
        } else {
            let msg = e.to_string();
            self.record(false, || format!("{}: {msg}", context()));
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.failures == 0 && !self.budget_exceeded && self.cases > 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    /// Parameters after defaults were applied.
    pub params: BTreeMap<String, u64>,
    pub checks: Vec<Check>,
    pub passed: bool,
}

impl SuiteReport {
    pub fn new(suite: &str, seed: u64, params: BTreeMap<String, u64>, checks: Vec<Check>) -> Self {
        let passed = checks.iter().all(Check::passed);
        SuiteReport { suite: suite.to_string(), seed, params, checks, passed }
    }

    pub fn check(&self, tag: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.tag == tag)
    }

    pub fn to_json(&self) -> Result<String> {
        canonical_json(self)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let mut head = vec![format!("seed {}", self.seed)];
        head.extend(self.params.iter().map(|(k, v)| format!("{k}={v}")));
        let _ = writeln!(out, "suite {} ({})", self.suite, head.join(", "));
        for c in &self.checks {
            let status = if c.passed() {
                "PASS"
            } else if c.budget_exceeded {
                "BUDGET"
            } else {
                "FAIL"
            };
            let _ = writeln!(out, "  {status:<6} {:<48} {} cases, {} failures", c.tag, c.cases, c.failures);
            if let Some(n) = &c.note {
                let _ = writeln!(out, "         note: {n}");
            }
            for e in &c.examples {
                let _ = writeln!(out, "         - {e}");
            }
        }
        let _ = writeln!(out, "{}", if self.passed { "all checks passed" } else { "some checks failed" });
        out
    }
}
