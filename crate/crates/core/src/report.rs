//! Check records and their serialization.  Every command of the
//! verification suite produces a [`Report`]: a list of named checks,
//! each carrying a human-readable claim, a status, and a witness
//! string with the computed evidence.  Reports render either as
//! aligned text or as deterministic JSON (stable field order, stable
//! key order, trailing newline), so downstream tooling can diff runs
//! byte for byte.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Version of the JSON report layout.
pub const SCHEMA_VERSION: u32 = 1;

/// Outcome of a single check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckStatus {
    /// The claim was recomputed here and holds.
    Pass,
    /// The claim was recomputed here and fails.
    Fail,
    /// The claim is carried along as context; this crate does not
    /// re-derive it.
    RecordedAssertion,
}

impl CheckStatus {
    pub fn tag(&self) -> &'static str {
        match self {
            CheckStatus::Pass => "PASS",
            CheckStatus::Fail => "FAIL",
            CheckStatus::RecordedAssertion => "NOTE",
        }
    }
}

/// One named check with its claim and evidence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub claim: String,
    pub status: CheckStatus,
    pub witness: String,
}

/// Aggregated counts over the checks of a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub recorded: usize,
    pub all_passed: bool,
}

/// A full command report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            command: command.into(),
            checks: Vec::new(),
            summary: Summary {
                total: 0,
                passed: 0,
                failed: 0,
                recorded: 0,
                all_passed: true,
            },
        }
    }

    pub fn push(
        &mut self,
        name: impl Into<String>,
        claim: impl Into<String>,
        status: CheckStatus,
        witness: impl Into<String>,
    ) {
        self.checks.push(CheckRecord {
            name: name.into(),
            claim: claim.into(),
            status,
            witness: witness.into(),
        });
        self.refresh_summary();
    }

    /// Record a recomputed claim: `ok` selects pass or fail.
    pub fn check(
        &mut self,
        name: impl Into<String>,
        claim: impl Into<String>,
        ok: bool,
        witness: impl Into<String>,
    ) {
        let status = if ok { CheckStatus::Pass } else { CheckStatus::Fail };
        self.push(name, claim, status, witness);
    }

    /// Record a claim carried along without re-derivation.
    pub fn record(
        &mut self,
        name: impl Into<String>,
        claim: impl Into<String>,
        witness: impl Into<String>,
    ) {
        self.push(name, claim, CheckStatus::RecordedAssertion, witness);
    }

    fn refresh_summary(&mut self) {
        let passed = self
            .checks
            .iter()
            .filter(|c| c.status == CheckStatus::Pass)
            .count();
        let failed = self
            .checks
            .iter()
            .filter(|c| c.status == CheckStatus::Fail)
            .count();
        let recorded = self
            .checks
            .iter()
            .filter(|c| c.status == CheckStatus::RecordedAssertion)
            .count();
        self.summary = Summary {
            total: self.checks.len(),
            passed,
            failed,
            recorded,
            all_passed: failed == 0,
        };
    }

    pub fn has_failures(&self) -> bool {
        self.summary.failed > 0
    }

    /// Append every check of another report, prefixing its names.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for check in other.checks {
            self.checks.push(CheckRecord {
                name: format!("{prefix}/{}", check.name),
                ..check
            });
        }
        self.refresh_summary();
    }

    /// Deterministic JSON rendering with a trailing newline.
    pub fn to_json(&self) -> Result<String> {
        let body = serde_json::to_string_pretty(self)
            .map_err(|e| Error::Verification(format!("report serialization failed: {e}")))?;
        Ok(format!("{body}\n"))
    }

    /// Aligned, human-oriented text rendering.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("report: {}\n", self.command));
        let width = self
            .checks
            .iter()
            .map(|c| c.name.len())
            .max()
            .unwrap_or(0);
        for check in &self.checks {
            out.push_str(&format!(
                "[{:<4}] {:<width$}  {}\n",
                check.status.tag(),
                check.name,
                check.claim,
            ));
            if !check.witness.is_empty() {
                out.push_str(&format!("       {:<width$}  evidence: {}\n", "", check.witness));
            }
        }
        out.push_str(&format!(
            "summary: {} checks, {} passed, {} failed, {} recorded\n",
            self.summary.total, self.summary.passed, self.summary.failed, self.summary.recorded
        ));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut r = Report::new("demo");
        r.check("first", "one equals one", true, "1 == 1");
        r.check("second", "one equals two", false, "1 != 2");
        r.record("third", "background fact", "");
        r
    }

    #[test]
    fn summary_counts_statuses() {
        let r = sample();
        assert_eq!(r.summary.total, 3);
        assert_eq!(r.summary.passed, 1);
        assert_eq!(r.summary.failed, 1);
        assert_eq!(r.summary.recorded, 1);
        assert!(!r.summary.all_passed);
        assert!(r.has_failures());
    }

    #[test]
    fn json_round_trips_and_is_stable() {
        let r = sample();
        let one = r.to_json().unwrap();
        let two = r.to_json().unwrap();
        assert_eq!(one, two);
        assert!(one.ends_with('\n'));
        let back: Report = serde_json::from_str(&one).unwrap();
        assert_eq!(back, r);
        assert!(one.contains("\"recorded-assertion\""));
        assert!(one.contains("\"schema_version\": 1"));
    }

    #[test]
    fn text_rendering_tags_lines() {
        let text = sample().to_text();
        assert!(text.contains("[PASS] first"));
        assert!(text.contains("[FAIL] second"));
        assert!(text.contains("[NOTE] third"));
        assert!(text.contains("summary: 3 checks, 1 passed, 1 failed, 1 recorded"));
    }

    #[test]
    fn absorb_prefixes_names() {
        let mut outer = Report::new("outer");
        outer.absorb("inner", sample());
        assert_eq!(outer.checks[0].name, "inner/first");
        assert_eq!(outer.summary.total, 3);
        assert!(outer.has_failures());
    }
}
