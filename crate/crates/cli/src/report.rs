use std::fmt::Write as _;

use gcq_core::report::{Check, Verdict, VerificationReport, Witness};
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

impl InputDigest {
    pub fn of(path: &str, bytes: &[u8]) -> Self {
        InputDigest {
            path: path.to_string(),
            sha256: hex::encode(Sha256::digest(bytes)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckEntry {
    pub id: String,
    /// Grades and basis elements the check was evaluated on.
    pub subject: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl From<&Check> for CheckEntry {
    fn from(c: &Check) -> Self {
        let grades: Vec<String> = c.grades.iter().map(usize::to_string).collect();
        let mut subject = format!("grades ({})", grades.join(","));
        if !c.basis.is_empty() {
            let _ = write!(subject, " at {}", c.basis.join(", "));
        }
        CheckEntry {
            id: c.id.clone(),
            subject,
            verdict: c.verdict,
            witness: c.witness.clone(),
            note: c.note.clone(),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub info: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Overall {
    Pass,
    Fail,
}

/// Deterministic output of one command: identical inputs give identical bytes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportDocument {
    pub tool: String,
    pub version: String,
    pub schema: u32,
    pub command: String,
    pub inputs: Vec<InputDigest>,
    pub checks: Vec<CheckEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<Value>,
    pub summary: Summary,
    pub verdict: Overall,
    #[serde(skip)]
    report: VerificationReport,
}

impl ReportDocument {
    pub fn new(command: &str, inputs: Vec<InputDigest>, report: VerificationReport) -> Self {
        let mut summary = Summary::default();
        for c in &report.checks {
            match c.verdict {
                Verdict::Pass => summary.passed += 1,
                Verdict::Fail => summary.failed += 1,
                Verdict::Info => summary.info += 1,
            }
        }
        ReportDocument {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            schema: SCHEMA_VERSION,
            command: command.to_string(),
            inputs,
            checks: report.checks.iter().map(CheckEntry::from).collect(),
            output: None,
            summary,
            verdict: if summary.failed == 0 { Overall::Pass } else { Overall::Fail },
            report,
        }
    }

    pub fn with_output(mut self, output: Value) -> Self {
        self.output = Some(output);
        self
    }

    pub fn report(&self) -> &VerificationReport {
        &self.report
    }

    pub fn passed(&self) -> bool {
        self.verdict == Overall::Pass
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable report");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {} {}\n", self.tool, self.version, self.command);
        for i in &self.inputs {
            let _ = writeln!(s, "input {} sha256={}", i.path, i.sha256);
        }
        s.push_str(&self.report.to_string());
        if let Some(out) = &self.output {
            let _ = writeln!(s, "output {out}");
        }
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        let Summary { passed, failed, info } = self.summary;
        let _ = writeln!(s, "verdict {verdict} ({passed} passed, {failed} failed, {info} info)");
        s
    }
}
