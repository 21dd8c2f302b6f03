//! Structured pass/fail results with counterexample witnesses.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// Informational value, never affects the overall verdict.
    Info,
}

/// The two sides of a failed equality, rendered in scalar text form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub left: String,
    pub right: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub id: String,
    /// Grades the check was evaluated at, e.g. `[p, q]`.
    pub grades: Vec<usize>,
    /// Basis elements (or monomials) the check was evaluated on.
    pub basis: Vec<String>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

/// Per-id tally used by the text renderer.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Tally {
    pub passed: usize,
    pub failed: usize,
    pub info: usize,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records `left == right` as a pass, otherwise a failure carrying both sides.
    pub fn compare<T: PartialEq + fmt::Display>(
        &mut self,
        id: &str,
        grades: &[usize],
        basis: Vec<String>,
        left: &T,
        right: &T,
    ) -> bool {
        if left == right {
            self.pass(id, grades, basis);
            true
        } else {
            self.fail(id, grades, basis, left.to_string(), right.to_string());
            false
        }
    }

    pub fn pass(&mut self, id: &str, grades: &[usize], basis: Vec<String>) {
        self.checks.push(Check {
            id: id.to_string(),
            grades: grades.to_vec(),
            basis,
            verdict: Verdict::Pass,
            witness: None,
            note: None,
        });
    }

    pub fn fail(
        &mut self,
        id: &str,
        grades: &[usize],
        basis: Vec<String>,
        left: impl Into<String>,
        right: impl Into<String>,
    ) {
        self.checks.push(Check {
            id: id.to_string(),
            grades: grades.to_vec(),
            basis,
            verdict: Verdict::Fail,
            witness: Some(Witness {
                left: left.into(),
                right: right.into(),
            }),
            note: None,
        });
    }

    pub fn info(&mut self, id: &str, grades: &[usize], note: impl Into<String>) {
        self.checks.push(Check {
            id: id.to_string(),
            grades: grades.to_vec(),
            basis: Vec::new(),
            verdict: Verdict::Info,
            witness: None,
            note: Some(note.into()),
        });
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    /// Prepends `prefix.` to every check id.
    pub fn prefixed(mut self, prefix: &str) -> Self {
        for c in &mut self.checks {
            c.id = format!("{prefix}.{}", c.id);
        }
        self
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.verdict != Verdict::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.verdict == Verdict::Fail)
    }

    /// Distinct failing ids in sorted order.
    pub fn failed_ids(&self) -> Vec<String> {
        let mut ids: Vec<String> = self.failures().map(|c| c.id.clone()).collect();
        ids.sort();
        ids.dedup();
        ids
    }

    pub fn ids(&self) -> Vec<String> {
        let mut ids: Vec<String> = self.checks.iter().map(|c| c.id.clone()).collect();
        ids.sort();
        ids.dedup();
        ids
    }

    pub fn has_id(&self, id: &str) -> bool {
        self.checks.iter().any(|c| c.id == id)
    }

    pub fn tally(&self) -> BTreeMap<String, Tally> {
        let mut out: BTreeMap<String, Tally> = BTreeMap::new();
        for c in &self.checks {
            let t = out.entry(c.id.clone()).or_default();
            match c.verdict {
                Verdict::Pass => t.passed += 1,
                Verdict::Fail => t.failed += 1,
                Verdict::Info => t.info += 1,
            }
        }
        out
    }

    /// Stable sort into (check-id, grades, basis) order.
    pub fn sort(&mut self) {
        self.checks.sort_by(|a, b| {
            (&a.id, &a.grades, &a.basis).cmp(&(&b.id, &b.grades, &b.basis))
        });
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (id, t) in self.tally() {
            if t.passed + t.failed == 0 {
                writeln!(f, "info  {id}")?;
                continue;
            }
            let status = if t.failed > 0 { "FAIL" } else { "ok" };
            writeln!(f, "{status:>4}  {id}  ({} passed, {} failed)", t.passed, t.failed)?;
        }
        for c in self.failures() {
            let w = c.witness.as_ref().expect("failures carry witnesses");
            writeln!(
                f,
                "  {} grades={:?} at [{}]: {}  !=  {}",
                c.id,
                c.grades,
                c.basis.join(", "),
                w.left,
                w.right
            )?;
        }
        for c in self.checks.iter().filter(|c| c.verdict == Verdict::Info) {
            writeln!(f, "  info {} grades={:?}: {}", c.id, c.grades, c.note.as_deref().unwrap_or(""))?;
        }
        Ok(())
    }
}
