//! Structured outcomes of the verifiers.
//!
//! Theorems and properties are hard checks; a conjecture that fails is a
//! finding, never an error.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClaimKind {
    Theorem,
    Conjecture,
    Property,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Pass,
    Fail,
    Counterexample,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Counterexample => "COUNTEREXAMPLE",
        })
    }
}

/// One checked claim. A non-passing finding always carries a witness.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Finding {
    pub claim: String,
    pub kind: ClaimKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    pub verdict: Verdict,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Finding {
    pub fn pass(claim: &str, kind: ClaimKind, k: Option<u32>, detail: impl Into<String>) -> Self {
        Finding { claim: claim.into(), kind, k, verdict: Verdict::Pass, detail: detail.into(), witness: None }
    }

    /// A failed theorem or property is `FAIL`; a failed conjecture is a
    /// `COUNTEREXAMPLE`.
    pub fn fail(claim: &str, kind: ClaimKind, k: Option<u32>, detail: impl Into<String>, witness: impl Into<String>) -> Self {
        let verdict = if kind == ClaimKind::Conjecture { Verdict::Counterexample } else { Verdict::Fail };
        Finding { claim: claim.into(), kind, k, verdict, detail: detail.into(), witness: Some(witness.into()) }
    }

    /// `pass` when `witness` is `None`, otherwise `fail`.
    pub fn from_witness(
        claim: &str,
        kind: ClaimKind,
        k: Option<u32>,
        detail: impl Into<String>,
        witness: Option<String>,
    ) -> Self {
        match witness {
            None => Finding::pass(claim, kind, k, detail),
            Some(w) => Finding::fail(claim, kind, k, detail, w),
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// True for a non-passing theorem or property.
    pub fn is_hard_failure(&self) -> bool {
        !self.passed() && self.kind != ClaimKind::Conjecture
    }
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            ClaimKind::Theorem => "theorem",
            ClaimKind::Conjecture => "conjecture",
            ClaimKind::Property => "property",
        };
        let k = self.k.map(|k| format!(" k={k}")).unwrap_or_default();
        write!(f, "{:<14} {:<10} {}{}: {}", self.verdict.to_string(), kind, self.claim, k, self.detail)?;
        if let Some(w) = &self.witness {
            write!(f, " [witness: {w}]")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub findings: Vec<Finding>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, f: Finding) {
        self.findings.push(f);
    }

    pub fn extend(&mut self, other: Report) {
        self.findings.extend(other.findings);
    }

    pub fn hard_failures(&self) -> impl Iterator<Item = &Finding> {
        self.findings.iter().filter(|f| f.is_hard_failure())
    }

    pub fn all_hard_checks_pass(&self) -> bool {
        self.hard_failures().next().is_none()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for finding in &self.findings {
            writeln!(f, "{finding}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conjecture_failures_are_soft() {
        let c = Finding::fail("c", ClaimKind::Conjecture, Some(3), "x", "w");
        assert_eq!(c.verdict, Verdict::Counterexample);
        assert!(!c.is_hard_failure());
        let t = Finding::fail("t", ClaimKind::Theorem, None, "x", "w");
        assert_eq!(t.verdict, Verdict::Fail);
        let mut r = Report::new();
        r.push(c);
        assert!(r.all_hard_checks_pass());
        r.push(t);
        assert!(!r.all_hard_checks_pass());
    }

    #[test]
    fn serializes_verdicts_in_caps() {
        let f = Finding::pass("p", ClaimKind::Property, Some(3), "ok");
        let json = serde_json::to_string(&f).unwrap();
        assert!(json.contains("\"PASS\""));
        assert!(json.contains("\"property\""));
        assert!(!json.contains("witness"));
    }
}
