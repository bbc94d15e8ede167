//! Three-valued outcomes shared by the decision procedures.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Outcome {
    Holds,
    Fails,
    Unknown,
}

/// An outcome plus the reason that produced it. `evidence` carries a
/// human-checkable witness or counterexample when one exists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub outcome: Outcome,
    pub reason: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub evidence: Option<String>,
}

impl Verdict {
    pub fn holds(reason: impl Into<String>) -> Self {
        Self { outcome: Outcome::Holds, reason: reason.into(), evidence: None }
    }

    pub fn fails(reason: impl Into<String>, counterexample: impl Into<String>) -> Self {
        Self { outcome: Outcome::Fails, reason: reason.into(), evidence: Some(counterexample.into()) }
    }

    pub fn unknown(reason: impl Into<String>) -> Self {
        Self { outcome: Outcome::Unknown, reason: reason.into(), evidence: None }
    }

    pub fn with_evidence(mut self, evidence: impl Into<String>) -> Self {
        self.evidence = Some(evidence.into());
        self
    }

    pub fn is_holds(&self) -> bool {
        self.outcome == Outcome::Holds
    }

    pub fn is_fails(&self) -> bool {
        self.outcome == Outcome::Fails
    }
}
