//! Named pass/fail results with the exact integers on both sides of each
//! identity; these drive the report's check table and the exit code.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// Not applicable to this input; the note records why.
    Skip,
    /// Evaluated for information only; never affects the exit code.
    Advisory,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    pub lhs: String,
    pub rhs: String,
    pub note: String,
}

impl Check {
    pub fn equality(name: &str, lhs: i64, rhs: i64) -> Self {
        Check {
            name: name.to_string(),
            status: if lhs == rhs {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            },
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            note: String::new(),
        }
    }

    pub fn boolean(
        name: &str,
        holds: bool,
        lhs: impl Into<String>,
        rhs: impl Into<String>,
    ) -> Self {
        Check {
            name: name.to_string(),
            status: if holds {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            },
            lhs: lhs.into(),
            rhs: rhs.into(),
            note: String::new(),
        }
    }

    pub fn skip(name: &str, reason: impl Into<String>) -> Self {
        Check {
            name: name.to_string(),
            status: CheckStatus::Skip,
            lhs: String::new(),
            rhs: String::new(),
            note: reason.into(),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }

    /// Downgrade a failure to advisory (used on inputs where the
    /// manifold-level theorems carry no guarantee).
    pub fn advisory_on_failure(mut self, reason: &str) -> Self {
        if self.status == CheckStatus::Fail {
            self.status = CheckStatus::Advisory;
            if self.note.is_empty() {
                self.note = reason.to_string();
            } else {
                self.note = format!("{}; {}", self.note, reason);
            }
        }
        self
    }
}

/// True when no check failed (skips and advisories do not count).
pub fn all_pass(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.status != CheckStatus::Fail)
}
