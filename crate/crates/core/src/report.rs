use serde::Serialize;

/// Pass/fail outcome for a single verified clause.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub clause: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// Ordered list of clause outcomes. Failures are entries, never errors.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Report {
        Report::default()
    }

    pub fn push(&mut self, clause: impl Into<String>, passed: bool) {
        self.checks.push(Check {
            clause: clause.into(),
            passed,
            detail: None,
        });
    }

    pub fn push_detail(&mut self, clause: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            clause: clause.into(),
            passed,
            detail: Some(detail.into()),
        });
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn passed(&self, clause: &str) -> Option<bool> {
        self.checks
            .iter()
            .find(|c| c.clause == clause)
            .map(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.clause.as_str())
            .collect()
    }
}
