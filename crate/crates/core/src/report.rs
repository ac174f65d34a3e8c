//! Validation reports shared by sequences and schemes.

use serde::{Deserialize, Serialize};

/// How strongly a fact has been established.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "level", rename_all = "snake_case")]
pub enum Evidence {
    /// Holds for every index, by the structure of the expression.
    Proved,
    /// Holds on the window `[-window, window]`; nothing is claimed beyond it.
    WindowChecked { window: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub evidence: Evidence,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub check: String,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub at: Option<i64>,
}

/// Outcome of a window validation. A failing report is a value, not an error.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub window: u64,
    pub checks: Vec<Check>,
    pub violations: Vec<Violation>,
    /// Set when a scheme carries no fixed-set enumerator, so its complement
    /// cannot be consumed as a reservoir.
    #[serde(default)]
    pub complement_opaque: bool,
}

impl ValidationReport {
    pub fn new(window: u64) -> Self {
        ValidationReport {
            window,
            ..Default::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn record(&mut self, name: impl Into<String>, evidence: Evidence) {
        self.checks.push(Check {
            name: name.into(),
            evidence,
        });
    }

    pub fn violate(&mut self, check: &str, detail: impl Into<String>, at: Option<i64>) {
        self.violations.push(Violation {
            check: check.to_string(),
            detail: detail.into(),
            at,
        });
    }

    /// Folds another report's checks and violations into this one, prefixing
    /// their names with `scope`.
    pub fn absorb(&mut self, scope: &str, other: ValidationReport) {
        for c in other.checks {
            self.checks.push(Check {
                name: format!("{scope}.{}", c.name),
                evidence: c.evidence,
            });
        }
        for v in other.violations {
            self.violations.push(Violation {
                check: format!("{scope}.{}", v.check),
                ..v
            });
        }
    }
}
