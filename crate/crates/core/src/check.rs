use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Outcome of a named consistency check, with one line per failure.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    pub failures: Vec<String>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>) -> Self {
        CheckReport { name: name.into(), passed: true, failures: Vec::new() }
    }

    /// Records a failure unless `ok`.
    pub fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.passed = false;
            self.failures.push(what());
        }
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.passed &= other.passed;
        self.failures.extend(other.failures.into_iter().map(|f| format!("{}: {f}", other.name)));
    }

    pub fn into_result(self) -> Result<Self> {
        if self.passed {
            Ok(self)
        } else {
            Err(Error::Check(format!("{}: {}", self.name, self.failures.join("; "))))
        }
    }
}
