//! Outcome of a sample-based identity check.

use serde::{Deserialize, Serialize};

/// Checks stop collecting after this many witnesses.
pub const WITNESS_LIMIT: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub label: String,
    pub residual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    /// Number of instances evaluated.
    pub checked: usize,
    /// False when evaluation stopped early after reaching the witness limit.
    pub exhaustive: bool,
    pub witnesses: Vec<Witness>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>) -> Self {
        CheckReport {
            name: name.into(),
            checked: 0,
            exhaustive: true,
            witnesses: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.witnesses.is_empty()
    }

    /// Records one instance. Returns false once the witness limit is hit,
    /// signalling the caller to stop.
    pub fn record(&mut self, ok: bool, label: impl FnOnce() -> String, residual: impl FnOnce() -> String) -> bool {
        self.checked += 1;
        if !ok {
            if self.witnesses.len() < WITNESS_LIMIT {
                self.witnesses.push(Witness {
                    label: label(),
                    residual: residual(),
                });
            }
            if self.witnesses.len() >= WITNESS_LIMIT {
                self.exhaustive = false;
                return false;
            }
        }
        true
    }

    pub fn note(mut self, s: impl Into<String>) -> Self {
        self.notes.push(s.into());
        self
    }

    /// Marks the check as stopped early if the caller broke out of its loop.
    pub fn finish(mut self, completed: bool) -> Self {
        if !completed {
            self.exhaustive = false;
        }
        self
    }
}
