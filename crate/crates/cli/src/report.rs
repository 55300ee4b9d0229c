//! Report entries and their JSON and text renderings.

use algebroid_core::report::{CheckReport, Witness};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
    /// A computation with no pass/fail verdict (Betti tables, M̃, …).
    Info,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Entry {
    pub name: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<Witness>,
    #[serde(default)]
    pub checked: usize,
    #[serde(default = "yes")]
    pub exhaustive: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub data: Option<serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

fn yes() -> bool {
    true
}

impl Entry {
    fn bare(name: impl Into<String>, status: Status, detail: impl Into<String>) -> Self {
        Entry {
            name: name.into(),
            status,
            detail: detail.into(),
            witnesses: Vec::new(),
            checked: 0,
            exhaustive: true,
            notes: Vec::new(),
            data: None,
            timing_ms: None,
        }
    }

    pub fn check(r: CheckReport) -> Self {
        let status = if r.passed() { Status::Pass } else { Status::Fail };
        Entry {
            witnesses: r.witnesses,
            checked: r.checked,
            exhaustive: r.exhaustive,
            notes: r.notes,
            ..Entry::bare(r.name, status, "")
        }
    }

    pub fn info(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Entry::bare(name, Status::Info, detail)
    }

    pub fn skip(name: impl Into<String>, reason: impl Into<String>) -> Self {
        Entry::bare(name, Status::Skip, reason)
    }

    /// A failure outside any sample check; the detail doubles as the witness.
    pub fn fail(name: impl Into<String>, detail: impl Into<String>) -> Self {
        let detail = detail.into();
        Entry {
            witnesses: vec![Witness { label: "error".into(), residual: detail.clone() }],
            ..Entry::bare(name, Status::Fail, detail)
        }
    }

    pub fn pass(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Entry::bare(name, Status::Pass, detail)
    }

    pub fn with_data(mut self, v: impl Serialize) -> Self {
        self.data = Some(serde_json::to_value(v).expect("report data serializes"));
        self
    }

    pub fn with_detail(mut self, d: impl Into<String>) -> Self {
        self.detail = d.into();
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub fixture: String,
    pub command: String,
    pub entries: Vec<Entry>,
}

impl Report {
    pub fn failed(&self) -> bool {
        self.entries.iter().any(|e| e.status == Status::Fail)
    }

    pub fn entry(&self, name: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} on {}\n", self.command, self.fixture);
        for e in &self.entries {
            let tag = match e.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skip => "SKIP",
                Status::Info => "INFO",
            };
            let _ = write!(s, "  [{tag}] {}", e.name);
            if e.checked > 0 {
                let _ = write!(s, " ({} checked{})", e.checked, if e.exhaustive { "" } else { ", stopped early" });
            }
            if !e.detail.is_empty() {
                let _ = write!(s, ": {}", e.detail);
            }
            if let Some(t) = e.timing_ms {
                let _ = write!(s, " [{t} ms]");
            }
            s.push('\n');
            for w in &e.witnesses {
                let _ = writeln!(s, "      at {}: residual {}", w.label, w.residual);
            }
            for n in &e.notes {
                let _ = writeln!(s, "      note: {n}");
            }
        }
        let count = |st| self.entries.iter().filter(|e| e.status == st).count();
        let _ = writeln!(
            s,
            "{} passed, {} failed, {} skipped",
            count(Status::Pass),
            count(Status::Fail),
            count(Status::Skip)
        );
        s
    }
}
