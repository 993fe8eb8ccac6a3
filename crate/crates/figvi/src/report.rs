//! Check and report containers used by the verification operations and the
//! CLI. Serialization order is declaration order, so output is stable.

use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            pass,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Default)]
pub struct Report {
    pub operation: String,
    pub params: serde_json::Value,
    pub dims: Vec<Vec<usize>>,
    pub checks: Vec<Check>,
    pub caveats: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<serde_json::Value>,
}

impl Report {
    pub fn new(operation: impl Into<String>) -> Report {
        Report {
            operation: operation.into(),
            ..Default::default()
        }
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn push(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.checks.push(Check::new(name, pass, detail));
    }
}
