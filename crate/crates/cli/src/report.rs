use std::fmt::Write;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::job::Inputs;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Holds,
    Fails,
    Asserted,
    NotAsserted,
    NotApplicable,
}

impl Status {
    fn label(self) -> &'static str {
        match self {
            Status::Holds => "holds",
            Status::Fails => "FAILS",
            Status::Asserted => "asserted",
            Status::NotAsserted => "not asserted",
            Status::NotApplicable => "n/a",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hypothesis {
    pub name: String,
    pub status: Status,
    /// Whether the requested computation depends on it.
    pub required: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Hypothesis {
    pub fn status_text(&self) -> &'static str {
        self.status.label()
    }

    pub fn blocks(&self) -> bool {
        self.required && matches!(self.status, Status::Fails | Status::NotAsserted)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// Everything one run produced. Machine output is this struct as JSON;
/// text output renders the same content line by line.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub inputs: Inputs,
    pub hypotheses: Vec<Hypothesis>,
    pub results: Map<String, Value>,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip)]
    lines: Vec<String>,
}

impl Report {
    pub fn new(inputs: Inputs) -> Self {
        Report { inputs, hypotheses: Vec::new(), results: Map::new(), checks: Vec::new(), error: None, lines: Vec::new() }
    }

    pub fn hypothesis(&mut self, name: &str, status: Status, required: bool, detail: Option<String>) {
        self.hypotheses.push(Hypothesis { name: name.into(), status, required, detail });
    }

    /// Records a result under `key` with its text rendering, which may
    /// be empty for machine-only data.
    pub fn result(&mut self, key: &str, value: Value, text: impl Into<String>) {
        self.results.insert(key.into(), value);
        let text = text.into();
        if !text.is_empty() {
            self.lines.push(text);
        }
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool, detail: Option<String>) {
        self.checks.push(Check { name: name.into(), passed, detail });
    }

    pub fn fail(&mut self, e: impl ToString) {
        if self.error.is_none() {
            self.error = Some(e.to_string());
        }
    }

    /// True iff every requested computation and cross-check succeeded.
    pub fn success(&self) -> bool {
        self.error.is_none() && self.checks.iter().all(|c| c.passed) && !self.hypotheses.iter().any(|h| h.blocks())
    }

    pub fn to_machine(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let i = &self.inputs;
        let mut s = String::new();
        let command = i.command.map_or("?", |c| c.name());
        let mode = i.mode.map_or("local", |m| match m {
            crate::job::ModeName::Local => "local",
            crate::job::ModeName::Infinity => "infinity",
        });
        let _ = writeln!(s, "{command}: n = {}, P = {}, Q = {}, mode = {mode}", i.n, i.p, i.q);
        if !self.hypotheses.is_empty() {
            s.push_str("hypotheses:\n");
            for h in &self.hypotheses {
                let req = if h.required { " (required)" } else { "" };
                let _ = write!(s, "  {:<20} {}{req}", h.name, h.status.label());
                if let Some(d) = &h.detail {
                    let _ = write!(s, ": {d}");
                }
                s.push('\n');
            }
        }
        if !self.lines.is_empty() {
            s.push_str("results:\n");
            for l in &self.lines {
                for part in l.lines() {
                    let _ = writeln!(s, "  {part}");
                }
            }
        }
        if !self.checks.is_empty() {
            s.push_str("checks:\n");
            for c in &self.checks {
                let tag = if c.passed { "ok  " } else { "FAIL" };
                let _ = write!(s, "  {tag} {}", c.name);
                if let Some(d) = &c.detail {
                    let _ = write!(s, ": {d}");
                }
                s.push('\n');
            }
        }
        if let Some(e) = &self.error {
            let _ = writeln!(s, "error: {e}");
        }
        s
    }
}
