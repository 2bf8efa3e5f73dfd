//! Run reports: a JSON document with the command, an input digest, the
//! parameters and one entry per check.

use std::collections::BTreeMap;

use horton_islands::{Outcome, SearchReport};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::format::PointSetFile;

pub const TOOL: &str = "islands";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    pub fn exit_code(self) -> u8 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Inconclusive => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        }
    }

    /// Fail dominates inconclusive, which dominates pass.
    pub fn combine(verdicts: impl IntoIterator<Item = Verdict>) -> Verdict {
        verdicts
            .into_iter()
            .fold(Verdict::Pass, |acc, v| match (acc, v) {
                (Verdict::Fail, _) | (_, Verdict::Fail) => Verdict::Fail,
                (Verdict::Inconclusive, _) | (_, Verdict::Inconclusive) => Verdict::Inconclusive,
                _ => Verdict::Pass,
            })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
    pub points: usize,
    pub metadata: BTreeMap<String, String>,
}

impl InputDigest {
    pub fn new(path: &str, bytes: &[u8], file: &PointSetFile) -> Self {
        InputDigest {
            path: path.to_string(),
            sha256: hex::encode(Sha256::digest(bytes)),
            points: file.points.len(),
            metadata: file.metadata.iter().cloned().collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub verdict: Verdict,
    pub value: Option<u64>,
    /// Indices into the input file.
    pub witness: Vec<usize>,
    pub nodes_explored: u64,
    pub elapsed_ms: u64,
    pub detail: String,
}

/// The fields of a [`SearchReport`] in serializable form.
#[derive(Clone, Debug, Serialize)]
pub struct SearchSummary {
    pub quantity: String,
    pub value: u64,
    pub outcome: String,
    pub witness: Vec<usize>,
    pub anchor: Option<usize>,
    pub nodes_explored: u64,
    pub elapsed_ms: u64,
}

impl From<&SearchReport> for SearchSummary {
    fn from(r: &SearchReport) -> Self {
        SearchSummary {
            quantity: r.quantity.name().to_string(),
            value: r.value,
            outcome: r.outcome.name().to_string(),
            witness: r.witness.clone(),
            anchor: r.anchor,
            nodes_explored: r.nodes_explored,
            elapsed_ms: r.elapsed.as_millis() as u64,
        }
    }
}

pub fn search_verdict(r: &SearchReport) -> Verdict {
    match r.outcome {
        Outcome::BudgetExceeded => Verdict::Inconclusive,
        _ => Verdict::Pass,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub input: InputDigest,
    pub parameters: BTreeMap<String, String>,
    pub checks: Vec<CheckResult>,
    pub search: Option<SearchSummary>,
    pub verdict: Verdict,
    pub exit_status: u8,
}

impl RunReport {
    pub fn new(command: &str, input: InputDigest, parameters: BTreeMap<String, String>) -> Self {
        RunReport {
            tool: TOOL.to_string(),
            version: VERSION.to_string(),
            command: command.to_string(),
            input,
            parameters,
            checks: Vec::new(),
            search: None,
            verdict: Verdict::Pass,
            exit_status: 0,
        }
    }

    pub fn finish(&mut self, verdict: Verdict) {
        self.verdict = verdict;
        self.exit_status = verdict.exit_code();
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Short `key: value` summary for the terminal.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "command: {}\ninput: {} ({} points, sha256 {})\n",
            self.command, self.input.path, self.input.points, self.input.sha256
        );
        for c in &self.checks {
            out.push_str(&format!("check {}: {}", c.name, c.verdict.name()));
            if let Some(v) = c.value {
                out.push_str(&format!(" value={v}"));
            }
            if !c.witness.is_empty() {
                let w: Vec<String> = c.witness.iter().map(|i| i.to_string()).collect();
                out.push_str(&format!(" witness={}", w.join(",")));
            }
            out.push_str(&format!(
                " nodes={} elapsed_ms={}",
                c.nodes_explored, c.elapsed_ms
            ));
            if !c.detail.is_empty() {
                out.push_str(&format!(" ({})", c.detail));
            }
            out.push('\n');
        }
        if let Some(s) = &self.search {
            out.push_str(&format!(
                "quantity: {}\nvalue: {}\noutcome: {}\n",
                s.quantity, s.value, s.outcome
            ));
            let w: Vec<String> = s.witness.iter().map(|i| i.to_string()).collect();
            out.push_str(&format!("witness: {}\n", w.join(" ")));
            if let Some(a) = s.anchor {
                out.push_str(&format!("anchor: {a}\n"));
            }
            out.push_str(&format!(
                "nodes_explored: {}\nelapsed_ms: {}\n",
                s.nodes_explored, s.elapsed_ms
            ));
        }
        out.push_str(&format!("verdict: {}\n", self.verdict.name()));
        out
    }
}
