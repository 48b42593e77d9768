//! Machine-readable run reports and the text renderers used by the CLI.
//!
//! JSON output is canonical: struct field order is fixed, the parameter map
//! is sorted, and every number is an integer, so parse + re-emit is
//! byte-identical.

use crate::charsum::CharSumReport;
use crate::sumset::SearchHit;
use crate::verify::CheckFailure;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub hits: Vec<SearchHit>,
    pub charsum_reports: Vec<CharSumReport>,
    pub failures: Vec<CheckFailure>,
    pub elapsed_ms: u64,
    pub version: String,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        RunReport {
            command: command.to_string(),
            parameters: BTreeMap::new(),
            hits: Vec::new(),
            charsum_reports: Vec::new(),
            failures: Vec::new(),
            elapsed_ms: 0,
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) {
        self.parameters.insert(key.to_string(), value.to_string());
    }

    pub fn to_canonical_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Appendix-style text: one "q m n" line per hit, then a timing line.
    pub fn search_text(&self) -> String {
        let mut out = String::new();
        for h in &self.hits {
            out.push_str(&format!("{} {} {}", h.q, h.m, h.n));
            if h.boundary_only {
                out.push_str(" boundary-only");
            }
            out.push('\n');
        }
        out.push_str(&format!("done in {:.1}s\n", self.elapsed_ms as f64 / 1000.0));
        out
    }

    pub fn search_csv(&self) -> String {
        let mut out = String::from("q,m,n,boundary_only\n");
        for h in &self.hits {
            out.push_str(&format!("{},{},{},{}\n", h.q, h.m, h.n, h.boundary_only));
        }
        out
    }
}
