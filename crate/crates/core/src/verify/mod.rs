//! Mechanical checks of the classification of S-rings over `D_2p` and the
//! results around it, run over full censuses.
//!
//! Every check yields a [`TheoremReport`]. A budget running out is never
//! read as a counterexample: it makes the report `FAIL-TO-VERIFY`.

mod classify;
mod theorems;

use std::fmt::{self, Write as _};
use std::time::Duration;

use serde::Serialize;

use crate::diffset::DEFAULT_DIFFSET_BUDGET;
use crate::enumerate::DEFAULT_NODE_BUDGET;
use crate::permgrp::DEFAULT_ELEMENT_BUDGET;
use crate::schurity::DEFAULT_SEARCH_BUDGET;

pub use classify::{classify_census, classify_sring, ClassificationVerdict};
pub use theorems::{
    classification_applies, classification_report, schurity_report, verify_classification, verify_main1, verify_main2,
    verify_nonschur_family, verify_section4_lemmas,
};

/// Search budgets shared by all checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Budgets {
    /// S-ring enumeration nodes.
    pub nodes: u64,
    /// Automorphism and isomorphism search nodes.
    pub search: u64,
    /// Chain nodes when looking for a regular cyclic subgroup.
    pub elements: u64,
    /// Difference-set search nodes.
    pub diffset: u64,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            nodes: DEFAULT_NODE_BUDGET,
            search: DEFAULT_SEARCH_BUDGET,
            elements: DEFAULT_ELEMENT_BUDGET,
            diffset: DEFAULT_DIFFSET_BUDGET,
        }
    }
}

impl fmt::Display for Budgets {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "nodes={} search={} elements={} diffset={}",
            self.nodes, self.search, self.elements, self.diffset
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    /// A counterexample was found.
    #[serde(rename = "FAIL")]
    Fail,
    /// Some budget ran out before a verdict.
    #[serde(rename = "FAIL-TO-VERIFY")]
    FailToVerify,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::FailToVerify => "FAIL-TO-VERIFY",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InstanceVerdict {
    pub label: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremReport {
    pub theorem: String,
    /// The prime, or `t` for the biquadratic family.
    pub parameter: u64,
    pub instances: Vec<InstanceVerdict>,
    pub passed: usize,
    pub failed: usize,
    pub unknown: usize,
    /// Free-form remarks, e.g. regimes that no instance falls into.
    pub notes: Vec<String>,
    pub elapsed_ms: u128,
    pub status: Status,
}

impl TheoremReport {
    pub(crate) fn new(theorem: &str, parameter: u64) -> Self {
        TheoremReport {
            theorem: theorem.to_string(),
            parameter,
            instances: Vec::new(),
            passed: 0,
            failed: 0,
            unknown: 0,
            notes: Vec::new(),
            elapsed_ms: 0,
            status: Status::Pass,
        }
    }

    pub(crate) fn push(&mut self, label: impl Into<String>, status: Status, detail: impl Into<String>) {
        self.instances.push(InstanceVerdict {
            label: label.into(),
            status,
            detail: detail.into(),
        });
    }

    pub(crate) fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// Tallies the instances; an unknown instance outranks a pass, a failure
    /// outranks both.
    pub(crate) fn finish(mut self, elapsed: Duration) -> Self {
        let count = |s: Status| self.instances.iter().filter(|i| i.status == s).count();
        self.passed = count(Status::Pass);
        self.failed = count(Status::Fail);
        self.unknown = count(Status::FailToVerify);
        self.elapsed_ms = elapsed.as_millis();
        self.status = if self.failed > 0 {
            Status::Fail
        } else if self.unknown > 0 || self.instances.is_empty() {
            Status::FailToVerify
        } else {
            Status::Pass
        };
        self
    }

    pub fn is_pass(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Aligned plain-text rendering. Leaves out the runtime so that equal
    /// inputs render to equal bytes.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{} ({}): {}  pass {}  fail {}  unknown {}",
            self.theorem, self.parameter, self.status, self.passed, self.failed, self.unknown
        );
        let width = self.instances.iter().map(|i| i.label.len()).max().unwrap_or(0).max(8);
        for i in &self.instances {
            let _ = writeln!(out, "  {:<width$}  {:<14}  {}", i.label, i.status.to_string(), i.detail);
        }
        for n in &self.notes {
            let _ = writeln!(out, "  note: {n}");
        }
        out
    }
}

#[cfg(test)]
mod tests;
