//! Trace records: one line per rule application,
//! `branch-path | rule-id | verdict | witness`.

use std::fmt;

use super::rules::RuleId;

/// Outcome of a rule application.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Verdict {
    Refuted,
    Constrained,
    Survives,
    /// The rule did not apply.
    NoOp,
}

impl Verdict {
    pub fn tag(self) -> &'static str {
        match self {
            Verdict::Refuted => "refuted",
            Verdict::Constrained => "constrained",
            Verdict::Survives => "survives",
            Verdict::NoOp => "no-op",
        }
    }
}

/// The computation behind a record, kept so that it can be replayed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Check {
    /// Nothing to recompute (axioms, bookkeeping).
    None,
    /// Counting on a face of a branch: no balance is possible.
    Count {
        branch: super::config::BranchKey,
        face: usize,
    },
    /// No completion of a face of a branch (chords bounding a lens are
    /// forbidden when `lens` is set).
    Pairing {
        branch: super::config::BranchKey,
        face: usize,
        lens: bool,
    },
    /// Counting on the face of `chart` containing the corner after `anchor`:
    /// no balance is possible.
    CountChart {
        chart: Box<crate::model::Chart>,
        anchor: crate::model::DartId,
        label: crate::model::Label,
    },
    /// A sum of lower bounds exceeds a total.
    Overflow { parts: Vec<usize>, total: usize },
    /// A lens between the named edges in a materialized chart.
    Lens {
        chart: Box<crate::model::Chart>,
        label: crate::model::Label,
        edges: [String; 2],
    },
    /// A set of completions, each refuted by a lens.
    LensAll {
        charts: Vec<crate::model::Chart>,
        label: crate::model::Label,
    },
}

/// One trace line with its replay data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceRecord {
    pub path: String,
    pub rule: RuleId,
    pub verdict: Verdict,
    pub witness: String,
    pub check: Check,
}

impl fmt::Display for TraceRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} | {} | {} | {}",
            self.path,
            self.rule,
            self.verdict.tag(),
            self.witness
        )
    }
}

/// An ordered list of records.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Trace {
    pub records: Vec<TraceRecord>,
}

impl Trace {
    pub fn push(
        &mut self,
        path: &str,
        rule: RuleId,
        verdict: Verdict,
        witness: impl Into<String>,
        check: Check,
    ) {
        self.records.push(TraceRecord {
            path: path.to_string(),
            rule,
            verdict,
            witness: witness.into(),
            check,
        });
    }

    /// Record without replay data.
    pub fn note(&mut self, path: &str, rule: RuleId, verdict: Verdict, witness: impl Into<String>) {
        self.push(path, rule, verdict, witness, Check::None);
    }

    pub fn extend(&mut self, other: Trace) {
        self.records.extend(other.records);
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// The trace as text, one record per line.
    pub fn render(&self) -> String {
        let mut s = String::new();
        for r in &self.records {
            s.push_str(&r.to_string());
            s.push('\n');
        }
        s
    }
}
