//! The named rules of the case engine.
//!
//! Axiom rules are imported facts, trusted and quoted.  Derived rules are
//! re-established on every application by IO-Calculation, stub pairing or
//! enumeration.  Scripted rules follow a case split written out in prose.

use std::fmt;

/// How a rule's conclusion is justified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleKind {
    /// Imported and trusted.
    Axiom,
    /// Re-checked by a computation recorded in the trace.
    Derived,
    /// A step of a case split whose branches are enumerated explicitly.
    Scripted,
}

impl RuleKind {
    pub fn tag(self) -> &'static str {
        match self {
            RuleKind::Axiom => "axiom",
            RuleKind::Derived => "derived",
            RuleKind::Scripted => "scripted",
        }
    }
}

/// Rule identifiers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleId {
    /// Hypothesis introduction: the chart is locally minimal where needed.
    LocallyMinimal,
    L3_1,
    L3_4,
    L3_6,
    L4_1,
    L4_2,
    L5_1,
    L5_2,
    L5_3,
    L5_4,
    L6_1,
    L6_2,
    L6_3,
    L7_1,
    L7_2,
    L8_1,
    L9_1,
    L10_1,
    L10_2,
    L11_1,
    L12_1,
    L13_1,
    L13_2,
    P14_2,
    /// A face of `S² − G` without white vertices admits no completion.
    IoZero,
    /// The host face cannot hold exactly the oval.
    IoHost,
    /// The branch set of a case split.
    BranchSet,
    L15_1,
    Claim1,
    Claim2,
    CaseI,
    CaseII,
    CaseIII,
    Conclusion,
}

/// Static description of a rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Rule {
    pub id: RuleId,
    pub kind: RuleKind,
    /// For axioms: the imported statement (the citation); otherwise what the
    /// rule checks.
    pub statement: &'static str,
}

impl RuleId {
    /// The identifier printed in traces.
    pub fn as_str(self) -> &'static str {
        use RuleId::*;
        match self {
            LocallyMinimal => "H-locmin",
            L3_1 => "L3.1-axiom",
            L3_4 => "L3.4-axiom",
            L3_6 => "L3.6-axiom",
            L4_1 => "L4.1-axiom",
            L4_2 => "L4.2-axiom",
            L5_1 => "L5.1-axiom",
            L5_2 => "L5.2",
            L5_3 => "L5.3-axiom",
            L5_4 => "L5.4",
            L6_1 => "L6.1",
            L6_2 => "L6.2-axiom",
            L6_3 => "L6.3",
            L7_1 => "L7.1-axiom",
            L7_2 => "L7.2",
            L8_1 => "L8.1",
            L9_1 => "L9.1",
            L10_1 => "L10.1-axiom",
            L10_2 => "L10.2",
            L11_1 => "L11.1",
            L12_1 => "L12.1",
            L13_1 => "L13.1",
            L13_2 => "L13.2",
            P14_2 => "P14.2",
            IoZero => "IO-zero",
            IoHost => "IO-host",
            BranchSet => "branch-set",
            L15_1 => "L15.1",
            Claim1 => "claim-1",
            Claim2 => "claim-2",
            CaseI => "case-i",
            CaseII => "case-ii",
            CaseIII => "case-iii",
            Conclusion => "theorem",
        }
    }

    pub fn rule(self) -> Rule {
        use RuleId::*;
        use RuleKind::*;
        let (kind, statement) = match self {
            LocallyMinimal => (Axiom, "without loss of generality the chart is locally minimal with respect to the disk"),
            L3_1 => (Axiom, "a 2-angled disk without interior white vertices carries one of the two local pictures"),
            L3_4 => (Axiom, "one of the two 2-angled disks cut off by a theta-curve contains a white vertex"),
            L3_6 => (Axiom, "a 2-angled disk with both outside edges inward contains a white vertex; with an oval inside, three"),
            L4_1 => (Axiom, "a 3-angled disk without interior white vertices carries one of the local pictures"),
            L4_2 => (Axiom, "a special 3-angled disk with a feeler contains a white vertex"),
            L5_1 => (Axiom, "every component of Γ_m with a white vertex has at least two; with two or three it is a theta-curve, oval or skew theta-curve"),
            L5_2 => (Derived, "partitions of seven into parts of size at least two"),
            L5_3 => (Axiom, "a minimal chart with at most seven white vertices has no loop"),
            L5_4 => (Derived, "a component with three white vertices forces more than seven white vertices"),
            L6_1 => (Derived, "a separating ring or hoop forces two components with white vertices"),
            L6_2 => (Axiom, "there is a ring or a non-simple hoop of label m−1 or m+2"),
            L6_3 => (Derived, "type (5,2): one complementary face holds exactly the oval, all others are white-free"),
            L7_1 => (Axiom, "a component with five white vertices is one of nine graphs"),
            L7_2 => (Derived, "the orientations of the nine graphs"),
            L8_1 => (Derived, "the outside edges of a feelerless 2-angled disk have opposite senses"),
            L9_1 => (Derived, "no feelerless 3-angled disk has a coherently oriented boundary"),
            L10_1 => (Axiom, "a minimal chart with at most seven white vertices has no lens"),
            L10_2 => (Derived, "no feelerless 2-angled disk has a coherently oriented boundary"),
            L11_1 => (Derived, "no special 2-angled disk has exactly one feeler"),
            L12_1 => (Derived, "no special 3-angled disk has a feeler"),
            L13_1 => (Derived, "no special 4- or 5-angled disk has two feelers of the same sense"),
            L13_2 => (Derived, "no special 5-angled disk has exactly three feelers"),
            P14_2 => (Derived, "both Γ_m and Γ_{m+1} contain graph (g)"),
            IoZero => (Derived, "a white-free face admits a planar completion of its stubs"),
            IoHost => (Derived, "the host face admits a completion around the oval"),
            BranchSet => (Scripted, "the branches cover the finite choice set"),
            L15_1 => (Derived, "the surviving configuration of graph (g)"),
            Claim1 => (Scripted, "identification of the Γ_{m+1} middle edge"),
            Claim2 => (Scripted, "the curves of Γ_{m+1} through w4 and w3"),
            CaseI => (Scripted, "the second vertex of C is w1"),
            CaseII => (Scripted, "the second vertex of C is w5"),
            CaseIII => (Scripted, "the second vertex of C is the oval vertex w6"),
            Conclusion => (Scripted, "no minimal chart of type (m;7)"),
        };
        Rule {
            id: self,
            kind,
            statement,
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Switches for a pipeline run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EngineOptions {
    /// Use the lens axiom (when off, chords bounding a lens are allowed).
    pub lens_axiom: bool,
    /// Skip the eliminations and consider graph (g) only.
    pub only_g: bool,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions {
            lens_axiom: true,
            only_g: false,
        }
    }
}
