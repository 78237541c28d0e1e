//! Elimination of the nine five-vertex graphs.
//!
//! A branch fixes the graph, the label binding, an orientation, the corners
//! of the terminal edges, the face hosting the oval and the oval's sense.
//! Every face other than the host holds no white vertex, and the host holds
//! exactly the oval.  Each graph has a scripted plan of named rules; the
//! exhaustive fallback applies the IO rules to every face.  Both must leave
//! the same branches alive.

use std::collections::BTreeMap;

use super::config::{branch_keys, BranchKey, Config, EngineError, HostChart};
use super::rules::{EngineOptions, RuleId};
use super::trace::{Check, Trace, Verdict};
use crate::embed::{Embedding, FaceId};
use crate::model::{Chart, Direction, Label};
use crate::pairing::{self, counting_balance, face_cycles, solve, PairingOptions};
use crate::region::{
    boundary_orientation, detect_lenses_in, io_balance, AngledDisk, BoundaryOrientation, Region,
};

/// The scripted plan of a graph.
pub fn plan(graph: char) -> &'static [RuleId] {
    use RuleId::*;
    match graph {
        'a' | 'd' => &[L8_1],
        'f' => &[L9_1],
        'i' => &[L10_2, L9_1],
        'h' => &[L11_1, IoZero, IoHost],
        'e' => &[L10_2, L12_1, IoZero, IoHost],
        'b' => &[L12_1, L13_2, L13_1, IoZero, IoHost],
        'c' => &[L13_1, IoZero, IoHost],
        _ => &[
            L8_1, L9_1, L10_2, L11_1, L12_1, L13_1, L13_2, IoZero, IoHost,
        ],
    }
}

/// The rules of the exhaustive fallback.
pub const FALLBACK: [RuleId; 2] = [RuleId::IoZero, RuleId::IoHost];

/// Result of eliminating one graph.
#[derive(Clone, Debug)]
pub struct Fig12Outcome {
    pub graph: char,
    pub verdict: Verdict,
    pub branches: usize,
    /// Survivors of the scripted plan.
    pub survivors: Vec<BranchKey>,
    /// Survivors of the exhaustive fallback.
    pub fallback_survivors: Vec<BranchKey>,
    /// Branches refuted per rule by the scripted plan.
    pub refuted_by: BTreeMap<RuleId, usize>,
    pub trace: Trace,
}

impl Fig12Outcome {
    /// Scripted plan and fallback leave the same branches.
    pub fn agrees(&self) -> bool {
        self.survivors == self.fallback_survivors
    }
}

fn dir_tag(d: Direction) -> &'static str {
    match d {
        Direction::Inward => "inward",
        Direction::Outward => "outward",
    }
}

/// How the face check of a rule is carried out.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Mode {
    Count,
    Pairing,
}

/// The disk pattern of a named rule; `Some(description)` when it matches.
fn pattern(rule: RuleId, cfg: &Config, disk: &AngledDisk) -> Option<String> {
    let chart = &cfg.chart;
    let coherent = boundary_orientation(disk) == BoundaryOrientation::Coherent;
    let feelers = disk.feeler_count();
    let special = disk.is_special();
    let dirs =
        |ds: &[usize]| -> Vec<Direction> { ds.iter().map(|&d| chart.direction(d)).collect() };
    match rule {
        RuleId::L8_1 => {
            let out = dirs(&disk.outside_darts);
            (disk.k == 2 && feelers == 0 && out.len() == 2 && out[0] == out[1])
                .then(|| format!("feelerless, outside edges both {}", dir_tag(out[0])))
        }
        RuleId::L9_1 => (disk.k == 3 && feelers == 0 && coherent)
            .then(|| "feelerless, coherent boundary".into()),
        RuleId::L10_2 => (disk.k == 2 && feelers == 0 && coherent)
            .then(|| "feelerless, coherent boundary".into()),
        RuleId::L11_1 => {
            (disk.k == 2 && special && feelers == 1).then(|| "special, one feeler".into())
        }
        RuleId::L12_1 => (disk.k == 3 && special && feelers >= 1)
            .then(|| format!("special, {feelers} feeler(s)")),
        RuleId::L13_1 => {
            let fd = dirs(&disk.feeler_darts);
            ((disk.k == 4 || disk.k == 5)
                && special
                && feelers == 2
                && fd.len() == 2
                && fd[0] == fd[1])
                .then(|| format!("special, two feelers both {}", dir_tag(fd[0])))
        }
        RuleId::L13_2 => {
            (disk.k == 5 && special && feelers == 3).then(|| "special, three feelers".into())
        }
        _ => None,
    }
}

fn mode(rule: RuleId) -> Mode {
    match rule {
        RuleId::L10_2 | RuleId::IoZero => Mode::Pairing,
        _ => Mode::Count,
    }
}

/// Face data for a branch: the configuration and, lazily, the host chart.
struct Branch<'a> {
    cfg: &'a Config,
    host: &'a HostChart,
    key: &'a BranchKey,
}

impl Branch<'_> {
    /// Chart, embedding and face id of face `f` (the host face lives in the
    /// chart with the oval).
    fn face(&self, f: FaceId) -> (&Chart, &Embedding, FaceId) {
        if f == self.key.host {
            (&self.host.chart, &self.host.emb, self.host.face)
        } else {
            (&self.cfg.chart, &self.cfg.emb, f)
        }
    }

    fn stub(&self) -> Label {
        self.key.config.binding.stub()
    }

    /// Run the face check; `Some(witness)` when it refutes.
    fn check(
        &self,
        f: FaceId,
        mode: Mode,
        opts: &EngineOptions,
    ) -> Result<Option<(String, Check)>, EngineError> {
        let (chart, emb, face) = self.face(f);
        let host = if f == self.key.host { "host " } else { "" };
        match mode {
            Mode::Count => {
                let s = io_balance(chart, emb, &Region::single(face), self.stub(), &[])?;
                if s.balance_possible() {
                    return Ok(None);
                }
                let w = format!(
                    "{host}face {f}: in {} out {} (optional {}/{}), no balance",
                    s.inward, s.outward, s.optional_inward, s.optional_outward
                );
                Ok(Some((
                    w,
                    Check::Count {
                        branch: self.key.clone(),
                        face: f,
                    },
                )))
            }
            Mode::Pairing => {
                let cycles = face_cycles(chart, emb, face, self.stub());
                let popts = PairingOptions {
                    forbid_lens: opts.lens_axiom,
                    forbid_loop: true,
                    limit: Some(1),
                };
                if !solve(&cycles, popts).is_empty() {
                    return Ok(None);
                }
                let slots = cycles.slots().len();
                let ban = if opts.lens_axiom {
                    "loop- and lens-free"
                } else {
                    "loop-free"
                };
                let w = format!("{host}face {f}: no planar {ban} completion of {slots} stubs");
                Ok(Some((
                    w,
                    Check::Pairing {
                        branch: self.key.clone(),
                        face: f,
                        lens: opts.lens_axiom,
                    },
                )))
            }
        }
    }

    /// Apply a rule to every face in order; the first refutation wins.
    fn apply(
        &self,
        rule: RuleId,
        opts: &EngineOptions,
    ) -> Result<Option<(String, Check)>, EngineError> {
        for f in 0..self.cfg.face_count() {
            let desc = match rule {
                RuleId::IoZero if f != self.key.host => "white-free".to_string(),
                RuleId::IoHost if f == self.key.host => "holds exactly the oval".to_string(),
                RuleId::IoZero | RuleId::IoHost => continue,
                _ => {
                    let Some(disk) = &self.cfg.disks[f] else {
                        continue;
                    };
                    let Some(p) = pattern(rule, self.cfg, disk) else {
                        continue;
                    };
                    format!("{} {p}", self.cfg.disk_name(f))
                }
            };
            if let Some((w, c)) = self.check(f, mode(rule), opts)? {
                return Ok(Some((format!("{desc}; {w}"), c)));
            }
        }
        Ok(None)
    }
}

/// Eliminate one graph: scripted plan, exhaustive fallback, agreement.
pub fn eliminate_fig12(graph: char, opts: &EngineOptions) -> Result<Fig12Outcome, EngineError> {
    let keys = branch_keys(graph)?;
    let mut trace = Trace::default();
    let root = format!("fig12({graph})");
    trace.note(
        &root,
        RuleId::BranchSet,
        Verdict::Constrained,
        branch_set_witness(graph, &keys),
    );
    let mut survivors = Vec::new();
    let mut fallback_survivors = Vec::new();
    let mut refuted_by = BTreeMap::new();
    let mut cache: Option<Config> = None;
    for key in &keys {
        if cache.as_ref().is_none_or(|c| c.key != key.config) {
            cache = Some(Config::build(&key.config)?);
        }
        let cfg = cache.as_ref().expect("config");
        let host = cfg.host(key.host, key.reversed)?;
        let br = Branch {
            cfg,
            host: &host,
            key,
        };
        let path = key.to_string();
        let mut alive = true;
        for &rule in plan(graph) {
            if let Some((w, c)) = br.apply(rule, opts)? {
                trace.push(&path, rule, Verdict::Refuted, w, c);
                *refuted_by.entry(rule).or_insert(0) += 1;
                alive = false;
                break;
            }
        }
        if alive {
            trace.note(
                &path,
                RuleId::IoHost,
                Verdict::Survives,
                "every face admits its completion",
            );
            survivors.push(key.clone());
        }
        let mut fb_alive = true;
        for rule in FALLBACK {
            if br.apply(rule, opts)?.is_some() {
                fb_alive = false;
                break;
            }
        }
        if fb_alive {
            fallback_survivors.push(key.clone());
        }
    }
    let verdict = if survivors.is_empty() {
        Verdict::Refuted
    } else {
        Verdict::Survives
    };
    let agree = survivors == fallback_survivors;
    let summary = match verdict {
        Verdict::Refuted if keys.is_empty() => "no branch applies (vacuous)".to_string(),
        Verdict::Refuted => format!("all {} branches refuted", keys.len()),
        _ => format!("{} of {} branches survive", survivors.len(), keys.len()),
    };
    let agreement = if agree {
        "fallback agrees"
    } else {
        "fallback DISAGREES"
    };
    trace.note(
        &root,
        RuleId::BranchSet,
        verdict,
        format!("{summary}; {agreement}"),
    );
    Ok(Fig12Outcome {
        graph,
        verdict,
        branches: keys.len(),
        survivors,
        fallback_survivors,
        refuted_by,
        trace,
    })
}

fn branch_set_witness(graph: char, keys: &[BranchKey]) -> String {
    let mut orient = std::collections::BTreeSet::new();
    let mut corners = std::collections::BTreeSet::new();
    let mut hosts = std::collections::BTreeSet::new();
    for k in keys {
        orient.insert(k.config.orientation);
        corners.insert(k.config.corners.clone());
        hosts.insert(k.host);
    }
    format!(
        "graph ({graph}): 2 bindings x {} orientations x {} terminal corners x {} host faces x 2 oval senses = {} branches",
        orient.len(),
        corners.len(),
        hosts.len(),
        keys.len()
    )
}

/// Outcome of replaying a trace.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReplayReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl ReplayReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Recompute every checked record of a trace along an independent route:
/// counting claims by reading the face walks, pairing claims by
/// materialising every lens-tolerant completion and searching the resulting
/// chart for a lens.
pub fn replay(trace: &Trace) -> ReplayReport {
    let mut rep = ReplayReport::default();
    let mut cache: Option<Config> = None;
    for r in &trace.records {
        let ok = match &r.check {
            Check::None => continue,
            Check::Count { branch, face } => {
                with_face(&mut cache, branch, *face, |chart, emb, f, stub| {
                    !counting_balance(&face_cycles(chart, emb, f, stub))
                })
            }
            Check::Pairing { branch, face, lens } => {
                with_face(&mut cache, branch, *face, |chart, emb, f, stub| {
                    pairing_refuted(chart, emb, f, stub, *lens)
                })
            }
            Check::CountChart {
                chart,
                anchor,
                label,
            } => Embedding::new(chart).is_ok_and(|emb| {
                let f = emb.corner_face(chart, *anchor);
                !counting_balance(&face_cycles(chart, &emb, f, *label))
            }),
            Check::Overflow { parts, total } => parts.iter().sum::<usize>() > *total,
            Check::Lens {
                chart,
                label,
                edges,
            } => lens_present(chart, *label, edges),
            Check::LensAll { charts, label } => charts.iter().all(|c| {
                Embedding::new(c).is_ok_and(|emb| {
                    detect_lenses_in(c, &emb, *label)
                        .iter()
                        .any(|l| has_chord(c, l))
                })
            }),
        };
        rep.checked += 1;
        if !ok {
            rep.failures.push(r.to_string());
        }
    }
    rep
}

fn with_face(
    cache: &mut Option<Config>,
    key: &BranchKey,
    face: FaceId,
    f: impl Fn(&Chart, &Embedding, FaceId, Label) -> bool,
) -> bool {
    if cache.as_ref().is_none_or(|c| c.key != key.config) {
        match Config::build(&key.config) {
            Ok(c) => *cache = Some(c),
            Err(_) => return false,
        }
    }
    let cfg = cache.as_ref().expect("config");
    let stub = key.config.binding.stub();
    if face == key.host {
        match cfg.host(key.host, key.reversed) {
            Ok(h) => f(&h.chart, &h.emb, h.face, stub),
            Err(_) => false,
        }
    } else if face < cfg.emb.face_count {
        f(&cfg.chart, &cfg.emb, face, stub)
    } else {
        false
    }
}

/// Every loop-free completion (lenses allowed) is non-planar or, when
/// `lens` is set, contains a lens made by a chord.
fn pairing_refuted(chart: &Chart, emb: &Embedding, face: FaceId, stub: Label, lens: bool) -> bool {
    let cycles = face_cycles(chart, emb, face, stub);
    let all = solve(
        &cycles,
        PairingOptions {
            forbid_lens: false,
            forbid_loop: true,
            limit: None,
        },
    );
    all.iter().all(|c| {
        let mat = pairing::materialize(chart, &cycles, c);
        let Ok(memb) = Embedding::new(&mat) else {
            return true;
        };
        lens && lens_labels(stub).iter().any(|&m| {
            detect_lenses_in(&mat, &memb, m)
                .iter()
                .any(|l| has_chord(&mat, l))
        })
    })
}

fn lens_labels(stub: Label) -> [Label; 2] {
    [stub.saturating_sub(1).max(1), stub]
}

/// A chord made by materialisation is named `<tail>=<head>`.
fn has_chord(chart: &Chart, l: &crate::region::Lens) -> bool {
    l.e1.iter()
        .chain(&l.e2)
        .any(|&e| chart.edges[e].name.contains('='))
}

fn lens_present(chart: &Chart, label: Label, edges: &[String; 2]) -> bool {
    let Ok(emb) = Embedding::new(chart) else {
        return false;
    };
    detect_lenses_in(chart, &emb, label).iter().any(|l| {
        let names: Vec<&str> =
            l.e1.iter()
                .chain(&l.e2)
                .map(|&e| chart.edges[e].name.as_str())
                .collect();
        edges.iter().all(|n| names.contains(&n.as_str()))
    })
}
