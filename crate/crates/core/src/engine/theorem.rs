//! The type refinement and the final gluing argument.
//!
//! The pipeline refines the type of Γ_m and Γ_{m+1} to (5,2), eliminates the
//! five-vertex graphs other than (g), and then enumerates the completions of
//! the annulus around the surviving configuration, splitting them by the
//! second white vertex on the curve through w4.

use std::collections::BTreeSet;

use super::config::{place_oval, Binding, BranchKey, Config, ConfigKey, EngineError};
use super::fig12::{eliminate_fig12, Fig12Outcome};
use super::rules::{EngineOptions, RuleId};
use super::trace::{Check, Trace, Verdict};
use crate::embed::{Embedding, FaceId};
use crate::enumerate::{enumerate, EnumerateFlags};
use crate::model::{Chart, DartId, Label, VertexKind};
use crate::pairing::{
    face_cycles, materialize, solve, BoundaryCycles, Completion, PairingOptions, SlotRef,
};
use crate::reference::{fig13f, reference_graph, FIG12_IDS};
use crate::region::{detect_lenses_in, io_balance, Region};
use crate::subgraph::{classify_abstract, ClassKind};

/// Number of white vertices of the type under study.
pub const WHITES: usize = 7;

/// Partitions of `n` into non-increasing parts of size at least `min`.
pub fn partitions(n: usize, min: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, max: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (min..=max.min(n)).rev() {
            cur.push(p);
            rec(n - p, p, min, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, min.max(1), &mut Vec::new(), &mut out);
    out
}

fn type_tag(p: &[usize]) -> String {
    let parts: Vec<String> = p.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

/// The derived type facts.
#[derive(Clone, Debug)]
pub struct TypeRefinement {
    /// Hypotheses that were not refuted.
    pub surviving: Vec<Vec<usize>>,
    pub trace: Trace,
}

fn class_names(w: usize) -> Vec<String> {
    enumerate(w, EnumerateFlags::all())
        .iter()
        .map(|e| classify_abstract(&e.component).to_string())
        .collect()
}

/// For every orientation of the skew θ-curve, its feelerless 2-angled disk
/// admits no completion without white vertices.  Returns the charts and the
/// corner darts of the disk faces, for replay.
fn skew_theta_disk_needs_white() -> Result<Vec<(Chart, DartId, bool)>, EngineError> {
    let g = reference_graph(ClassKind::SkewTheta).ok_or(EngineError::UnknownGraph('s'))?;
    let b = Binding::Lower;
    let mut out = Vec::new();
    for o in g.all_orientations(true) {
        let chart = g
            .with_orientation(o)
            .to_chart_labels(super::config::DEGREE, b.k(), b.stub(), None)
            .ok_or(EngineError::Orientation(0))?;
        let emb = Embedding::new(&chart)?;
        let disks = crate::region::find_angled_disks_in(&chart, &emb, b.k());
        for d in disks
            .iter()
            .filter(|d| d.k == 2 && d.feeler_count() == 0 && d.region.faces.len() == 1)
        {
            let f = *d.region.faces.iter().next().expect("face");
            let anchor = (0..chart.darts.len())
                .find(|&x| emb.corner_face(&chart, x) == f)
                .expect("corner");
            let sheet = io_balance(&chart, &emb, &d.region, b.stub(), &[])?;
            out.push((chart.clone(), anchor, !sheet.balance_possible()));
        }
    }
    Ok(out)
}

/// Refine the type of Γ_m (and Γ_{m+1}) under the hypothesis type (m;7).
/// `hypotheses` defaults to every partition of seven into parts ≥ 2.
pub fn check_type_refinement(
    hypotheses: Option<&[Vec<usize>]>,
) -> Result<TypeRefinement, EngineError> {
    let mut t = Trace::default();
    let root = "type";
    t.note(
        root,
        RuleId::L5_1,
        Verdict::Constrained,
        "every component with a white vertex has at least two",
    );
    let all = partitions(WHITES, 1);
    let with_one = all.iter().filter(|p| p.contains(&1)).count();
    t.note(
        root,
        RuleId::L5_2,
        Verdict::Constrained,
        format!("{with_one} partitions with a part of size one excluded"),
    );
    let four = vec![2; 4];
    t.push(
        root,
        RuleId::L5_2,
        Verdict::Refuted,
        "four or more components: 2 + 2 + 2 + 2 = 8 > 7",
        Check::Overflow {
            parts: four,
            total: WHITES,
        },
    );
    let candidates = partitions(WHITES, 2);
    let listed: Vec<String> = candidates.iter().map(|p| type_tag(p)).collect();
    t.note(
        root,
        RuleId::L5_2,
        Verdict::Constrained,
        format!("type is one of {}", listed.join(", ")),
    );
    t.note(
        root,
        RuleId::L5_1,
        Verdict::Constrained,
        format!(
            "enumeration: two white vertices -> {}; three -> {}",
            class_names(2).join(", "),
            class_names(3).join(", ")
        ),
    );
    let hyps: Vec<Vec<usize>> = hypotheses.map_or(candidates.clone(), |h| h.to_vec());
    let mut surviving = Vec::new();
    for p in &hyps {
        let path = format!("type{}", type_tag(p));
        if !candidates.contains(p) {
            let sum: usize = p.iter().sum();
            let w =
                format!("not a partition of {WHITES} into parts of size at least two (sum {sum})");
            t.note(&path, RuleId::L5_2, Verdict::Refuted, w);
            continue;
        }
        if p.as_slice() == [WHITES] {
            t.note(
                &path,
                RuleId::L6_2,
                Verdict::Constrained,
                "a ring or non-simple hoop C of label m-1 or m+2 exists",
            );
            t.push(
                &path,
                RuleId::L6_1,
                Verdict::Refuted,
                "each side of C holds a white vertex of Γ_m ∩ Γ_{m+1}; their components differ: 2 components > 1 part",
                Check::Overflow { parts: vec![1, 1], total: 1 },
            );
            continue;
        }
        if p.contains(&3) {
            t.note(&path, RuleId::L5_3, Verdict::Constrained, "no loops");
            t.note(
                &path,
                RuleId::L5_1,
                Verdict::Constrained,
                "the component G with three white vertices is the skew theta-curve",
            );
            t.note(
                &path,
                RuleId::LocallyMinimal,
                Verdict::Constrained,
                "locally minimal with respect to D1",
            );
            t.note(
                &path,
                RuleId::L4_2,
                Verdict::Constrained,
                "D1 is special 3-angled with one feeler: w(Int D1) >= 1",
            );
            let checks = skew_theta_disk_needs_white()?;
            let all_fail = !checks.is_empty() && checks.iter().all(|c| c.2);
            for (i, (chart, anchor, fails)) in checks.into_iter().enumerate() {
                if fails {
                    t.push(
                        &format!("{path}/o{i}"),
                        RuleId::L3_6,
                        Verdict::Constrained,
                        "D2: the stubs cannot balance without a white vertex: w(Int D2) >= 1",
                        Check::CountChart {
                            chart: Box::new(chart),
                            anchor,
                            label: Binding::Lower.stub(),
                        },
                    );
                }
            }
            if !all_fail {
                t.note(
                    &path,
                    RuleId::L3_6,
                    Verdict::Constrained,
                    "D2 has both outside edges inward: w(Int D2) >= 1",
                );
            }
            t.note(
                &path,
                RuleId::L5_4,
                Verdict::Constrained,
                "components G, G1 (in D1) and G2 (in D2): type (3,2,2), w(G1) = w(G2) = 2",
            );
            t.note(
                &path,
                RuleId::L3_4,
                Verdict::Constrained,
                "G2 a theta-curve or an oval in D2 (with L3.6-axiom): w(Int D2) >= 3",
            );
            t.push(
                &path,
                RuleId::L5_4,
                Verdict::Refuted,
                "7 >= w(G) + w(G1) + w(Int D2) >= 3 + 2 + 3 = 8",
                Check::Overflow {
                    parts: vec![3, 2, 3],
                    total: WHITES,
                },
            );
            continue;
        }
        // (5,2)
        t.note(
            &path,
            RuleId::L6_2,
            Verdict::Constrained,
            "a ring or non-simple hoop of label m-1 or m+2 exists",
        );
        t.note(
            &path,
            RuleId::L6_1,
            Verdict::Constrained,
            "the side it separates is of type (5,2)",
        );
        t.note(
            &path,
            RuleId::L6_3,
            Verdict::Constrained,
            "(a) a face F of S^2 - G with w(F) = 2: 5 + w(F) <= 7, w(F) >= 2",
        );
        t.note(
            &path,
            RuleId::L6_3,
            Verdict::Constrained,
            "(b),(d) every other face of S^2 - G is white-free",
        );
        t.push(
            &format!("{path}/theta"),
            RuleId::L3_4,
            Verdict::Refuted,
            "a theta-curve in F forces w(F) >= 3: 5 + 3 = 8 > 7",
            Check::Overflow {
                parts: vec![5, 3],
                total: WHITES,
            },
        );
        t.note(
            &format!("{path}/oval"),
            RuleId::L3_1,
            Verdict::Constrained,
            "(c) F holds the oval template with (k=m, e=+1) or (k=m+1, e=-1); its disk meets a ring of the other label, so both Γ_m and Γ_{m+1} are of type (5,2)",
        );
        surviving.push(p.clone());
    }
    Ok(TypeRefinement {
        surviving,
        trace: t,
    })
}

/// One case of the gluing script.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseOutcome {
    pub rule: RuleId,
    pub completions: usize,
    pub refuted: bool,
    pub witness: String,
}

/// The gluing script on one surviving configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluingOutcome {
    pub branch: BranchKey,
    pub completions: usize,
    /// Completions in which the two stubs at w4 end at different vertices.
    pub split: usize,
    pub cases: Vec<CaseOutcome>,
}

impl GluingOutcome {
    pub fn refuted(&self) -> bool {
        self.cases.iter().all(|c| c.refuted)
    }
}

/// Summary of one elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fig12Summary {
    pub graph: char,
    pub verdict: Verdict,
    pub branches: usize,
    pub survivors: usize,
    pub agrees: bool,
}

impl From<&Fig12Outcome> for Fig12Summary {
    fn from(o: &Fig12Outcome) -> Self {
        Fig12Summary {
            graph: o.graph,
            verdict: o.verdict,
            branches: o.branches,
            survivors: o.survivors.len(),
            agrees: o.agrees(),
        }
    }
}

/// Result of the whole pipeline.
#[derive(Clone, Debug)]
pub struct TheoremReport {
    pub types: Vec<Vec<usize>>,
    pub fig12: Vec<Fig12Summary>,
    pub gluing: Vec<GluingOutcome>,
    /// True when every branch was refuted.
    pub refuted: bool,
    pub conclusion: String,
    pub trace: Trace,
}

/// Names of the label-(k+ε) stubs around graph (g) in the orientation of
/// the refined picture: `(vertex, preceding edge, name)`, where the
/// preceding edge is `T` for the terminal edge.
const STUB_NAMES: &[(&str, &str, &str)] = &[
    ("w1", "e2", "e1''"),
    ("w1", "T", "e1'"),
    ("w2", "e3", "e2''"),
    ("w2", "e1", "e2'"),
    ("w3", "e3", "e3'"),
    ("w3", "e4", "e3''"),
    ("w3", "e6", "e3'''"),
    ("w4", "T", "e4'"),
    ("w4", "e4", "e4''"),
    ("w5", "e5", "e5'"),
    ("w5", "T", "e5''"),
];

/// The two edges of D1 are named the other way round in the gluing picture
/// than in the reference graph.
const EDGE_SWAP: [(&str, &str); 2] = [("e1", "e2"), ("e2", "e1")];

/// Rename the edges and stubs of a configuration chart after the gluing
/// picture; the outside
/// stubs of the oval vertices become `e6'`, `e6''` and `e7'`, `e7''`
/// (single prime after an oval edge, double prime after the terminal edge).
pub fn name_stubs(chart: &mut Chart, emb: &Embedding, outside: Option<FaceId>) {
    for e in &mut chart.edges {
        if let Some((_, to)) = EDGE_SWAP.iter().find(|(from, _)| *from == e.name) {
            e.name = to.to_string();
        }
    }
    let mut renames = Vec::new();
    for v in &chart.vertices {
        if v.kind != VertexKind::White {
            continue;
        }
        for &d in &v.rotation {
            let e = chart.darts[d].edge;
            if chart.edges[e].is_complete() {
                continue;
            }
            let p = chart.prev_ccw(d);
            let pe = &chart.edges[chart.darts[p].edge];
            let other = pe
                .other(p)
                .map(|x| chart.vertices[chart.darts[x].vertex].kind);
            let prev = if other == Some(VertexKind::Black) {
                "T"
            } else {
                pe.name.as_str()
            };
            let name = if v.name == "w6" || v.name == "w7" {
                if outside.is_some_and(|f| emb.corner_face(chart, d) == f) {
                    let primes = if prev == "T" { "''" } else { "'" };
                    Some(format!("e{}{primes}", &v.name[1..]))
                } else {
                    None
                }
            } else {
                STUB_NAMES
                    .iter()
                    .find(|(w, pr, _)| *w == v.name && *pr == prev)
                    .map(|(_, _, n)| n.to_string())
            };
            if let Some(n) = name {
                renames.push((e, n));
            }
        }
    }
    for (e, n) in renames {
        chart.edges[e].name = n;
    }
}

fn slot_by_name(chart: &Chart, cycles: &BoundaryCycles, name: &str) -> Option<SlotRef> {
    cycles
        .slots()
        .into_iter()
        .find(|&r| chart.edges[chart.darts[cycles.slot(r).dart].edge].name == name)
}

fn vertex_name(chart: &Chart, v: usize) -> &str {
    &chart.vertices[v].name
}

/// Lens descriptions `chord ∪ edge` of a materialized chart, where the chord
/// is named by its tail stub.
pub fn lens_names(chart: &Chart, m: Label) -> Vec<String> {
    let Ok(emb) = Embedding::new(chart) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for l in detect_lenses_in(chart, &emb, m) {
        let (chords, edges): (Vec<usize>, Vec<usize>) =
            l.e1.iter()
                .chain(&l.e2)
                .copied()
                .partition(|&e| chart.edges[e].name.contains('='));
        if chords.len() != 1 || edges.len() != 1 {
            continue;
        }
        let chord = chart.edges[chords[0]]
            .name
            .split('=')
            .next()
            .unwrap_or_default()
            .to_string();
        out.push(format!("{chord} ∪ {}", chart.edges[edges[0]].name));
    }
    out.sort();
    out.dedup();
    out
}

/// Case (i): the two stubs at w4 end at w1.  Join them, and for every
/// position of the oval in the divided annulus find a face whose stubs
/// cannot balance.
fn case_i(
    cfg: &Config,
    key: &BranchKey,
    path: &str,
    t: &mut Trace,
) -> Result<CaseOutcome, EngineError> {
    let stub = key.config.binding.stub();
    let mut chart = cfg.chart.clone();
    name_stubs(&mut chart, &cfg.emb, None);
    let cycles = face_cycles(&chart, &cfg.emb, key.host, stub);
    let find = |n: &str| slot_by_name(&chart, &cycles, n);
    let (Some(a1), Some(a2), Some(b1), Some(b2)) =
        (find("e4'"), find("e4''"), find("e1'"), find("e1''"))
    else {
        return Ok(CaseOutcome {
            rule: RuleId::CaseI,
            completions: 0,
            refuted: false,
            witness: "stubs e4', e4'', e1', e1'' not found".into(),
        });
    };
    let mut planar = 0;
    let mut all_forced = true;
    for (x, y) in [(b1, b2), (b2, b1)] {
        let mut chords = vec![(a1, x), (a2, y)];
        chords.sort();
        let mat = materialize(
            &chart,
            &cycles,
            &Completion {
                chords,
                terminals: Vec::new(),
            },
        );
        let Ok(memb) = Embedding::new(&mat) else {
            t.note(
                path,
                RuleId::CaseI,
                Verdict::Refuted,
                format!("{}: the two chords cross", chord_list(&mat)),
            );
            continue;
        };
        planar += 1;
        // The parts of the annulus and one corner in each.
        let mut anchors: Vec<(FaceId, DartId)> = Vec::new();
        for d in 0..chart.darts.len() {
            if cfg.emb.corner_face(&chart, d) != key.host {
                continue;
            }
            let f = memb.corner_face(&mat, d);
            if !anchors.iter().any(|&(g, _)| g == f) {
                anchors.push((f, d));
            }
        }
        for (j, &(f, _)) in anchors.iter().enumerate() {
            let hc = place_oval(&mat, &memb, f, key.config.binding, key.reversed)?;
            let mut forced = None;
            for (i, &(_, d)) in anchors.iter().enumerate() {
                let face = hc.emb.corner_face(&hc.chart, d);
                let s = io_balance(&hc.chart, &hc.emb, &Region::single(face), stub, &[])?;
                if !s.balance_possible() {
                    let what = if i == j {
                        "holds the oval and"
                    } else {
                        "is white-free but"
                    };
                    let w = format!(
                        "{}; oval in part E{}: part E{} {what} has in {} out {} (optional {}/{}): needs a white vertex",
                        chord_list(&mat),
                        j + 1,
                        i + 1,
                        s.inward,
                        s.outward,
                        s.optional_inward,
                        s.optional_outward
                    );
                    forced = Some((w, hc.chart.clone(), d));
                    break;
                }
            }
            match forced {
                Some((w, c, d)) => t.push(
                    path,
                    RuleId::CaseI,
                    Verdict::Constrained,
                    w,
                    Check::CountChart {
                        chart: Box::new(c),
                        anchor: d,
                        label: stub,
                    },
                ),
                None => {
                    all_forced = false;
                    t.note(
                        path,
                        RuleId::CaseI,
                        Verdict::Survives,
                        format!("{}; oval in part E{}", chord_list(&mat), j + 1),
                    );
                }
            }
        }
    }
    let refuted = all_forced;
    let witness = if refuted {
        format!("{planar} planar joining(s) of e4', e4'' to w1, each forcing w(annulus) >= 2 + 1 = 3 > 2 against L6.3(d)")
    } else {
        "some placement balances".to_string()
    };
    let check = if refuted {
        Check::Overflow {
            parts: vec![2, 1],
            total: 2,
        }
    } else {
        Check::None
    };
    t.push(
        path,
        RuleId::CaseI,
        if refuted {
            Verdict::Refuted
        } else {
            Verdict::Survives
        },
        witness.clone(),
        check,
    );
    Ok(CaseOutcome {
        rule: RuleId::CaseI,
        completions: 0,
        refuted,
        witness,
    })
}

fn chord_list(chart: &Chart) -> String {
    let names: Vec<&str> = chart
        .edges
        .iter()
        .filter(|e| e.name.contains('='))
        .map(|e| e.name.as_str())
        .collect();
    names.join(", ")
}

/// Run the gluing script on a surviving branch of graph (g).
pub fn gluing(
    key: &BranchKey,
    opts: &EngineOptions,
    t: &mut Trace,
) -> Result<GluingOutcome, EngineError> {
    let cfg = Config::build(&key.config)?;
    let hc = cfg.host(key.host, key.reversed)?;
    let mut chart = hc.chart.clone();
    name_stubs(&mut chart, &hc.emb, Some(hc.face));
    let path = format!("gluing/{key}");
    let stub = key.config.binding.stub();
    let m = key.config.binding.k().min(stub);

    let e3 = chart.edge_by_name("e3");
    let mid = e3.map(|e| {
        let ed = &chart.edges[e];
        (
            ed.tail.is_some_and(|d| chart.is_middle(d)),
            ed.head.is_some_and(|d| chart.is_middle(d)),
        )
    });
    let l151 = match mid {
        Some((true, false)) => {
            "D1, D2 white-free, the oval in the annulus; e3 is middle at w2 but not at w3"
        }
        _ => "D1, D2 white-free, the oval in the annulus; e3 middle pattern differs",
    };
    t.note(&path, RuleId::L15_1, Verdict::Constrained, l151);
    t.note(
        &path,
        RuleId::Claim1,
        Verdict::Constrained,
        "e3'' = e, w3 = v3, w4 = v2 (prose-derived: Γ_{m+1} contains graph (g) and an oval with k=m+1)",
    );
    t.note(
        &path,
        RuleId::Claim2,
        Verdict::Constrained,
        "C = e4' ∪ e4'' through w4; e3''' = e2''; C' = e3' ∪ e3''' ∪ e2' (prose-derived)",
    );

    let cycles = face_cycles(&chart, &hc.emb, hc.face, stub);
    let all = solve(
        &cycles,
        PairingOptions {
            forbid_lens: false,
            forbid_loop: true,
            limit: None,
        },
    );
    let w4 = chart.vertex_by_name("w4");
    let mut parts: [Vec<Completion>; 4] = Default::default();
    for c in &all {
        let partners: BTreeSet<&str> = c
            .chords
            .iter()
            .filter(|(p, _)| Some(cycles.slot(*p).vertex) == w4)
            .map(|(_, q)| vertex_name(&chart, cycles.slot(*q).vertex))
            .collect();
        let idx = match partners.iter().copied().collect::<Vec<_>>().as_slice() {
            ["w1"] => 0,
            ["w5"] => 1,
            ["w6"] => 2,
            _ => 3,
        };
        parts[idx].push(c.clone());
    }
    let sizes: Vec<usize> = parts.iter().map(Vec::len).collect();
    debug_assert_eq!(sizes.iter().sum::<usize>(), all.len());
    t.note(
        &path,
        RuleId::BranchSet,
        Verdict::Constrained,
        format!(
            "{} planar loop-free completions of the annulus: v1 = w1: {}, v1 = w5: {}, v1 = w6: {}, e4' and e4'' apart: {} (sum {})",
            all.len(),
            sizes[0],
            sizes[1],
            sizes[2],
            sizes[3],
            sizes.iter().sum::<usize>()
        ),
    );
    t.note(
        &path,
        RuleId::Claim2,
        Verdict::Refuted,
        format!(
            "{} completions send e4', e4'' to different vertices, contradicting C = e4' ∪ e4''",
            sizes[3]
        ),
    );

    let mut cases = vec![case_i(&cfg, key, &path, t)?];
    for (rule, idx) in [(RuleId::CaseII, 1usize), (RuleId::CaseIII, 2usize)] {
        let mats: Vec<Chart> = parts[idx]
            .iter()
            .map(|c| materialize(&chart, &cycles, c))
            .collect();
        let names: Vec<Vec<String>> = mats.iter().map(|c| lens_names(c, m)).collect();
        let common: Vec<String> = names
            .first()
            .map(|first| {
                first
                    .iter()
                    .filter(|n| names.iter().all(|ns| ns.contains(n)))
                    .cloned()
                    .collect()
            })
            .unwrap_or_default();
        let every = names.iter().all(|ns| !ns.is_empty());
        let lens_desc = if common.is_empty() {
            "an edge pair".to_string()
        } else {
            common.join(", ")
        };
        let n = mats.len();
        let (refuted, witness) = if n == 0 {
            (true, "no completion (vacuous)".to_string())
        } else if !every {
            (false, format!("{n} completion(s), some without a lens"))
        } else if opts.lens_axiom {
            (
                true,
                format!("{lens_desc} bounds a lens in each of {n} completion(s) (L10.1-axiom)"),
            )
        } else {
            (false, format!("{lens_desc} bounds a lens in each of {n} completion(s), but L10.1-axiom is disabled"))
        };
        let check = if refuted && n > 0 {
            Check::LensAll {
                charts: mats,
                label: m,
            }
        } else {
            Check::None
        };
        t.push(
            &path,
            rule,
            if refuted {
                Verdict::Refuted
            } else {
                Verdict::Survives
            },
            witness.clone(),
            check,
        );
        cases.push(CaseOutcome {
            rule,
            completions: n,
            refuted,
            witness,
        });
    }
    Ok(GluingOutcome {
        branch: key.clone(),
        completions: all.len(),
        split: sizes[3],
        cases,
    })
}

/// Index of the refined picture's orientation among the orientations of
/// graph (g).
fn fig13f_orientation() -> Option<usize> {
    let g = reference_graph(ClassKind::Fig12('g'))?;
    let f = fig13f();
    g.all_orientations(true)
        .iter()
        .position(|o| Some(o) == f.orientation.as_ref())
}

/// The full pipeline: type refinement, elimination, gluing.
pub fn run_pipeline(opts: &EngineOptions) -> Result<TheoremReport, EngineError> {
    let refinement = check_type_refinement(None)?;
    let mut trace = refinement.trace;
    let mut ok = refinement.surviving == vec![vec![5, 2]];
    trace.note("fig12", RuleId::L5_3, Verdict::Constrained, "no loops");
    let graphs: Vec<char> = if opts.only_g {
        vec!['g']
    } else {
        FIG12_IDS.to_vec()
    };
    let restriction = if opts.only_g {
        " (enumeration restricted to graph (g))"
    } else {
        ""
    };
    trace.note(
        "fig12",
        RuleId::L7_1,
        Verdict::Constrained,
        format!(
            "the five-vertex component is one of the graphs {}{restriction}",
            graphs.iter().collect::<String>()
        ),
    );
    let mut fig12 = Vec::new();
    let mut g_survivors = Vec::new();
    for &g in &graphs {
        let o = eliminate_fig12(g, opts)?;
        fig12.push(Fig12Summary::from(&o));
        ok &= o.agrees();
        if g == 'g' {
            g_survivors = o.survivors.clone();
        } else if o.verdict != Verdict::Refuted {
            ok = false;
        }
        trace.extend(o.trace);
    }
    let bindings: BTreeSet<Binding> = g_survivors.iter().map(|k| k.config.binding).collect();
    let both = bindings.len() == 2;
    trace.note(
        "fig12",
        RuleId::P14_2,
        if both {
            Verdict::Constrained
        } else {
            Verdict::Refuted
        },
        format!("graph (g) survives for {} of 2 bindings", bindings.len()),
    );
    let target = fig13f_orientation();
    let chosen: Vec<&BranchKey> = g_survivors
        .iter()
        .filter(|k| k.config.binding == Binding::Lower && Some(k.config.orientation) == target)
        .collect();
    trace.note(
        "gluing",
        RuleId::L7_2,
        Verdict::Constrained,
        format!(
            "up to the RO-family, graph (g) in the refined orientation: {} surviving branch(es)",
            chosen.len()
        ),
    );
    let mut gluing_out = Vec::new();
    let mut stray = Vec::new();
    for key in chosen {
        let cfg = Config::build(&key.config)?;
        if cfg.disks[key.host].is_some() {
            // The oval sits inside D1 or D2 rather than in the annulus.
            trace.note(
                &format!("gluing/{key}"),
                RuleId::L15_1,
                Verdict::Survives,
                format!(
                    "the oval lies in the {}; not covered by the gluing script",
                    cfg.disk_name(key.host)
                ),
            );
            stray.push(key.to_string());
            continue;
        }
        let g = gluing(key, opts, &mut trace)?;
        gluing_out.push(g);
    }
    let all_refuted =
        stray.is_empty() && !gluing_out.is_empty() && gluing_out.iter().all(GluingOutcome::refuted);
    let refuted = ok && all_refuted;
    let conclusion = if refuted {
        "refuted: no minimal chart of type (m;7)".to_string()
    } else {
        let mut surv: Vec<String> = stray
            .iter()
            .map(|k| format!("{k} (oval outside the annulus)"))
            .collect();
        for g in &gluing_out {
            for c in g.cases.iter().filter(|c| !c.refuted) {
                surv.push(format!("{} {}", g.branch, c.rule));
            }
        }
        if gluing_out.is_empty() {
            surv.push("no configuration of graph (g) reached the gluing script".into());
        }
        format!("pipeline failure: surviving {}", surv.join("; "))
    };
    trace.note(
        "theorem",
        RuleId::Conclusion,
        if refuted {
            Verdict::Refuted
        } else {
            Verdict::Survives
        },
        &conclusion,
    );
    Ok(TheoremReport {
        types: refinement.surviving,
        fig12,
        gluing: gluing_out,
        refuted,
        conclusion,
        trace,
    })
}

/// The configuration keys of graph (g) in the refined orientation.
pub fn fig13f_configs() -> Vec<ConfigKey> {
    let Some(o) = fig13f_orientation() else {
        return Vec::new();
    };
    Binding::ALL
        .iter()
        .flat_map(|&b| super::config::config_keys('g', b).unwrap_or_default())
        .filter(|k| k.orientation == o)
        .collect()
}
