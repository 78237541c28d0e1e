//! Regions of a chart: k-angled disks, lenses, IO-Calculation.
//!
//! A region is a set of faces of the chart's embedding.  Closed walks of
//! Γ_m bound disks (both complementary sides are reported), two arcs of
//! adjacent labels may bound a lens, and IO-Calculation compares inward and
//! outward label-k arcs inside a region.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::embed::{EmbedError, Embedding, FaceId};
use crate::model::{
    Chart, ChartBuilder, DartId, Direction, EdgeId, Label, ModelError, VertexId, VertexKind,
};
use crate::pairing::{self, BoundaryCycles, PairingOptions};
use crate::subgraph::{self, Arc, EdgeRole};

/// Errors raised by region analyses.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RegionError {
    #[error(transparent)]
    Embed(#[from] EmbedError),
    #[error("boundary edge {edge} has label {label}, outside {lo}..={hi}")]
    BoundaryLabel {
        edge: String,
        label: Label,
        lo: Label,
        hi: Label,
    },
    #[error("face {face} does not exist (the chart has {count} faces)")]
    UnknownFace { face: FaceId, count: usize },
    #[error("unsupported region: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// A union of faces.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Region {
    pub faces: BTreeSet<FaceId>,
}

impl Region {
    pub fn new(faces: impl IntoIterator<Item = FaceId>) -> Region {
        Region {
            faces: faces.into_iter().collect(),
        }
    }

    pub fn single(face: FaceId) -> Region {
        Region::new([face])
    }

    pub fn contains(&self, f: FaceId) -> bool {
        self.faces.contains(&f)
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    /// Faces of `self` not in `other` (closure of the set difference).
    pub fn difference(&self, other: &Region) -> Region {
        Region {
            faces: self.faces.difference(&other.faces).copied().collect(),
        }
    }

    fn check(&self, emb: &Embedding) -> Result<(), RegionError> {
        match self.faces.iter().find(|&&f| f >= emb.face_count) {
            Some(&face) => Err(RegionError::UnknownFace {
                face,
                count: emb.face_count,
            }),
            None => Ok(()),
        }
    }
}

/// A disk bounded by a simple closed walk of Γ_m through white vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AngledDisk {
    pub region: Region,
    pub label: Label,
    /// Number of white vertices on the boundary.
    pub k: usize,
    /// Boundary arcs in walk order with the traversal sense: `true` when the
    /// walk follows the arc's own orientation.
    pub boundary: Vec<(Vec<EdgeId>, bool)>,
    /// White vertices on the boundary, in walk order.
    pub whites: Vec<VertexId>,
    /// Label-m arcs leaving a boundary white vertex into the disk.
    pub feelers: Vec<Vec<EdgeId>>,
    /// Roles of the feelers.
    pub feeler_roles: Vec<EdgeRole>,
    /// The label-m darts at boundary white vertices that start a feeler.
    pub feeler_darts: Vec<DartId>,
    /// The label-m darts at boundary white vertices on the other side.
    pub outside_darts: Vec<DartId>,
    pub crossings_on_boundary: usize,
}

impl AngledDisk {
    /// Every feeler is a terminal edge (vacuously true without feelers).
    pub fn is_special(&self) -> bool {
        self.feeler_roles.iter().all(|&r| r == EdgeRole::Terminal)
    }

    pub fn feeler_count(&self) -> usize {
        self.feelers.len()
    }

    /// All boundary edges.
    pub fn boundary_edges(&self) -> Vec<EdgeId> {
        self.boundary
            .iter()
            .flat_map(|(es, _)| es.iter().copied())
            .collect()
    }
}

/// Orientation of a disk boundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundaryOrientation {
    /// Clockwise or anticlockwise.
    Coherent,
    Mixed,
}

/// Whether the boundary walk traverses every arc along (or every arc
/// against) its orientation.
pub fn boundary_orientation(disk: &AngledDisk) -> BoundaryOrientation {
    let all_fwd = disk.boundary.iter().all(|(_, f)| *f);
    let all_back = disk.boundary.iter().all(|(_, f)| !*f);
    if all_fwd || all_back {
        BoundaryOrientation::Coherent
    } else {
        BoundaryOrientation::Mixed
    }
}

/// An arc with both ends at (distinct or equal) white vertices.
struct WhiteArc<'a> {
    arc: &'a Arc,
    a: VertexId,
    b: VertexId,
    start: DartId,
    end: DartId,
}

fn white_arcs<'a>(chart: &Chart, arcs: &'a [Arc]) -> Vec<WhiteArc<'a>> {
    let white = |d: DartId| chart.vertices[chart.darts[d].vertex].kind == VertexKind::White;
    arcs.iter()
        .filter_map(|arc| {
            let (s, e) = (arc.start?, arc.end?);
            (white(s) && white(e)).then(|| WhiteArc {
                arc,
                a: chart.darts[s].vertex,
                b: chart.darts[e].vertex,
                start: s,
                end: e,
            })
        })
        .collect()
}

/// True when the arc's edges run from its `start` dart to its `end` dart.
fn arc_forward(chart: &Chart, wa: &WhiteArc<'_>) -> bool {
    chart.direction(wa.start) == Direction::Outward
}

/// Simple cycles of the multigraph on white vertices, as sequences of
/// `(arc index, traversed from a to b)`.
fn simple_cycles(arcs: &[WhiteArc<'_>]) -> Vec<Vec<(usize, bool)>> {
    let mut out: Vec<Vec<(usize, bool)>> = Vec::new();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    for (i, wa) in arcs.iter().enumerate() {
        if wa.a == wa.b && seen.insert(vec![i]) {
            out.push(vec![(i, true)]);
        }
    }
    let mut verts: Vec<VertexId> = arcs.iter().flat_map(|w| [w.a, w.b]).collect();
    verts.sort_unstable();
    verts.dedup();
    fn dfs(
        arcs: &[WhiteArc<'_>],
        start: VertexId,
        cur: VertexId,
        visited: &mut Vec<VertexId>,
        path: &mut Vec<(usize, bool)>,
        seen: &mut BTreeSet<Vec<usize>>,
        out: &mut Vec<Vec<(usize, bool)>>,
    ) {
        for (i, wa) in arcs.iter().enumerate() {
            if wa.a == wa.b || path.iter().any(|&(j, _)| j == i) {
                continue;
            }
            let (next, fwd) = if wa.a == cur {
                (wa.b, true)
            } else if wa.b == cur {
                (wa.a, false)
            } else {
                continue;
            };
            if next == start {
                if path.is_empty() {
                    continue;
                }
                path.push((i, fwd));
                let mut key: Vec<usize> = path.iter().map(|&(j, _)| j).collect();
                key.sort_unstable();
                if seen.insert(key) {
                    out.push(path.clone());
                }
                path.pop();
            } else if next > start && !visited.contains(&next) {
                visited.push(next);
                path.push((i, fwd));
                dfs(arcs, start, next, visited, path, seen, out);
                path.pop();
                visited.pop();
            }
        }
    }
    for &s in &verts {
        let mut visited = vec![s];
        dfs(
            arcs,
            s,
            s,
            &mut visited,
            &mut Vec::new(),
            &mut seen,
            &mut out,
        );
    }
    out
}

/// Every disk bounded by a simple closed walk of Γ_m through at least one
/// white vertex; both sides of each walk are reported.
pub fn find_angled_disks(chart: &Chart, m: Label) -> Result<Vec<AngledDisk>, RegionError> {
    let emb = Embedding::new(chart)?;
    Ok(find_angled_disks_in(chart, &emb, m))
}

/// [`find_angled_disks`] with a precomputed embedding.
pub fn find_angled_disks_in(chart: &Chart, emb: &Embedding, m: Label) -> Vec<AngledDisk> {
    let sub = subgraph::extract_unchecked(chart, m);
    let roles = subgraph::arc_roles(chart, &sub);
    let arcs = white_arcs(chart, &sub.arcs);
    let mut out = Vec::new();
    for cycle in simple_cycles(&arcs) {
        let edges: BTreeSet<EdgeId> = cycle
            .iter()
            .flat_map(|&(i, _)| arcs[i].arc.edges.iter().copied())
            .collect();
        let (dom, n) = emb.domains_excluding(chart, |e| edges.contains(&e), |_| false);
        if n != 2 {
            continue;
        }
        let whites: Vec<VertexId> = cycle
            .iter()
            .map(|&(i, fwd)| if fwd { arcs[i].a } else { arcs[i].b })
            .collect();
        let boundary_darts: BTreeSet<DartId> = cycle
            .iter()
            .flat_map(|&(i, _)| [arcs[i].start, arcs[i].end])
            .collect();
        let boundary: Vec<(Vec<EdgeId>, bool)> = cycle
            .iter()
            .map(|&(i, fwd)| {
                (
                    arcs[i].arc.edges.clone(),
                    arc_forward(chart, &arcs[i]) == fwd,
                )
            })
            .collect();
        let crossings: usize = cycle
            .iter()
            .map(|&(i, _)| arcs[i].arc.crossings.len())
            .sum();
        for side in 0..2 {
            let region = Region::new((0..emb.face_count).filter(|&f| dom[f] == side));
            let mut feelers: Vec<usize> = Vec::new();
            let (mut feeler_darts, mut outside_darts) = (Vec::new(), Vec::new());
            for &v in &whites {
                for &d in &chart.vertices[v].rotation {
                    if chart.label(d) != m || boundary_darts.contains(&d) {
                        continue;
                    }
                    if dom[emb.corner_face(chart, d)] != side {
                        outside_darts.push(d);
                        continue;
                    }
                    feeler_darts.push(d);
                    let e = chart.darts[d].edge;
                    if let Some(ai) = sub.arcs.iter().position(|a| a.edges.contains(&e)) {
                        if !feelers.contains(&ai) {
                            feelers.push(ai);
                        }
                    }
                }
            }
            feelers.sort_unstable();
            out.push(AngledDisk {
                region,
                label: m,
                k: whites.len(),
                boundary: boundary.clone(),
                whites: whites.clone(),
                feeler_roles: feelers.iter().map(|&a| roles[a]).collect(),
                feelers: feelers.iter().map(|&a| sub.arcs[a].edges.clone()).collect(),
                feeler_darts,
                outside_darts,
                crossings_on_boundary: crossings,
            });
        }
    }
    out
}

/// The pair `(w(Γ ∩ Int D), c(Γ ∩ ∂D))`, compared lexicographically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct LocalComplexity {
    pub interior_whites: usize,
    pub boundary_crossings: usize,
}

/// White vertices in the interior of a region (not on any boundary edge).
pub fn interior_whites(
    chart: &Chart,
    emb: &Embedding,
    region: &Region,
    boundary: &[EdgeId],
) -> usize {
    chart
        .vertices
        .iter()
        .filter(|v| v.kind == VertexKind::White)
        .filter(|v| {
            !v.rotation
                .iter()
                .any(|&d| boundary.contains(&chart.darts[d].edge))
        })
        .filter(|v| region.contains(emb.corner_face(chart, v.rotation[0])))
        .count()
}

/// Local complexity of a chart with respect to a disk.
pub fn local_complexity(chart: &Chart, disk: &AngledDisk) -> Result<LocalComplexity, RegionError> {
    let emb = Embedding::new(chart)?;
    Ok(LocalComplexity {
        interior_whites: interior_whites(chart, &emb, &disk.region, &disk.boundary_edges()),
        boundary_crossings: disk.crossings_on_boundary,
    })
}

/// Which alternative of the lens definition holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum LensCondition {
    /// Neither boundary edge contains a middle arc.
    NoMiddle,
    /// One boundary edge is middle at both white vertices.
    MiddleAtBoth,
}

/// A lens of type `(m, m+1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lens {
    pub label: Label,
    /// The label-m boundary edge (chart edges of the arc).
    pub e1: Vec<EdgeId>,
    /// The label-(m+1) boundary edge.
    pub e2: Vec<EdgeId>,
    pub whites: [VertexId; 2],
    pub region: Region,
    pub condition: LensCondition,
}

/// The lens conditions on middle arcs, given middle flags of both edges at
/// both white vertices.  `None` when neither alternative holds.
pub fn lens_condition(e1_middle: [bool; 2], e2_middle: [bool; 2]) -> Option<LensCondition> {
    if !e1_middle.iter().chain(&e2_middle).any(|&b| b) {
        Some(LensCondition::NoMiddle)
    } else if e1_middle == [true, true] || e2_middle == [true, true] {
        Some(LensCondition::MiddleAtBoth)
    } else {
        None
    }
}

/// All lenses of type `(m, m+1)`.
pub fn detect_lenses(chart: &Chart, m: Label) -> Result<Vec<Lens>, RegionError> {
    let emb = Embedding::new(chart)?;
    Ok(detect_lenses_in(chart, &emb, m))
}

/// Lenses of every type `(m, m+1)` with `1 ≤ m < m+1 < degree`.
pub fn detect_all_lenses(chart: &Chart) -> Result<Vec<Lens>, RegionError> {
    let emb = Embedding::new(chart)?;
    Ok((1..chart.degree.saturating_sub(1))
        .flat_map(|m| detect_lenses_in(chart, &emb, m))
        .collect())
}

/// [`detect_lenses`] with a precomputed embedding.
pub fn detect_lenses_in(chart: &Chart, emb: &Embedding, m: Label) -> Vec<Lens> {
    let lo = subgraph::extract_unchecked(chart, m);
    let hi = subgraph::extract_unchecked(chart, m + 1);
    let lo_arcs = white_arcs(chart, &lo.arcs);
    let hi_arcs = white_arcs(chart, &hi.arcs);
    let mut out = Vec::new();
    for a1 in &lo_arcs {
        if a1.a == a1.b {
            continue;
        }
        for a2 in &hi_arcs {
            let same = (a2.a, a2.b) == (a1.a, a1.b) || (a2.a, a2.b) == (a1.b, a1.a);
            if !same {
                continue;
            }
            let (v1, v2) = (a1.a, a1.b);
            // Darts of each arc at v1 and v2.
            let at = |wa: &WhiteArc<'_>, v: VertexId| if wa.a == v { wa.start } else { wa.end };
            let e1_middle = [chart.is_middle(at(a1, v1)), chart.is_middle(at(a1, v2))];
            let e2_middle = [chart.is_middle(at(a2, v1)), chart.is_middle(at(a2, v2))];
            let Some(condition) = lens_condition(e1_middle, e2_middle) else {
                continue;
            };
            let edges: BTreeSet<EdgeId> =
                a1.arc.edges.iter().chain(&a2.arc.edges).copied().collect();
            let (dom, n) = emb.domains_excluding(chart, |e| edges.contains(&e), |_| false);
            if n != 2 {
                continue;
            }
            let own = [a1.start, a1.end, a2.start, a2.end];
            for side in 0..2 {
                let intrudes = [v1, v2].iter().any(|&v| {
                    chart.vertices[v]
                        .rotation
                        .iter()
                        .any(|&d| !own.contains(&d) && dom[emb.corner_face(chart, d)] == side)
                });
                if intrudes {
                    continue;
                }
                out.push(Lens {
                    label: m,
                    e1: a1.arc.edges.clone(),
                    e2: a2.arc.edges.clone(),
                    whites: [v1.min(v2), v1.max(v2)],
                    region: Region::new((0..emb.face_count).filter(|&f| dom[f] == side)),
                    condition,
                });
            }
        }
    }
    out
}

/// Inward and outward label-k arcs inside a region.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IOBalanceSheet {
    pub region: Region,
    pub label: Label,
    pub inward: usize,
    pub outward: usize,
    /// Inward open stubs that are middle at their white vertex and so may
    /// be terminal edges ending at a black vertex inside the region.
    pub optional_inward: usize,
    /// Outward open stubs that are middle at their white vertex.
    pub optional_outward: usize,
}

impl IOBalanceSheet {
    /// The counts agree.
    pub fn is_balanced(&self) -> bool {
        self.inward == self.outward
    }

    /// Some choice of middle stubs as terminal edges (each contributing an
    /// arc of each sense) balances the counts without further white vertices.
    pub fn balance_possible(&self) -> bool {
        let lo_in = self.inward - self.optional_inward;
        let lo_out = self.outward - self.optional_outward;
        // Ranges [lo_in, inward] and [lo_out, outward] must intersect.
        lo_in <= self.outward && lo_out <= self.inward
    }
}

/// Check that every edge and hoop separating the region from its
/// complement has a label in `k−1 ..= k+1`.
fn check_boundary_labels(
    chart: &Chart,
    emb: &Embedding,
    region: &Region,
    k: Label,
) -> Result<(), RegionError> {
    let (lo, hi) = (
        k.saturating_sub(1).max(1),
        (k + 1).min(chart.degree.saturating_sub(1)),
    );
    for (e, ed) in chart.edges.iter().enumerate() {
        let [a, b] = emb.edge_sides(e);
        if region.contains(a) != region.contains(b) && !(lo..=hi).contains(&ed.label) {
            return Err(RegionError::BoundaryLabel {
                edge: ed.name.clone(),
                label: ed.label,
                lo,
                hi,
            });
        }
    }
    for (h, hp) in chart.hoops.iter().enumerate() {
        let [a, b] = emb.hoop_sides(h);
        if region.contains(a) != region.contains(b) && !(lo..=hi).contains(&hp.label) {
            return Err(RegionError::BoundaryLabel {
                edge: hp.name.clone(),
                label: hp.label,
                lo,
                hi,
            });
        }
    }
    Ok(())
}

/// Count label-k arcs inside `region`: every dart of label `k` whose short
/// arc lies in the region, with directions taken from `fixed` where given.
/// Open middle stubs are reported as optional terminal edges.
pub fn io_balance(
    chart: &Chart,
    emb: &Embedding,
    region: &Region,
    k: Label,
    fixed: &[(DartId, Direction)],
) -> Result<IOBalanceSheet, RegionError> {
    region.check(emb)?;
    check_boundary_labels(chart, emb, region, k)?;
    let mut sheet = IOBalanceSheet {
        region: region.clone(),
        label: k,
        inward: 0,
        outward: 0,
        optional_inward: 0,
        optional_outward: 0,
    };
    for d in 0..chart.darts.len() {
        if chart.label(d) != k {
            continue;
        }
        let inside = region.contains(emb.corner_face(chart, d))
            || region.contains(emb.corner_face(chart, chart.prev_ccw(d)));
        if !inside {
            continue;
        }
        let dir = fixed
            .iter()
            .find(|&&(x, _)| x == d)
            .map_or(chart.direction(d), |&(_, dir)| dir);
        let open = !chart.edges[chart.darts[d].edge].is_complete();
        let optional = open && chart.is_middle(d);
        match dir {
            Direction::Inward => {
                sheet.inward += 1;
                sheet.optional_inward += usize::from(optional);
            }
            Direction::Outward => {
                sheet.outward += 1;
                sheet.optional_outward += usize::from(optional);
            }
        }
    }
    Ok(sheet)
}

/// Rule switches for [`min_white_lower_bound`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CompletionRules {
    pub forbid_lens: bool,
    pub forbid_loop: bool,
}

impl Default for CompletionRules {
    fn default() -> Self {
        CompletionRules {
            forbid_lens: true,
            forbid_loop: true,
        }
    }
}

/// The boundary of a single face as cyclic item sequences for the pairing
/// solver, after checking the IO-Calculation precondition.
pub fn face_boundary(
    chart: &Chart,
    emb: &Embedding,
    face: FaceId,
    k: Label,
) -> Result<BoundaryCycles, RegionError> {
    let region = Region::single(face);
    region.check(emb)?;
    check_boundary_labels(chart, emb, &region, k)?;
    Ok(pairing::face_cycles(chart, emb, face, k))
}

/// Lower bound for the number of white vertices inside a face: 0 when the
/// open label-k stubs of the face can be joined into a planar completion
/// without white vertices (chords and terminal edges at middle stubs),
/// otherwise 1.  The region must be a single face with at most two boundary
/// components.
pub fn min_white_lower_bound(
    chart: &Chart,
    emb: &Embedding,
    region: &Region,
    k: Label,
    rules: CompletionRules,
) -> Result<usize, RegionError> {
    if region.faces.len() != 1 {
        return Err(RegionError::Unsupported(format!(
            "{} faces (a single face is required)",
            region.faces.len()
        )));
    }
    let face = *region.faces.iter().next().expect("one face");
    let cycles = face_boundary(chart, emb, face, k)?;
    if cycles.cycles.len() > 2 {
        return Err(RegionError::Unsupported(format!(
            "{} boundary components (at most 2)",
            cycles.cycles.len()
        )));
    }
    let opts = PairingOptions {
        forbid_lens: rules.forbid_lens,
        forbid_loop: rules.forbid_loop,
        limit: Some(1),
    };
    Ok(usize::from(pairing::solve(&cycles, opts).is_empty()))
}

/// Pseudo-chart templates used by the case analysis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum TemplateId {
    Fig3a,
    Fig3b,
    Fig9a,
    Fig9b,
    Fig11Oval,
}

/// A template with its label binding `k` and sign `ε`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PseudoChartTemplate {
    pub id: TemplateId,
    pub k: Label,
    pub epsilon: i8,
}

impl PseudoChartTemplate {
    /// The oval template bound to `(k = m, ε = +1)` or `(k = m+1, ε = −1)`.
    pub fn oval(m: Label, upper: bool) -> PseudoChartTemplate {
        if upper {
            PseudoChartTemplate {
                id: TemplateId::Fig11Oval,
                k: m + 1,
                epsilon: -1,
            }
        } else {
            PseudoChartTemplate {
                id: TemplateId::Fig11Oval,
                k: m,
                epsilon: 1,
            }
        }
    }

    /// True when the binding is one the template allows relative to `m`.
    pub fn binding_is_valid(&self, m: Label) -> bool {
        match self.id {
            TemplateId::Fig11Oval => {
                (self.k == m && self.epsilon == 1) || (self.k == m + 1 && self.epsilon == -1)
            }
            _ => self.epsilon == 1 || self.epsilon == -1,
        }
    }

    /// Label of the accompanying stubs, `k + ε`.
    pub fn stub_label(&self) -> Label {
        if self.epsilon > 0 {
            self.k + 1
        } else {
            self.k - 1
        }
    }
}

/// Build the oval pseudo chart: two white vertices `<p>w1`, `<p>w2` joined
/// by two label-k edges oriented from `<p>w1` to `<p>w2`, a terminal edge at
/// each (both in the same complementary domain, the outside), and a stub of
/// label `k + ε` in every corner, directed as condition (iii) requires.
/// Inside the feelerless disk the two stubs are middle; outside, `<p>w1`
/// carries two inward and `<p>w2` two outward stubs.  With `reverse` every
/// direction is flipped.
pub fn oval_chart(
    degree: u32,
    t: PseudoChartTemplate,
    prefix: &str,
    reverse: bool,
) -> Result<Chart, RegionError> {
    let mut b = ChartBuilder::new(degree);
    let (n1, n2) = (format!("{prefix}w1"), format!("{prefix}w2"));
    oval_into(&mut b, t, [&n1, &n2], prefix, reverse);
    Ok(b.build()?)
}

/// Add the oval template to a builder (see [`oval_chart`]) with the given
/// vertex names; edges are named `<p>e1`, `<p>t1`, `<p>s1`, ….  Returns the
/// (pre-build) terminal dart at the first vertex, whose corner lies in the
/// outside domain.
pub fn oval_into(
    b: &mut ChartBuilder,
    t: PseudoChartTemplate,
    names: [&str; 2],
    prefix: &str,
    reverse: bool,
) -> DartId {
    let (k, s) = (t.k, t.stub_label());
    let w1 = b.vertex(names[0], VertexKind::White);
    let w2 = b.vertex(names[1], VertexKind::White);
    // Rotation at w1: e1, s_in(disk), e2, s_out, t, s_out  (counter-clockwise)
    // with e1, e2 outward, terminal inward; the mirror image at w2.
    let out = |d: Direction| if reverse { d.flip() } else { d };
    let a1 = b.dart(w1);
    let sa1 = b.dart(w1);
    let a2 = b.dart(w1);
    let sa2 = b.dart(w1);
    let ta = b.dart(w1);
    let sa3 = b.dart(w1);
    let c2 = b.dart(w2);
    let sc1 = b.dart(w2);
    let c1 = b.dart(w2);
    let sc2 = b.dart(w2);
    let tc = b.dart(w2);
    let sc3 = b.dart(w2);
    let edge = |b: &mut ChartBuilder,
                name: &str,
                label: Label,
                from: Option<DartId>,
                to: Option<DartId>,
                d: Direction| {
        if out(d) == Direction::Outward {
            b.edge(name, label, from, to)
        } else {
            b.edge(name, label, to, from)
        }
    };
    edge(
        b,
        &format!("{prefix}e1"),
        k,
        Some(a1),
        Some(c1),
        Direction::Outward,
    );
    edge(
        b,
        &format!("{prefix}e2"),
        k,
        Some(a2),
        Some(c2),
        Direction::Outward,
    );
    let bl1 = b.vertex(&format!("{prefix}b1"), VertexKind::Black);
    let bl2 = b.vertex(&format!("{prefix}b2"), VertexKind::Black);
    let bd1 = b.dart(bl1);
    let bd2 = b.dart(bl2);
    edge(
        b,
        &format!("{prefix}t1"),
        k,
        Some(ta),
        Some(bd1),
        Direction::Inward,
    );
    edge(
        b,
        &format!("{prefix}t2"),
        k,
        Some(tc),
        Some(bd2),
        Direction::Outward,
    );
    // The disk stub at w1 is opposite the inward terminal, hence outward;
    // the two stubs flanking the terminal are inward.
    edge(
        b,
        &format!("{prefix}s1"),
        s,
        Some(sa1),
        None,
        Direction::Outward,
    );
    edge(
        b,
        &format!("{prefix}s2"),
        s,
        Some(sa2),
        None,
        Direction::Inward,
    );
    edge(
        b,
        &format!("{prefix}s3"),
        s,
        Some(sa3),
        None,
        Direction::Inward,
    );
    edge(
        b,
        &format!("{prefix}s4"),
        s,
        Some(sc1),
        None,
        Direction::Inward,
    );
    edge(
        b,
        &format!("{prefix}s5"),
        s,
        Some(sc2),
        None,
        Direction::Outward,
    );
    edge(
        b,
        &format!("{prefix}s6"),
        s,
        Some(sc3),
        None,
        Direction::Outward,
    );
    ta
}
