//! The label subgraph Γ_m of a chart.
//!
//! Γ_m is the union of all edges of label `m`.  Crossings are smoothed: the
//! two label-m darts at a crossing are interior points of one *arc*, so an
//! arc runs between white/black vertices (or open stub ends) and may pass
//! through any number of crossings.  A closed arc through crossings only is
//! a ring candidate; hoops are kept separately.

use std::collections::BTreeMap;

use crate::component::{AbstractComponent, Orientation, Slot};
use crate::embed::Embedding;
use crate::model::{
    Chart, Clause, DartId, Direction, EdgeId, HoopId, Label, VertexId, VertexKind, Violation,
};
use crate::reference;

/// An arc of Γ_m after smoothing crossings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arc {
    /// Chart edges along the arc, from `start` to `end`.
    pub edges: Vec<EdgeId>,
    /// Dart at the first end (at a white or black vertex), `None` if open.
    pub start: Option<DartId>,
    /// Dart at the last end, `None` if open.
    pub end: Option<DartId>,
    /// Crossings passed through, in order.
    pub crossings: Vec<VertexId>,
    /// True for a closed arc through crossings only.
    pub closed: bool,
}

/// Γ_m with vertex incidences and middle marks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelSubgraph {
    pub label: Label,
    pub arcs: Vec<Arc>,
    pub hoops: Vec<HoopId>,
    /// White vertices with a label-m dart.
    pub whites: Vec<VertexId>,
    /// Black vertices on label-m edges.
    pub blacks: Vec<VertexId>,
    /// Label-m middle darts at white vertices.
    pub middle: Vec<DartId>,
    /// Crossings lying on label-m edges.
    pub crossings: Vec<VertexId>,
}

/// Errors raised by [`extract`].
#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum SubgraphError {
    #[error("label {label} is outside 1..{max}")]
    LabelOutOfRange { label: Label, max: u32 },
}

/// The role of an edge of Γ_m.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeRole {
    /// Two black ends (or a black end and an open end).
    Free,
    /// A white end and a black end.
    Terminal,
    /// White ends only (open ends allowed).
    Internal,
    /// No white or black vertex: hoops and closed arcs through crossings.
    Hoop,
}

/// A curve of Γ_m: a chart edge or a hoop.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CurveRef {
    Edge(EdgeId),
    Hoop(HoopId),
}

/// Kind of a closed curve feature.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClosedCurveKind {
    Hoop,
    SimpleHoop,
    Ring,
    Loop,
}

/// A hoop, ring or loop of Γ_m, with the number of white vertices (of the
/// whole chart) in each complementary domain.  Loops pass through a white
/// vertex, which is not counted on either side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedCurveFeature {
    pub kind: ClosedCurveKind,
    pub carrier: Vec<CurveRef>,
    pub side_whites: [usize; 2],
}

/// A connected component of Γ_m.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgraphComponent {
    pub whites: Vec<VertexId>,
    pub blacks: Vec<VertexId>,
    /// Indices into [`LabelSubgraph::arcs`].
    pub arcs: Vec<usize>,
    /// Hoops forming this component.
    pub hoops: Vec<HoopId>,
    pub crossing_count: usize,
}

impl SubgraphComponent {
    pub fn white_count(&self) -> usize {
        self.whites.len()
    }
    pub fn black_count(&self) -> usize {
        self.blacks.len()
    }
}

/// Classification of a component against the reference graphs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassKind {
    Theta,
    Oval,
    SkewTheta,
    /// One of the nine graphs with five white vertices, `'a'..='i'`.
    Fig12(char),
    Other,
}

impl std::fmt::Display for ClassKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ClassKind::Theta => write!(f, "theta"),
            ClassKind::Oval => write!(f, "oval"),
            ClassKind::SkewTheta => write!(f, "skew-theta"),
            ClassKind::Fig12(c) => write!(f, "fig12({c})"),
            ClassKind::Other => write!(f, "other"),
        }
    }
}

/// Result of [`classify_component`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ComponentClass {
    pub class: ClassKind,
    pub white_count: usize,
    pub black_count: usize,
}

/// Type of Γ_m: white counts of components with white vertices, descending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GammaType(pub Vec<usize>);

impl std::fmt::Display for GammaType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

fn is_crossing(chart: &Chart, d: DartId) -> bool {
    chart.vertices[chart.darts[d].vertex].kind == VertexKind::Crossing
}

/// The dart diagonally opposite `d` at a degree-4 vertex.
fn opposite(chart: &Chart, d: DartId) -> Option<DartId> {
    let v = &chart.vertices[chart.darts[d].vertex];
    if v.rotation.len() != 4 {
        return None;
    }
    let i = chart.position(d);
    Some(v.rotation[(i + 2) % 4])
}

/// Extract Γ_m.
pub fn extract(chart: &Chart, m: Label) -> Result<LabelSubgraph, SubgraphError> {
    if m == 0 || m >= chart.degree {
        return Err(SubgraphError::LabelOutOfRange {
            label: m,
            max: chart.degree.saturating_sub(1),
        });
    }
    Ok(extract_unchecked(chart, m))
}

/// Extract Γ_m without checking the label range.
pub fn extract_unchecked(chart: &Chart, m: Label) -> LabelSubgraph {
    let mut arc_of_edge: Vec<Option<usize>> = vec![None; chart.edges.len()];
    let mut arcs = Vec::new();
    // The label-m edge continuing through dart `d` at a crossing.
    let through = |d: DartId| -> Option<DartId> {
        if !is_crossing(chart, d) {
            return None;
        }
        let z = opposite(chart, d)?;
        (chart.label(z) == m).then_some(z)
    };
    for e0 in 0..chart.edges.len() {
        if chart.edges[e0].label != m || arc_of_edge[e0].is_some() {
            continue;
        }
        // Walk backwards through crossings to the first end.
        let mut first = e0;
        let mut back = chart.edges[e0].tail;
        let mut closed = false;
        while let Some(z) = back.and_then(through) {
            let ne = chart.darts[z].edge;
            if ne == e0 {
                closed = true;
                break;
            }
            first = ne;
            back = chart.edges[ne].other(z);
        }
        let (start, mut entry) = if closed {
            (None, chart.edges[e0].tail)
        } else {
            (back, back)
        };
        if closed {
            first = e0;
        }
        // Walk forward collecting edges.
        let mut edges = Vec::new();
        let mut crossings = Vec::new();
        let mut cur = first;
        let end;
        loop {
            edges.push(cur);
            arc_of_edge[cur] = Some(arcs.len());
            let ed = &chart.edges[cur];
            let exit = match entry {
                Some(d) => ed.other(d),
                None => ed.tail.or(ed.head),
            };
            match exit {
                Some(d) => match through(d) {
                    Some(z) => {
                        let ne = chart.darts[z].edge;
                        crossings.push(chart.darts[d].vertex);
                        if closed && ne == first {
                            end = None;
                            break;
                        }
                        if arc_of_edge[ne].is_some() {
                            end = Some(d);
                            break;
                        }
                        cur = ne;
                        entry = Some(z);
                    }
                    None => {
                        end = Some(d);
                        break;
                    }
                },
                None => {
                    end = None;
                    break;
                }
            }
        }
        arcs.push(Arc {
            edges,
            start,
            end,
            crossings,
            closed,
        });
    }

    let mut whites = Vec::new();
    let mut blacks = Vec::new();
    let mut crossings = Vec::new();
    for (vi, v) in chart.vertices.iter().enumerate() {
        if !v.rotation.iter().any(|&d| chart.label(d) == m) {
            continue;
        }
        match v.kind {
            VertexKind::White => whites.push(vi),
            VertexKind::Black => blacks.push(vi),
            VertexKind::Crossing => crossings.push(vi),
        }
    }
    let middle = whites
        .iter()
        .filter_map(|&v| chart.middle_mark(v))
        .flat_map(|mm| [mm.inward, mm.outward])
        .filter(|&d| chart.label(d) == m)
        .collect();
    let hoops = (0..chart.hoops.len())
        .filter(|&h| chart.hoops[h].label == m)
        .collect();
    LabelSubgraph {
        label: m,
        arcs,
        hoops,
        whites,
        blacks,
        middle,
        crossings,
    }
}

fn end_vertex(chart: &Chart, d: Option<DartId>) -> Option<VertexId> {
    d.map(|d| chart.darts[d].vertex)
}

/// Connected components of Γ_m.  Crossings do not merge components.
pub fn components(chart: &Chart, sub: &LabelSubgraph) -> Vec<SubgraphComponent> {
    let mut index: BTreeMap<VertexId, usize> = BTreeMap::new();
    for &v in sub.whites.iter().chain(&sub.blacks) {
        let n = index.len();
        index.insert(v, n);
    }
    let mut parent: Vec<usize> = (0..index.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for a in &sub.arcs {
        if let (Some(x), Some(y)) = (end_vertex(chart, a.start), end_vertex(chart, a.end)) {
            if let (Some(&i), Some(&j)) = (index.get(&x), index.get(&y)) {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
    }
    let mut comps: BTreeMap<usize, SubgraphComponent> = BTreeMap::new();
    let new_comp = || SubgraphComponent {
        whites: Vec::new(),
        blacks: Vec::new(),
        arcs: Vec::new(),
        hoops: Vec::new(),
        crossing_count: 0,
    };
    for (&v, &i) in &index {
        let r = find(&mut parent, i);
        let c = comps.entry(r).or_insert_with(new_comp);
        if chart.vertices[v].kind == VertexKind::White {
            c.whites.push(v);
        } else {
            c.blacks.push(v);
        }
    }
    let mut extra = Vec::new();
    for (ai, a) in sub.arcs.iter().enumerate() {
        let anchor = end_vertex(chart, a.start)
            .or(end_vertex(chart, a.end))
            .and_then(|v| index.get(&v).copied());
        match anchor {
            Some(i) => {
                let r = find(&mut parent, i);
                let c = comps.get_mut(&r).expect("component exists");
                c.arcs.push(ai);
                c.crossing_count += a.crossings.len();
            }
            None => {
                let mut c = new_comp();
                c.arcs.push(ai);
                c.crossing_count = a.crossings.len();
                extra.push(c);
            }
        }
    }
    let mut out: Vec<SubgraphComponent> = comps.into_values().collect();
    out.extend(extra);
    for &h in &sub.hoops {
        let mut c = new_comp();
        c.hoops.push(h);
        out.push(c);
    }
    out
}

fn arc_role(chart: &Chart, a: &Arc) -> EdgeRole {
    let kinds: Vec<VertexKind> = [a.start, a.end]
        .into_iter()
        .flatten()
        .map(|d| chart.vertices[chart.darts[d].vertex].kind)
        .collect();
    let whites = kinds.iter().filter(|k| **k == VertexKind::White).count();
    let blacks = kinds.iter().filter(|k| **k == VertexKind::Black).count();
    match (whites, blacks) {
        (0, 0) => EdgeRole::Hoop,
        (_, 0) => EdgeRole::Internal,
        (0, _) => EdgeRole::Free,
        _ => EdgeRole::Terminal,
    }
}

/// Role of every edge (and hoop) of Γ_m; edges on the same arc share a role.
pub fn edge_roles(chart: &Chart, sub: &LabelSubgraph) -> Vec<(CurveRef, EdgeRole)> {
    let mut out = Vec::new();
    for a in &sub.arcs {
        let role = arc_role(chart, a);
        for &e in &a.edges {
            out.push((CurveRef::Edge(e), role));
        }
    }
    for &h in &sub.hoops {
        out.push((CurveRef::Hoop(h), EdgeRole::Hoop));
    }
    out.sort();
    out
}

/// Role of every arc of Γ_m.
pub fn arc_roles(chart: &Chart, sub: &LabelSubgraph) -> Vec<EdgeRole> {
    sub.arcs.iter().map(|a| arc_role(chart, a)).collect()
}

/// White vertices on each side of a closed curve given by its chart edges
/// and hoops.  Returns `None` when the chart is not a sphere embedding or
/// the curve does not separate.
fn side_whites(
    chart: &Chart,
    emb: &Embedding,
    edges: &[EdgeId],
    hoops: &[HoopId],
) -> Option<[usize; 2]> {
    let (dom, n) = emb.domains_excluding(chart, |e| edges.contains(&e), |h| hoops.contains(&h));
    if n != 2 {
        return None;
    }
    // Orient the two sides: domain of the first side of the carrier is side 0.
    let first_side = if let Some(&e) = edges.first() {
        dom[emb.edge_sides(e)[0]]
    } else if let Some(&h) = hoops.first() {
        dom[emb.hoop_sides(h)[0]]
    } else {
        0
    };
    let mut counts = [0usize; 2];
    for v in &chart.vertices {
        if v.kind != VertexKind::White {
            continue;
        }
        let on_curve = v
            .rotation
            .iter()
            .any(|&d| edges.contains(&chart.darts[d].edge));
        if on_curve {
            continue;
        }
        let f = emb.corner_face(chart, v.rotation[0]);
        let side = usize::from(dom[f] != first_side);
        counts[side] += 1;
    }
    Some(counts)
}

/// Hoops, simple hoops, rings and loops of Γ_m.
pub fn closed_curves(chart: &Chart, sub: &LabelSubgraph) -> Vec<ClosedCurveFeature> {
    let emb = Embedding::new(chart).ok();
    let mut out = Vec::new();
    for &h in &sub.hoops {
        let sides = emb
            .as_ref()
            .and_then(|emb| side_whites(chart, emb, &[], &[h]))
            .unwrap_or([0, 0]);
        let kind = if sides[0] == 0 || sides[1] == 0 {
            ClosedCurveKind::SimpleHoop
        } else {
            ClosedCurveKind::Hoop
        };
        out.push(ClosedCurveFeature {
            kind,
            carrier: vec![CurveRef::Hoop(h)],
            side_whites: sides,
        });
    }
    for a in &sub.arcs {
        let carrier: Vec<CurveRef> = a.edges.iter().map(|&e| CurveRef::Edge(e)).collect();
        if a.closed {
            let sides = emb
                .as_ref()
                .and_then(|emb| side_whites(chart, emb, &a.edges, &[]))
                .unwrap_or([0, 0]);
            out.push(ClosedCurveFeature {
                kind: ClosedCurveKind::Ring,
                carrier,
                side_whites: sides,
            });
        } else if let (Some(s), Some(t)) = (a.start, a.end) {
            let v = chart.darts[s].vertex;
            if v == chart.darts[t].vertex && chart.vertices[v].kind == VertexKind::White {
                let sides = emb
                    .as_ref()
                    .and_then(|emb| side_whites(chart, emb, &a.edges, &[]))
                    .unwrap_or([0, 0]);
                out.push(ClosedCurveFeature {
                    kind: ClosedCurveKind::Loop,
                    carrier,
                    side_whites: sides,
                });
            }
        }
    }
    out
}

/// Violations of the closed-curve assumptions, over every label of the chart:
/// no simple hoops, and both sides of every ring or hoop contain a white
/// vertex.
pub fn all_closed_curve_violations(chart: &Chart) -> Vec<Violation> {
    let mut labels: Vec<Label> = chart
        .edges
        .iter()
        .map(|e| e.label)
        .chain(chart.hoops.iter().map(|h| h.label))
        .collect();
    labels.sort_unstable();
    labels.dedup();
    let mut out = Vec::new();
    for m in labels {
        let sub = extract_unchecked(chart, m);
        for f in closed_curves(chart, &sub) {
            let name = |c: &CurveRef| match c {
                CurveRef::Edge(e) => chart.edges[*e].name.clone(),
                CurveRef::Hoop(h) => chart.hoops[*h].name.clone(),
            };
            let loc = f.carrier.iter().map(name).collect::<Vec<_>>().join("+");
            if f.kind == ClosedCurveKind::SimpleHoop {
                out.push(Violation {
                    clause: Clause::NoFreeOrSimpleHoop,
                    location: format!("hoop {loc}"),
                    message: "simple hoop".into(),
                });
            }
            if matches!(
                f.kind,
                ClosedCurveKind::Hoop | ClosedCurveKind::SimpleHoop | ClosedCurveKind::Ring
            ) && (f.side_whites[0] == 0 || f.side_whites[1] == 0)
            {
                out.push(Violation {
                    clause: Clause::RingHoopSides,
                    location: format!("curve {loc}"),
                    message: format!(
                        "complementary domains contain {} and {} white vertices",
                        f.side_whites[0], f.side_whites[1]
                    ),
                });
            }
        }
    }
    out
}

/// Type of Γ_m.
pub fn gamma_type(chart: &Chart, m: Label) -> GammaType {
    let sub = extract_unchecked(chart, m);
    let mut counts: Vec<usize> = components(chart, &sub)
        .iter()
        .map(|c| c.white_count())
        .filter(|&w| w > 0)
        .collect();
    counts.sort_unstable_by(|a, b| b.cmp(a));
    GammaType(counts)
}

/// Convert a component of Γ_m into an abstract component.  Returns `None`
/// when some arc ends openly or a white vertex does not have exactly three
/// label-m darts.
pub fn to_abstract(
    chart: &Chart,
    sub: &LabelSubgraph,
    comp: &SubgraphComponent,
) -> Option<AbstractComponent> {
    let widx: BTreeMap<VertexId, usize> = comp
        .whites
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i))
        .collect();
    let mut arc_at: BTreeMap<DartId, usize> = BTreeMap::new();
    for &ai in &comp.arcs {
        let a = &sub.arcs[ai];
        for d in [a.start, a.end].into_iter().flatten() {
            arc_at.insert(d, ai);
        }
    }
    let mut edge_of_arc: BTreeMap<usize, usize> = BTreeMap::new();
    let mut edges = Vec::new();
    let mut forward = Vec::new();
    let mut terminal = vec![None; comp.whites.len()];
    let mut rotations = Vec::new();
    for &v in &comp.whites {
        let i = widx[&v];
        let mut rot = Vec::new();
        for &d in &chart.vertices[v].rotation {
            if chart.label(d) != sub.label {
                continue;
            }
            let ai = *arc_at.get(&d)?;
            let a = &sub.arcs[ai];
            let (s, t) = (a.start?, a.end?);
            let other = if s == d { t } else { s };
            let ov = chart.darts[other].vertex;
            match chart.vertices[ov].kind {
                VertexKind::White => {
                    let e = *edge_of_arc.entry(ai).or_insert_with(|| {
                        edges.push((widx[&chart.darts[s].vertex], widx[&chart.darts[t].vertex]));
                        forward.push(chart.direction(s) == Direction::Outward);
                        edges.len() - 1
                    });
                    rot.push(Slot::Dart(if s == d { 2 * e } else { 2 * e + 1 }));
                }
                VertexKind::Black => {
                    rot.push(Slot::Terminal);
                    terminal[i] = Some(chart.direction(d));
                }
                VertexKind::Crossing => return None,
            }
        }
        if rot.len() != 3 {
            return None;
        }
        rotations.push(rot);
    }
    Some(AbstractComponent {
        rotations,
        edges,
        orientation: Some(Orientation { forward, terminal }),
    })
}

/// Classify an abstract component by its unoriented canonical code.
pub fn classify_abstract(comp: &AbstractComponent) -> ClassKind {
    if comp.has_loop() {
        return ClassKind::Other;
    }
    let bare = AbstractComponent {
        orientation: None,
        ..comp.clone()
    };
    reference::class_of_code(&bare.canonical_code()).unwrap_or(ClassKind::Other)
}

/// Classify a component of Γ_m against the reference graphs.
pub fn classify_component(
    chart: &Chart,
    sub: &LabelSubgraph,
    comp: &SubgraphComponent,
) -> ComponentClass {
    let class = to_abstract(chart, sub, comp)
        .map(|a| classify_abstract(&a))
        .unwrap_or(ClassKind::Other);
    ComponentClass {
        class,
        white_count: comp.white_count(),
        black_count: comp.black_count(),
    }
}
