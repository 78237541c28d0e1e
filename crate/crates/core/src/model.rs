//! Charts as combinatorial maps on the 2-sphere.
//!
//! A [`Chart`] stores vertices with a cyclic (counter-clockwise) order of
//! darts, labeled oriented edges joining two darts, and closed edges without
//! vertices (hoops).  An edge may have one open end; such a *stub* stands for
//! an arc whose far end is not part of the model, which is how pseudo charts
//! and single label components are represented.
//!
//! Disconnected charts carry placement records stating which face of one
//! connected piece contains another piece; together with the rotation system
//! they determine the faces on the sphere (see [`crate::embed`]).

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use thiserror::Error;

/// Index of a vertex inside a [`Chart`].
pub type VertexId = usize;
/// Index of a dart inside a [`Chart`].
pub type DartId = usize;
/// Index of an edge inside a [`Chart`].
pub type EdgeId = usize;
/// Index of a hoop inside a [`Chart`].
pub type HoopId = usize;

/// Edge label; valid labels of an `n`-chart lie in `1..n`.
pub type Label = u32;

/// Direction of an edge end relative to the vertex it is attached to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    /// The edge points into the vertex.
    Inward,
    /// The edge points away from the vertex.
    Outward,
}

impl Direction {
    /// The opposite direction.
    pub fn flip(self) -> Direction {
        match self {
            Direction::Inward => Direction::Outward,
            Direction::Outward => Direction::Inward,
        }
    }

    /// Single-character tag used in reports.
    pub fn tag(self) -> &'static str {
        match self {
            Direction::Inward => "in",
            Direction::Outward => "out",
        }
    }
}

/// Kind of a chart vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexKind {
    /// Degree-1 vertex.
    Black,
    /// Degree-6 vertex.
    White,
    /// Degree-4 vertex.
    Crossing,
}

impl VertexKind {
    /// Keyword used by the text format.
    pub fn keyword(self) -> &'static str {
        match self {
            VertexKind::Black => "black",
            VertexKind::White => "white",
            VertexKind::Crossing => "crossing",
        }
    }

    /// Degree demanded by the chart axioms.
    pub fn expected_degree(self) -> usize {
        match self {
            VertexKind::Black => 1,
            VertexKind::White => 6,
            VertexKind::Crossing => 4,
        }
    }
}

/// A half-edge attached to a vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dart {
    pub name: String,
    pub vertex: VertexId,
    pub edge: EdgeId,
}

/// A vertex with its counter-clockwise rotation of darts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub name: String,
    pub kind: VertexKind,
    pub rotation: Vec<DartId>,
}

/// An oriented labeled edge from `tail` to `head`; `None` marks an open end.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    pub label: Label,
    pub tail: Option<DartId>,
    pub head: Option<DartId>,
}

impl Edge {
    /// True when both ends are attached to vertices.
    pub fn is_complete(&self) -> bool {
        self.tail.is_some() && self.head.is_some()
    }

    /// The dart at the other end of the edge, if attached.
    pub fn other(&self, d: DartId) -> Option<DartId> {
        if self.tail == Some(d) {
            self.head
        } else if self.head == Some(d) {
            self.tail
        } else {
            None
        }
    }
}

/// A closed edge without vertices.  Its two sides are the abstract tokens
/// `0` and `1`; placement records refer to them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hoop {
    pub name: String,
    pub label: Label,
}

/// Reference to a face that does not depend on face numbering.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FaceRef {
    /// The face containing the corner immediately counter-clockwise after
    /// the dart at its vertex.
    Corner(DartId),
    /// One of the two sides (0 or 1) of a hoop.
    HoopSide(HoopId, u8),
}

/// States that the connected piece owning `child` lies in the face `parent`
/// of another piece, and that `child` is the face of its own piece facing it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Placement {
    pub child: FaceRef,
    pub parent: FaceRef,
}

/// The middle darts of a white vertex: centers of the inward and outward
/// triples.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MiddleMark {
    pub vertex: VertexId,
    pub inward: DartId,
    pub outward: DartId,
}

/// Complexity `(w(Γ), −f(Γ))`, compared lexicographically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Complexity {
    pub white_count: usize,
    pub neg_free_count: i64,
}

/// A chart (or pseudo chart) on the 2-sphere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chart {
    pub name: Option<String>,
    pub degree: u32,
    pub vertices: Vec<Vertex>,
    pub darts: Vec<Dart>,
    pub edges: Vec<Edge>,
    pub hoops: Vec<Hoop>,
    pub placements: Vec<Placement>,
    pub outer_face: Option<FaceRef>,
}

/// Structural errors raised while assembling a chart.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("dart `{0}` is referenced by an edge but appears in no rotation")]
    DanglingDart(String),
    #[error("dart `{0}` appears in a rotation but belongs to no edge")]
    UnattachedDart(String),
    #[error("dart `{0}` is used more than once")]
    DuplicateDart(String),
    #[error("name `{0}` is declared more than once")]
    DuplicateName(String),
    #[error("vertex `{0}` has an empty rotation")]
    EmptyRotation(String),
    #[error("edge `{0}` has no attached endpoint")]
    DetachedEdge(String),
    #[error("unknown reference `{0}`")]
    UnknownReference(String),
    #[error("hoop side must be 0 or 1, got {0}")]
    BadHoopSide(u8),
}

/// Declarative description of a vertex for [`assemble`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexSpec {
    pub name: String,
    pub kind: VertexKind,
    pub rotation: Vec<String>,
}

/// Declarative description of an edge for [`assemble`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeSpec {
    pub name: String,
    pub label: Label,
    pub tail: Option<String>,
    pub head: Option<String>,
}

/// Declarative description of a hoop for [`assemble`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HoopSpec {
    pub name: String,
    pub label: Label,
}

/// Face reference by names, used by [`assemble`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FaceRefSpec {
    Corner(String),
    HoopSide(String, u8),
}

/// Placement record by names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlacementSpec {
    pub child: FaceRefSpec,
    pub parent: FaceRefSpec,
}

/// Everything needed to assemble a chart from names.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ChartSpec {
    pub name: Option<String>,
    pub degree: u32,
    pub vertices: Vec<VertexSpec>,
    pub edges: Vec<EdgeSpec>,
    pub hoops: Vec<HoopSpec>,
    pub placements: Vec<PlacementSpec>,
    pub outer_face: Option<FaceRefSpec>,
}

/// Assemble a chart from a name-based specification.
///
/// Only structural consistency is checked here; the chart axioms are the
/// business of [`validate`].
pub fn assemble<'a>(spec: &'a ChartSpec) -> Result<Chart, ModelError> {
    let mut names: HashSet<&str> = HashSet::new();
    let mut check_name = |n: &'a str| -> Result<(), ModelError> {
        if !names.insert(n) {
            return Err(ModelError::DuplicateName(n.to_string()));
        }
        Ok(())
    };
    for v in &spec.vertices {
        check_name(&v.name)?;
    }
    for e in &spec.edges {
        check_name(&e.name)?;
    }
    for h in &spec.hoops {
        check_name(&h.name)?;
    }

    let mut dart_index: BTreeMap<String, DartId> = BTreeMap::new();
    let mut vertices = Vec::with_capacity(spec.vertices.len());
    let mut darts: Vec<Dart> = Vec::new();
    for (vi, v) in spec.vertices.iter().enumerate() {
        if v.rotation.is_empty() {
            return Err(ModelError::EmptyRotation(v.name.clone()));
        }
        let mut rot = Vec::with_capacity(v.rotation.len());
        for dn in &v.rotation {
            if dart_index.contains_key(dn) {
                return Err(ModelError::DuplicateDart(dn.clone()));
            }
            let id = darts.len();
            darts.push(Dart {
                name: dn.clone(),
                vertex: vi,
                edge: usize::MAX,
            });
            dart_index.insert(dn.clone(), id);
            rot.push(id);
        }
        vertices.push(Vertex {
            name: v.name.clone(),
            kind: v.kind,
            rotation: rot,
        });
    }

    let mut edges = Vec::with_capacity(spec.edges.len());
    for (ei, e) in spec.edges.iter().enumerate() {
        if e.tail.is_none() && e.head.is_none() {
            return Err(ModelError::DetachedEdge(e.name.clone()));
        }
        let mut resolve = |n: &Option<String>| -> Result<Option<DartId>, ModelError> {
            match n {
                None => Ok(None),
                Some(n) => {
                    let id = *dart_index
                        .get(n)
                        .ok_or_else(|| ModelError::DanglingDart(n.clone()))?;
                    if darts[id].edge != usize::MAX {
                        return Err(ModelError::DuplicateDart(n.clone()));
                    }
                    darts[id].edge = ei;
                    Ok(Some(id))
                }
            }
        };
        let tail = resolve(&e.tail)?;
        let head = resolve(&e.head)?;
        edges.push(Edge {
            name: e.name.clone(),
            label: e.label,
            tail,
            head,
        });
    }
    if let Some(d) = darts.iter().find(|d| d.edge == usize::MAX) {
        return Err(ModelError::UnattachedDart(d.name.clone()));
    }

    let hoops: Vec<Hoop> = spec
        .hoops
        .iter()
        .map(|h| Hoop {
            name: h.name.clone(),
            label: h.label,
        })
        .collect();
    let hoop_index: HashMap<&str, HoopId> = spec
        .hoops
        .iter()
        .enumerate()
        .map(|(i, h)| (h.name.as_str(), i))
        .collect();
    let resolve_face = |f: &FaceRefSpec| -> Result<FaceRef, ModelError> {
        match f {
            FaceRefSpec::Corner(d) => dart_index
                .get(d)
                .map(|&id| FaceRef::Corner(id))
                .ok_or_else(|| ModelError::UnknownReference(d.clone())),
            FaceRefSpec::HoopSide(h, s) => {
                if *s > 1 {
                    return Err(ModelError::BadHoopSide(*s));
                }
                hoop_index
                    .get(h.as_str())
                    .map(|&id| FaceRef::HoopSide(id, *s))
                    .ok_or_else(|| ModelError::UnknownReference(h.clone()))
            }
        }
    };
    let mut placements = Vec::with_capacity(spec.placements.len());
    for p in &spec.placements {
        placements.push(Placement {
            child: resolve_face(&p.child)?,
            parent: resolve_face(&p.parent)?,
        });
    }
    let outer_face = spec.outer_face.as_ref().map(resolve_face).transpose()?;

    Ok(Chart {
        name: spec.name.clone(),
        degree: spec.degree,
        vertices,
        darts,
        edges,
        hoops,
        placements,
        outer_face,
    })
}

/// Incremental, id-based chart construction used by generators and tests.
#[derive(Clone, Debug)]
pub struct ChartBuilder {
    chart: Chart,
}

impl ChartBuilder {
    /// Start an empty chart of the given degree.
    pub fn new(degree: u32) -> Self {
        ChartBuilder {
            chart: Chart {
                name: None,
                degree,
                vertices: Vec::new(),
                darts: Vec::new(),
                edges: Vec::new(),
                hoops: Vec::new(),
                placements: Vec::new(),
                outer_face: None,
            },
        }
    }

    /// Start from an existing chart.
    pub fn from_chart(chart: Chart) -> Self {
        ChartBuilder { chart }
    }

    /// Set the chart name.
    pub fn name(&mut self, name: &str) -> &mut Self {
        self.chart.name = Some(name.to_string());
        self
    }

    /// Add a vertex with an empty rotation.
    pub fn vertex(&mut self, name: &str, kind: VertexKind) -> VertexId {
        self.chart.vertices.push(Vertex {
            name: name.to_string(),
            kind,
            rotation: Vec::new(),
        });
        self.chart.vertices.len() - 1
    }

    /// Append a new dart to the rotation of `v`.  The dart must later be
    /// attached with [`ChartBuilder::edge`].
    pub fn dart(&mut self, v: VertexId) -> DartId {
        let id = self.chart.darts.len();
        let name = format!(
            "{}.{}",
            self.chart.vertices[v].name,
            self.chart.vertices[v].rotation.len()
        );
        self.chart.darts.push(Dart {
            name,
            vertex: v,
            edge: usize::MAX,
        });
        self.chart.vertices[v].rotation.push(id);
        id
    }

    /// Add an edge between two darts (either may be open).
    pub fn edge(
        &mut self,
        name: &str,
        label: Label,
        tail: Option<DartId>,
        head: Option<DartId>,
    ) -> EdgeId {
        let id = self.chart.edges.len();
        for d in [tail, head].into_iter().flatten() {
            self.chart.darts[d].edge = id;
        }
        self.chart.edges.push(Edge {
            name: name.to_string(),
            label,
            tail,
            head,
        });
        id
    }

    /// Add a hoop.
    pub fn hoop(&mut self, name: &str, label: Label) -> HoopId {
        self.chart.hoops.push(Hoop {
            name: name.to_string(),
            label,
        });
        self.chart.hoops.len() - 1
    }

    /// Add a placement record.
    pub fn place(&mut self, child: FaceRef, parent: FaceRef) -> &mut Self {
        self.chart.placements.push(Placement { child, parent });
        self
    }

    /// Set the outer face.
    pub fn outer(&mut self, f: FaceRef) -> &mut Self {
        self.chart.outer_face = Some(f);
        self
    }

    /// Rename the darts canonically (`<vertex>.<position>`) and return the
    /// chart, checking structural consistency.
    pub fn build(mut self) -> Result<Chart, ModelError> {
        for v in &self.chart.vertices {
            if v.rotation.is_empty() {
                return Err(ModelError::EmptyRotation(v.name.clone()));
            }
        }
        for (i, v) in self.chart.vertices.iter().enumerate() {
            for (k, &d) in v.rotation.iter().enumerate() {
                self.chart.darts[d].name = format!("{}.{}", v.name, k);
                debug_assert_eq!(self.chart.darts[d].vertex, i);
            }
        }
        if let Some(d) = self.chart.darts.iter().find(|d| d.edge == usize::MAX) {
            return Err(ModelError::UnattachedDart(d.name.clone()));
        }
        for e in &self.chart.edges {
            if e.tail.is_none() && e.head.is_none() {
                return Err(ModelError::DetachedEdge(e.name.clone()));
            }
        }
        // Number darts in vertex-rotation order, as `assemble` does.
        let c = &mut self.chart;
        let mut new_id = vec![usize::MAX; c.darts.len()];
        let mut darts = Vec::with_capacity(c.darts.len());
        for v in &mut c.vertices {
            for d in &mut v.rotation {
                new_id[*d] = darts.len();
                darts.push(c.darts[*d].clone());
                *d = new_id[*d];
            }
        }
        c.darts = darts;
        for e in &mut c.edges {
            e.tail = e.tail.map(|d| new_id[d]);
            e.head = e.head.map(|d| new_id[d]);
        }
        let remap = |f: FaceRef| match f {
            FaceRef::Corner(d) => FaceRef::Corner(new_id[d]),
            other => other,
        };
        for p in &mut c.placements {
            p.child = remap(p.child);
            p.parent = remap(p.parent);
        }
        c.outer_face = c.outer_face.map(remap);
        Ok(self.chart)
    }
}

impl Chart {
    /// An empty chart of the given degree.
    pub fn empty(degree: u32) -> Chart {
        ChartBuilder::new(degree)
            .build()
            .expect("empty chart is consistent")
    }

    /// Direction of dart `d` at its vertex.
    pub fn direction(&self, d: DartId) -> Direction {
        let e = &self.edges[self.darts[d].edge];
        if e.tail == Some(d) {
            Direction::Outward
        } else {
            Direction::Inward
        }
    }

    /// Label of the edge owning dart `d`.
    pub fn label(&self, d: DartId) -> Label {
        self.edges[self.darts[d].edge].label
    }

    /// The dart at the other end of `d`'s edge, if attached.
    pub fn twin(&self, d: DartId) -> Option<DartId> {
        self.edges[self.darts[d].edge].other(d)
    }

    /// Position of `d` in its vertex rotation.
    pub fn position(&self, d: DartId) -> usize {
        let v = &self.vertices[self.darts[d].vertex];
        v.rotation
            .iter()
            .position(|&x| x == d)
            .expect("dart is in its rotation")
    }

    /// Counter-clockwise successor of `d` at its vertex.
    pub fn next_ccw(&self, d: DartId) -> DartId {
        let v = &self.vertices[self.darts[d].vertex];
        let i = self.position(d);
        v.rotation[(i + 1) % v.rotation.len()]
    }

    /// Counter-clockwise predecessor of `d` at its vertex.
    pub fn prev_ccw(&self, d: DartId) -> DartId {
        let v = &self.vertices[self.darts[d].vertex];
        let i = self.position(d);
        v.rotation[(i + v.rotation.len() - 1) % v.rotation.len()]
    }

    /// Look up a vertex by name.
    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.vertices.iter().position(|v| v.name == name)
    }

    /// Look up an edge by name.
    pub fn edge_by_name(&self, name: &str) -> Option<EdgeId> {
        self.edges.iter().position(|e| e.name == name)
    }

    /// Look up a dart by name.
    pub fn dart_by_name(&self, name: &str) -> Option<DartId> {
        self.darts.iter().position(|d| d.name == name)
    }

    /// Number of white vertices.
    pub fn white_count(&self) -> usize {
        self.vertices
            .iter()
            .filter(|v| v.kind == VertexKind::White)
            .count()
    }

    /// Middle marks of a white vertex satisfying condition (iii), else `None`.
    pub fn middle_mark(&self, v: VertexId) -> Option<MiddleMark> {
        let vx = &self.vertices[v];
        if vx.kind != VertexKind::White || vx.rotation.len() != 6 {
            return None;
        }
        let dirs: Vec<Direction> = vx.rotation.iter().map(|&d| self.direction(d)).collect();
        let start = inward_window(&dirs)?;
        Some(MiddleMark {
            vertex: v,
            inward: vx.rotation[(start + 1) % 6],
            outward: vx.rotation[(start + 4) % 6],
        })
    }

    /// True when `d` is a middle dart at its (white) vertex.
    pub fn is_middle(&self, d: DartId) -> bool {
        match self.middle_mark(self.darts[d].vertex) {
            Some(m) => m.inward == d || m.outward == d,
            None => false,
        }
    }

    /// All middle marks of valid white vertices.
    pub fn middle_marks(&self) -> Vec<MiddleMark> {
        (0..self.vertices.len())
            .filter_map(|v| self.middle_mark(v))
            .collect()
    }

    /// The edge id, or `None` for edges that are not free.
    fn edge_end_kinds(&self, e: EdgeId) -> [Option<VertexKind>; 2] {
        let ed = &self.edges[e];
        [ed.tail, ed.head].map(|d| d.map(|d| self.vertices[self.darts[d].vertex].kind))
    }

    /// True when the edge joins two black vertices.
    pub fn is_free_edge(&self, e: EdgeId) -> bool {
        self.edge_end_kinds(e) == [Some(VertexKind::Black), Some(VertexKind::Black)]
    }

    /// Complexity `(w, −f)`.
    pub fn complexity(&self) -> Complexity {
        let free = (0..self.edges.len())
            .filter(|&e| self.is_free_edge(e))
            .count();
        Complexity {
            white_count: self.white_count(),
            neg_free_count: -(free as i64),
        }
    }
}

/// Start index of the window of three consecutive inward darts, provided the
/// six directions are exactly three consecutive inward and three outward.
pub fn inward_window(dirs: &[Direction]) -> Option<usize> {
    if dirs.len() != 6 {
        return None;
    }
    (0..6).find(|&s| {
        (0..3).all(|k| dirs[(s + k) % 6] == Direction::Inward)
            && (3..6).all(|k| dirs[(s + k) % 6] == Direction::Outward)
    })
}

/// Axiom level checked by [`validate`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ValidationMode {
    /// Chart conditions (i)–(iv) and the embedding.
    AxiomsOnly,
    /// Additionally the standing assumptions on minimal charts.
    MinimalAssumptions,
}

/// The clause a violation refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Clause {
    /// Vertex degrees 1, 4, 6 matching the declared kind.
    Degree,
    /// Labels lie in `1..n`.
    LabelRange,
    /// Labels alternate `m, m+1` around a white vertex.
    WhiteLabels,
    /// Three consecutive inward and three consecutive outward arcs.
    WhiteDirections,
    /// Diagonal labels equal and differ by more than one.
    CrossingLabels,
    /// Diagonal arcs coherently oriented.
    CrossingDirections,
    /// Rotation system is not a sphere embedding.
    Embedding,
    /// No free edges and no simple hoops.
    NoFreeOrSimpleHoop,
    /// Terminal edges contain a middle arc.
    TerminalMiddle,
    /// Complementary domains of rings and hoops contain white vertices.
    RingHoopSides,
}

impl Clause {
    /// Short human-readable tag.
    pub fn tag(self) -> &'static str {
        match self {
            Clause::Degree => "condition (i): degree",
            Clause::LabelRange => "condition (ii): label range",
            Clause::WhiteLabels => "condition (iii): alternating labels",
            Clause::WhiteDirections => "condition (iii): three consecutive inward arcs",
            Clause::CrossingLabels => "condition (iv): crossing labels",
            Clause::CrossingDirections => "condition (iv): crossing orientation",
            Clause::Embedding => "embedding: sphere Euler characteristic",
            Clause::NoFreeOrSimpleHoop => "assumption: no free edges or simple hoops",
            Clause::TerminalMiddle => "assumption: terminal edges are middle",
            Clause::RingHoopSides => "assumption: ring/hoop sides contain white vertices",
        }
    }
}

/// One failed invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub clause: Clause,
    pub location: String,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} [{}]: {}",
            self.location,
            self.clause.tag(),
            self.message
        )
    }
}

/// Check the chart axioms (and optionally the minimality assumptions).
/// Returns an empty list exactly when every checked invariant holds.
pub fn validate(chart: &Chart, mode: ValidationMode) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut push = |clause: Clause, location: String, message: String| {
        out.push(Violation {
            clause,
            location,
            message,
        });
    };

    for e in &chart.edges {
        if e.label == 0 || e.label >= chart.degree {
            push(
                Clause::LabelRange,
                format!("edge {}", e.name),
                format!(
                    "label {} outside 1..{}",
                    e.label,
                    chart.degree.saturating_sub(1)
                ),
            );
        }
    }
    for h in &chart.hoops {
        if h.label == 0 || h.label >= chart.degree {
            push(
                Clause::LabelRange,
                format!("hoop {}", h.name),
                format!(
                    "label {} outside 1..{}",
                    h.label,
                    chart.degree.saturating_sub(1)
                ),
            );
        }
    }

    for v in &chart.vertices {
        let loc = format!("vertex {}", v.name);
        let deg = v.rotation.len();
        if deg != v.kind.expected_degree() {
            push(
                Clause::Degree,
                loc.clone(),
                format!(
                    "{} vertex has degree {} (expected {})",
                    v.kind.keyword(),
                    deg,
                    v.kind.expected_degree()
                ),
            );
            continue;
        }
        let labels: Vec<Label> = v.rotation.iter().map(|&d| chart.label(d)).collect();
        let dirs: Vec<Direction> = v.rotation.iter().map(|&d| chart.direction(d)).collect();
        match v.kind {
            VertexKind::Black => {}
            VertexKind::White => {
                let a = labels[0];
                let b = labels[1];
                let alternating = (0..6).all(|i| labels[i] == if i % 2 == 0 { a } else { b });
                if !alternating || a.abs_diff(b) != 1 {
                    push(
                        Clause::WhiteLabels,
                        loc.clone(),
                        format!("labels around vertex are {:?}", labels),
                    );
                }
                if inward_window(&dirs).is_none() {
                    push(
                        Clause::WhiteDirections,
                        loc.clone(),
                        format!(
                            "directions are {}",
                            dirs.iter().map(|d| d.tag()).collect::<Vec<_>>().join(",")
                        ),
                    );
                }
            }
            VertexKind::Crossing => {
                for i in 0..2 {
                    if labels[i] != labels[i + 2] {
                        push(
                            Clause::CrossingLabels,
                            loc.clone(),
                            format!("diagonal labels {} and {} differ", labels[i], labels[i + 2]),
                        );
                    }
                    if dirs[i] == dirs[i + 2] {
                        push(
                            Clause::CrossingDirections,
                            loc.clone(),
                            "diagonal arcs are not coherent".into(),
                        );
                    }
                }
                if labels[0].abs_diff(labels[1]) <= 1 {
                    push(
                        Clause::CrossingLabels,
                        loc.clone(),
                        format!(
                            "crossing labels {} and {} satisfy |i - j| <= 1",
                            labels[0], labels[1]
                        ),
                    );
                }
            }
        }
    }

    if let Err(err) = crate::embed::Embedding::new(chart) {
        push(Clause::Embedding, "chart".into(), err.to_string());
    }

    if mode == ValidationMode::MinimalAssumptions {
        for (ei, e) in chart.edges.iter().enumerate() {
            if chart.is_free_edge(ei) {
                push(
                    Clause::NoFreeOrSimpleHoop,
                    format!("edge {}", e.name),
                    "free edge".into(),
                );
            }
            let ends: Vec<DartId> = [e.tail, e.head].into_iter().flatten().collect();
            let kinds: Vec<VertexKind> = ends
                .iter()
                .map(|&d| chart.vertices[chart.darts[d].vertex].kind)
                .collect();
            let has_black = kinds.contains(&VertexKind::Black);
            let has_white = kinds.contains(&VertexKind::White);
            if has_black && has_white && ends.len() == 2 {
                let w = ends
                    .iter()
                    .copied()
                    .find(|&d| chart.vertices[chart.darts[d].vertex].kind == VertexKind::White);
                if let Some(w) = w {
                    if !chart.is_middle(w) {
                        push(
                            Clause::TerminalMiddle,
                            format!("edge {}", e.name),
                            "terminal edge is not middle at its white vertex".into(),
                        );
                    }
                }
            }
        }
        for f in crate::subgraph::all_closed_curve_violations(chart) {
            out.push(f);
        }
    }
    out
}

/// Apply reflection (`reflect`: reverse every rotation) and/or global
/// orientation reversal (`reverse`: swap the ends of every edge).
pub fn ro_transform(chart: &Chart, reflect: bool, reverse: bool) -> Chart {
    let mut c = chart.clone();
    if reflect {
        let remap_corner = |f: FaceRef| match f {
            // The geometric corner after `d` becomes the corner after its
            // old counter-clockwise successor once orientations are mirrored.
            FaceRef::Corner(d) => FaceRef::Corner(chart.next_ccw(d)),
            other => other,
        };
        for v in &mut c.vertices {
            if v.rotation.len() > 1 {
                v.rotation[1..].reverse();
            }
        }
        for p in &mut c.placements {
            p.child = remap_corner(p.child);
            p.parent = remap_corner(p.parent);
        }
        c.outer_face = c.outer_face.map(remap_corner);
    }
    if reverse {
        for e in &mut c.edges {
            std::mem::swap(&mut e.tail, &mut e.head);
        }
    }
    c
}
