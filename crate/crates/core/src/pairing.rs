//! Completions of a face by pairing open stubs.
//!
//! The boundary of a face is read as cyclic sequences of items: open
//! label-k stubs become *slots*, complete edges become edge items.  A
//! completion without white vertices joins every non-middle slot to a slot
//! of the opposite direction by a chord; a middle slot may instead end in a
//! terminal edge at a new black vertex.  Chords must be drawable without
//! crossings in the face (a disk or an annulus), and optionally may not form
//! a loop or bound a lens together with a boundary edge.

use crate::embed::{half_dart, Embedding, FaceId};
use crate::model::{Chart, DartId, Direction, EdgeId, FaceRef, Label, VertexId, VertexKind};
use crate::region::lens_condition;

/// An open label-k stub on the boundary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlotItem {
    pub dart: DartId,
    pub vertex: VertexId,
    pub white: bool,
    pub dir: Direction,
    pub middle: bool,
}

/// A complete edge traversed by the boundary walk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeItem {
    pub edge: EdgeId,
    pub label: Label,
    pub from: VertexId,
    pub to: VertexId,
    pub from_white: bool,
    pub to_white: bool,
    pub middle_from: bool,
    pub middle_to: bool,
}

/// One step of a boundary walk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Item {
    Slot(SlotItem),
    Edge(EdgeItem),
    /// An open stub of another label.
    Other(DartId),
}

/// The boundary components of a face, with the label of the slots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryCycles {
    pub label: Label,
    pub cycles: Vec<Vec<Item>>,
}

/// Position of a slot: `(cycle, index)`.
pub type SlotRef = (usize, usize);

/// Search switches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairingOptions {
    pub forbid_lens: bool,
    pub forbid_loop: bool,
    /// Stop after this many completions.
    pub limit: Option<usize>,
}

/// A completion: chords `(tail slot, head slot)` and terminal slots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Completion {
    pub chords: Vec<(SlotRef, SlotRef)>,
    pub terminals: Vec<SlotRef>,
}

/// Read the boundary of `face` as item cycles for label `k`; hoop sides
/// contribute empty cycles.
pub fn face_cycles(chart: &Chart, emb: &Embedding, face: FaceId, k: Label) -> BoundaryCycles {
    let white = |v: VertexId| chart.vertices[v].kind == VertexKind::White;
    let mut cycles = Vec::new();
    for walk in &emb.face_walks[face] {
        let mut items = Vec::new();
        for &h in walk {
            let Some(d) = half_dart(chart, h) else {
                continue;
            };
            let v = chart.darts[d].vertex;
            match half_dart(chart, h ^ 1) {
                None => {
                    if chart.label(d) == k {
                        items.push(Item::Slot(SlotItem {
                            dart: d,
                            vertex: v,
                            white: white(v),
                            dir: chart.direction(d),
                            middle: chart.is_middle(d),
                        }));
                    } else {
                        items.push(Item::Other(d));
                    }
                }
                Some(t) => {
                    let u = chart.darts[t].vertex;
                    items.push(Item::Edge(EdgeItem {
                        edge: chart.darts[d].edge,
                        label: chart.label(d),
                        from: v,
                        to: u,
                        from_white: white(v),
                        to_white: white(u),
                        middle_from: chart.is_middle(d),
                        middle_to: chart.is_middle(t),
                    }));
                }
            }
        }
        cycles.push(items);
    }
    for _ in &emb.face_hoop_sides[face] {
        cycles.push(Vec::new());
    }
    BoundaryCycles { label: k, cycles }
}

impl BoundaryCycles {
    pub fn slot(&self, r: SlotRef) -> &SlotItem {
        match &self.cycles[r.0][r.1] {
            Item::Slot(s) => s,
            _ => panic!("not a slot"),
        }
    }

    /// All slot positions in cycle order.
    pub fn slots(&self) -> Vec<SlotRef> {
        let mut out = Vec::new();
        for (c, items) in self.cycles.iter().enumerate() {
            for (i, it) in items.iter().enumerate() {
                if matches!(it, Item::Slot(_)) {
                    out.push((c, i));
                }
            }
        }
        out
    }

    /// The boundary edge that bounds a lens together with a chord between
    /// slots `p` and `q` of the same cycle, if any: the walk between the
    /// two slots (on one side) is a single edge of an adjacent label joining
    /// the two (distinct, white) slot vertices, and the lens conditions on
    /// middle arcs hold.
    pub fn lens_edge(&self, p: SlotRef, q: SlotRef) -> Option<EdgeId> {
        if p.0 != q.0 {
            return None;
        }
        let items = &self.cycles[p.0];
        let n = items.len();
        let (sp, sq) = (self.slot(p), self.slot(q));
        if !sp.white || !sq.white || sp.vertex == sq.vertex {
            return None;
        }
        for (x, y) in [(p.1, q.1), (q.1, p.1)] {
            if (x + 2) % n != y {
                continue;
            }
            let Item::Edge(e) = &items[(x + 1) % n] else {
                continue;
            };
            if e.label + 1 != self.label && e.label != self.label + 1 {
                continue;
            }
            if !e.from_white || !e.to_white {
                continue;
            }
            let (a, b) = (self.slot((p.0, x)), self.slot((p.0, y)));
            if (e.from, e.to) != (a.vertex, b.vertex) {
                continue;
            }
            let chord_mid = [a.middle, b.middle];
            let edge_mid = [e.middle_from, e.middle_to];
            if lens_condition(edge_mid, chord_mid).is_some() {
                return Some(e.edge);
            }
        }
        None
    }
}

fn crosses(a: (usize, usize), b: (usize, usize)) -> bool {
    let (p, q) = (a.0.min(a.1), a.0.max(a.1));
    let inside = |x: usize| p < x && x < q;
    inside(b.0) != inside(b.1)
}

/// Chords joining two boundary components must be pairwise non-crossing
/// once the annulus is cut along one of them.
fn annulus_planar(cycles: &BoundaryCycles, chords: &[(SlotRef, SlotRef)]) -> bool {
    let Some(&(a, b)) = chords.iter().find(|(p, q)| p.0 != q.0) else {
        return true;
    };
    let (a, b) = if a.0 == 0 { (a, b) } else { (b, a) };
    let (n0, n1) = (cycles.cycles[0].len(), cycles.cycles[1].len());
    let pos = |r: SlotRef| {
        if r.0 == 0 {
            (r.1 + n0 - a.1) % n0
        } else {
            n0 + (r.1 + n1 - b.1) % n1
        }
    };
    let lin: Vec<(usize, usize)> = chords
        .iter()
        .filter(|&&c| c != (a, b) && c != (b, a))
        .map(|&(p, q)| (pos(p), pos(q)))
        .collect();
    for i in 0..lin.len() {
        for j in i + 1..lin.len() {
            if crosses(lin[i], lin[j]) {
                return false;
            }
        }
    }
    true
}

struct Search<'a> {
    cycles: &'a BoundaryCycles,
    slots: Vec<SlotRef>,
    opts: PairingOptions,
    used: Vec<bool>,
    chords: Vec<(SlotRef, SlotRef)>,
    terminals: Vec<SlotRef>,
    out: Vec<Completion>,
}

impl Search<'_> {
    fn full(&self) -> bool {
        self.opts.limit.is_some_and(|l| self.out.len() >= l)
    }

    fn chord_ok(&self, p: SlotRef, q: SlotRef) -> bool {
        let (sp, sq) = (self.cycles.slot(p), self.cycles.slot(q));
        if sp.dir == sq.dir {
            return false;
        }
        if self.opts.forbid_loop && sp.vertex == sq.vertex {
            return false;
        }
        if p.0 == q.0 {
            if self
                .chords
                .iter()
                .any(|&(x, y)| x.0 == p.0 && y.0 == p.0 && crosses((p.1, q.1), (x.1, y.1)))
            {
                return false;
            }
            if self.opts.forbid_lens && self.cycles.lens_edge(p, q).is_some() {
                return false;
            }
        }
        true
    }

    fn rec(&mut self, idx: usize) {
        if self.full() {
            return;
        }
        let mut idx = idx;
        while idx < self.slots.len() && self.used[idx] {
            idx += 1;
        }
        if idx == self.slots.len() {
            if self.cycles.cycles.len() < 2 || annulus_planar(self.cycles, &self.chords) {
                let mut chords = self.chords.clone();
                chords.sort();
                self.out.push(Completion {
                    chords,
                    terminals: self.terminals.clone(),
                });
            }
            return;
        }
        let p = self.slots[idx];
        self.used[idx] = true;
        if self.cycles.slot(p).middle {
            self.terminals.push(p);
            self.rec(idx + 1);
            self.terminals.pop();
        }
        for j in idx + 1..self.slots.len() {
            if self.used[j] {
                continue;
            }
            let q = self.slots[j];
            if !self.chord_ok(p, q) {
                continue;
            }
            let chord = if self.cycles.slot(p).dir == Direction::Outward {
                (p, q)
            } else {
                (q, p)
            };
            self.used[j] = true;
            self.chords.push(chord);
            self.rec(idx + 1);
            self.chords.pop();
            self.used[j] = false;
        }
        self.used[idx] = false;
    }
}

/// All completions (up to `opts.limit`), in a deterministic order.  At most
/// two boundary components are supported; chords between a third component
/// and the others are not checked for planarity.
pub fn solve(cycles: &BoundaryCycles, opts: PairingOptions) -> Vec<Completion> {
    let slots = cycles.slots();
    let mut s = Search {
        cycles,
        used: vec![false; slots.len()],
        slots,
        opts,
        chords: Vec::new(),
        terminals: Vec::new(),
        out: Vec::new(),
    };
    s.rec(0);
    s.out
}

/// Chords of a completion that bound a lens, with the boundary edge.
pub fn lens_chords(cycles: &BoundaryCycles, c: &Completion) -> Vec<((SlotRef, SlotRef), EdgeId)> {
    c.chords
        .iter()
        .filter_map(|&(p, q)| cycles.lens_edge(p, q).map(|e| ((p, q), e)))
        .collect()
}

/// The IO-Calculation count over the slots alone: some choice of middle
/// slots as terminal edges equalises inward and outward slots.
pub fn counting_balance(cycles: &BoundaryCycles) -> bool {
    let (mut i, mut o, mut mi, mut mo) = (0usize, 0usize, 0usize, 0usize);
    for r in cycles.slots() {
        let s = cycles.slot(r);
        match s.dir {
            Direction::Inward => {
                i += 1;
                mi += usize::from(s.middle);
            }
            Direction::Outward => {
                o += 1;
                mo += usize::from(s.middle);
            }
        }
    }
    i - mi <= o && o - mo <= i
}

/// Apply a completion to the chart: each chord joins its two stubs into
/// one edge named `<tail>=<head>`, and each terminal slot is closed by a new
/// black vertex.  Placement records whose two pieces become connected are
/// dropped.
pub fn materialize(chart: &Chart, cycles: &BoundaryCycles, c: &Completion) -> Chart {
    let mut ch = chart.clone();
    let mut dropped = vec![false; ch.edges.len()];
    for &(p, q) in &c.chords {
        let (dp, dq) = (cycles.slot(p).dart, cycles.slot(q).dart);
        let (ep, eq) = (ch.darts[dp].edge, ch.darts[dq].edge);
        ch.edges[ep].name = format!("{}={}", ch.edges[ep].name, ch.edges[eq].name);
        ch.edges[ep].head = Some(dq);
        ch.darts[dq].edge = ep;
        dropped[eq] = true;
    }
    for (i, &t) in c.terminals.iter().enumerate() {
        let d = cycles.slot(t).dart;
        let e = ch.darts[d].edge;
        let v = ch.vertices.len();
        let nd = ch.darts.len();
        let name = format!("x{}", i + 1);
        ch.darts.push(crate::model::Dart {
            name: format!("{name}.0"),
            vertex: v,
            edge: e,
        });
        ch.vertices.push(crate::model::Vertex {
            name,
            kind: VertexKind::Black,
            rotation: vec![nd],
        });
        if ch.edges[e].tail.is_none() {
            ch.edges[e].tail = Some(nd);
        } else {
            ch.edges[e].head = Some(nd);
        }
    }
    let mut new_id = vec![usize::MAX; ch.edges.len()];
    let mut edges = Vec::new();
    for (i, e) in ch.edges.iter().enumerate() {
        if !dropped[i] {
            new_id[i] = edges.len();
            edges.push(e.clone());
        }
    }
    ch.edges = edges;
    for d in &mut ch.darts {
        d.edge = new_id[d.edge];
    }
    // Connected pieces after joining.
    let mut parent: Vec<usize> = (0..ch.vertices.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for e in &ch.edges {
        if let (Some(a), Some(b)) = (e.tail, e.head) {
            let (ra, rb) = (
                find(&mut parent, ch.darts[a].vertex),
                find(&mut parent, ch.darts[b].vertex),
            );
            parent[ra] = rb;
        }
    }
    let piece = |p: &mut Vec<usize>, f: FaceRef| match f {
        FaceRef::Corner(d) => Some(find(p, ch.darts[d].vertex)),
        FaceRef::HoopSide(..) => None,
    };
    let placements = ch.placements.clone();
    ch.placements = placements
        .into_iter()
        .filter(|pl| {
            let (a, b) = (piece(&mut parent, pl.child), piece(&mut parent, pl.parent));
            a.is_none() || a != b
        })
        .collect();
    ch
}
