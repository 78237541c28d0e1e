//! Abstract connected components of a label subgraph Γ_m.
//!
//! A component has white vertices of degree three (cyclic order of label-m
//! darts), black vertices of degree one (represented as terminal slots at
//! their white neighbour) and internal edges.  The canonical code works on
//! the BW-reduced map, in which every terminal edge is collapsed into a
//! weight on its white vertex; this matches the convention of drawing
//! BW-vertices as dots and makes codes independent of the corner the
//! terminal edge occupies.

use std::fmt;

use crate::model::{Chart, ChartBuilder, DartId, Direction, Label, VertexId, VertexKind};

/// One position in the cyclic order of label-m darts at a white vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Slot {
    /// End of an internal edge: dart `2e` is at `edges[e].0`, `2e+1` at `edges[e].1`.
    Dart(usize),
    /// A terminal edge ending at a black vertex.
    Terminal,
}

/// Directions of a component's edges.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Orientation {
    /// `true` when internal edge `e` runs from `edges[e].0` to `edges[e].1`.
    pub forward: Vec<bool>,
    /// Direction of the terminal edge at each white vertex (seen from the
    /// white vertex), `None` when the vertex carries no terminal edge.
    pub terminal: Vec<Option<Direction>>,
}

/// Component of Γ_m with white vertices of degree three.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbstractComponent {
    /// Counter-clockwise slots at each white vertex.
    pub rotations: Vec<Vec<Slot>>,
    /// Internal edges as pairs of white vertices.
    pub edges: Vec<(usize, usize)>,
    /// Optional edge directions.
    pub orientation: Option<Orientation>,
}

/// Canonical code of a component up to relabeling, reflection and (for
/// oriented components) global orientation reversal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode(pub Vec<u32>);

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| format!("{x:x}")).collect();
        write!(f, "{}", parts.join("."))
    }
}

impl AbstractComponent {
    /// Number of white vertices.
    pub fn white_count(&self) -> usize {
        self.rotations.len()
    }

    /// Number of black vertices (terminal edges).
    pub fn black_count(&self) -> usize {
        self.rotations
            .iter()
            .flatten()
            .filter(|s| **s == Slot::Terminal)
            .count()
    }

    /// Number of label-m edges (internal plus terminal).
    pub fn edge_count(&self) -> usize {
        self.edges.len() + self.black_count()
    }

    /// True when some internal edge joins a vertex to itself.
    pub fn has_loop(&self) -> bool {
        self.edges.iter().any(|(a, b)| a == b)
    }

    /// White vertex of internal dart `d`.
    pub fn dart_vertex(&self, d: usize) -> usize {
        let (a, b) = self.edges[d / 2];
        if d.is_multiple_of(2) {
            a
        } else {
            b
        }
    }

    /// Terminal count of each white vertex.
    pub fn terminal_counts(&self) -> Vec<usize> {
        self.rotations
            .iter()
            .map(|r| r.iter().filter(|s| **s == Slot::Terminal).count())
            .collect()
    }

    /// Direction of internal dart `d` at its vertex under `o`.
    pub fn dart_direction(o: &Orientation, d: usize) -> Direction {
        let fwd = o.forward[d / 2];
        // Dart 2e sits at the first endpoint; a forward edge leaves it.
        if d.is_multiple_of(2) == fwd {
            Direction::Outward
        } else {
            Direction::Inward
        }
    }

    /// Direction of every slot at white vertex `v` under `o`.
    pub fn slot_directions(&self, o: &Orientation, v: usize) -> Vec<Direction> {
        self.rotations[v]
            .iter()
            .map(|s| match s {
                Slot::Dart(d) => Self::dart_direction(o, *d),
                Slot::Terminal => o.terminal[v].expect("terminal direction is set"),
            })
            .collect()
    }

    /// Index (within the rotation) of the middle slot at `v`: the slot whose
    /// direction is the minority of the three.
    pub fn middle_slot(&self, o: &Orientation, v: usize) -> Option<usize> {
        let dirs = self.slot_directions(o, v);
        if dirs.len() != 3 {
            return None;
        }
        let ins = dirs.iter().filter(|d| **d == Direction::Inward).count();
        let minority = match ins {
            1 => Direction::Inward,
            2 => Direction::Outward,
            _ => return None,
        };
        dirs.iter().position(|d| *d == minority)
    }

    /// Check the orientation rules at every white vertex: a 2–1 split of
    /// directions, and (with `local_rules`) terminal edges being middle,
    /// which forces the two other darts of a BW-vertex to agree.
    pub fn orientation_is_valid(&self, o: &Orientation, local_rules: bool) -> bool {
        (0..self.white_count()).all(|v| {
            let Some(mid) = self.middle_slot(o, v) else {
                return false;
            };
            if local_rules {
                let terms = self.rotations[v]
                    .iter()
                    .filter(|s| **s == Slot::Terminal)
                    .count();
                if terms > 1 {
                    return false;
                }
                if terms == 1 && self.rotations[v][mid] != Slot::Terminal {
                    return false;
                }
            }
            true
        })
    }

    /// Every orientation satisfying the rules (not reduced by symmetry).
    pub fn all_orientations(&self, local_rules: bool) -> Vec<Orientation> {
        let ne = self.edges.len();
        let term_vertices: Vec<usize> = (0..self.white_count())
            .filter(|&v| self.rotations[v].contains(&Slot::Terminal))
            .collect();
        let mut out = Vec::new();
        for bits in 0u64..(1u64 << ne) {
            let forward: Vec<bool> = (0..ne).map(|e| bits >> e & 1 == 0).collect();
            for tbits in 0u64..(1u64 << term_vertices.len()) {
                let mut terminal = vec![None; self.white_count()];
                for (k, &v) in term_vertices.iter().enumerate() {
                    terminal[v] = Some(if tbits >> k & 1 == 0 {
                        Direction::Inward
                    } else {
                        Direction::Outward
                    });
                }
                let o = Orientation {
                    forward: forward.clone(),
                    terminal,
                };
                if self.orientation_is_valid(&o, local_rules) {
                    out.push(o);
                }
            }
        }
        out
    }

    /// The same component with a different orientation.
    pub fn with_orientation(&self, o: Orientation) -> AbstractComponent {
        AbstractComponent {
            orientation: Some(o),
            ..self.clone()
        }
    }

    /// The reflected component (every rotation reversed).
    pub fn reflected(&self) -> AbstractComponent {
        let mut c = self.clone();
        for r in &mut c.rotations {
            if r.len() > 1 {
                r[1..].reverse();
            }
        }
        c
    }

    /// The component with every direction reversed.
    pub fn reversed(&self) -> AbstractComponent {
        let mut c = self.clone();
        if let Some(o) = &mut c.orientation {
            for f in &mut o.forward {
                *f = !*f;
            }
            for t in o.terminal.iter_mut().flatten() {
                *t = t.flip();
            }
        }
        c
    }

    /// Reduced rotation: internal darts only, in counter-clockwise order.
    fn reduced_sigma(&self) -> Vec<usize> {
        let mut sigma = vec![usize::MAX; 2 * self.edges.len()];
        for rot in &self.rotations {
            let ds: Vec<usize> = rot
                .iter()
                .filter_map(|s| match s {
                    Slot::Dart(d) => Some(*d),
                    Slot::Terminal => None,
                })
                .collect();
            for (i, &d) in ds.iter().enumerate() {
                sigma[d] = ds[(i + 1) % ds.len()];
            }
        }
        sigma
    }

    /// Number of faces of the reduced map (terminal edges do not change it).
    pub fn face_count(&self) -> usize {
        let sigma = self.reduced_sigma();
        let n = sigma.len();
        let mut seen = vec![false; n];
        let mut faces = 0;
        for s in 0..n {
            if seen[s] {
                continue;
            }
            faces += 1;
            let mut d = s;
            while !seen[d] {
                seen[d] = true;
                d = sigma[d ^ 1];
            }
        }
        if n == 0 {
            1
        } else {
            faces
        }
    }

    /// True when the rotation system is a sphere embedding of a connected
    /// component.
    pub fn is_spherical(&self) -> bool {
        let v = self.white_count() as i64;
        let e = self.edges.len() as i64;
        if e == 0 {
            return v == 1;
        }
        v - e + self.face_count() as i64 == 2 && self.is_connected()
    }

    fn is_connected(&self) -> bool {
        let n = self.white_count();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(a, b) in &self.edges {
                for (x, y) in [(a, b), (b, a)] {
                    if x == v && !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Canonical code: minimal breadth-first encoding over all start darts,
    /// both reflections and, when oriented, both global orientations.
    pub fn canonical_code(&self) -> CanonicalCode {
        let weights = self.terminal_counts();
        if self.edges.is_empty() {
            let mut best: Option<Vec<u32>> = None;
            let variants: Vec<Option<Orientation>> = match &self.orientation {
                Some(_) => vec![self.orientation.clone(), self.reversed().orientation],
                None => vec![None],
            };
            for o in variants {
                let ins = o
                    .as_ref()
                    .map(|o| {
                        o.terminal
                            .iter()
                            .filter(|t| **t == Some(Direction::Inward))
                            .count() as u32
                    })
                    .unwrap_or(0);
                let code = vec![0xffff, weights.first().copied().unwrap_or(0) as u32, ins];
                if best.as_ref().is_none_or(|b| code < *b) {
                    best = Some(code);
                }
            }
            return CanonicalCode(best.unwrap_or_default());
        }
        let mut best: Option<Vec<u32>> = None;
        let oriented = self.orientation.is_some();
        for reflect in [false, true] {
            let base = if reflect {
                self.reflected()
            } else {
                self.clone()
            };
            let reversals: &[bool] = if oriented { &[false, true] } else { &[false] };
            for &rev in reversals {
                let comp = if rev { base.reversed() } else { base.clone() };
                let sigma = comp.reduced_sigma();
                for start in 0..sigma.len() {
                    let code = comp.bfs_code(&sigma, start, &weights);
                    if best.as_ref().is_none_or(|b| code < *b) {
                        best = Some(code);
                    }
                }
            }
        }
        CanonicalCode(best.expect("non-empty component"))
    }

    fn bfs_code(&self, sigma: &[usize], start: usize, weights: &[usize]) -> Vec<u32> {
        let n = sigma.len();
        let mut num = vec![u32::MAX; n];
        let mut order = Vec::with_capacity(n);
        num[start] = 0;
        order.push(start);
        let mut i = 0;
        while i < order.len() {
            let d = order[i];
            i += 1;
            for next in [sigma[d], d ^ 1] {
                if num[next] == u32::MAX {
                    num[next] = order.len() as u32;
                    order.push(next);
                }
            }
        }
        let mut code = Vec::with_capacity(order.len() * 5 + 1);
        code.push(order.len() as u32);
        for &d in &order {
            let v = self.dart_vertex(d);
            code.push(num[sigma[d]]);
            code.push(num[d ^ 1]);
            code.push(weights[v] as u32);
            if let Some(o) = &self.orientation {
                code.push(match Self::dart_direction(o, d) {
                    Direction::Inward => 0,
                    Direction::Outward => 1,
                });
                code.push(match o.terminal[v] {
                    None => 0,
                    Some(Direction::Inward) => 1,
                    Some(Direction::Outward) => 2,
                });
            }
        }
        code
    }

    /// Build a chart realising the component with label `m` in an
    /// `degree`-chart: white vertices `w1..`, black vertices `b1..`,
    /// internal edges `e1..`, terminal edges `t1..`, and one label-(m+1)
    /// stub per corner, directed as condition (iii) demands.
    ///
    /// Returns `None` when the component is unoriented or some white vertex
    /// violates the direction split.
    pub fn to_chart(&self, degree: u32, m: Label, names: Option<&ComponentNames>) -> Option<Chart> {
        self.to_chart_labels(degree, m, m + 1, names)
    }

    /// [`AbstractComponent::to_chart`] with an explicit stub label (`m ± 1`).
    pub fn to_chart_labels(
        &self,
        degree: u32,
        m: Label,
        stub_label: Label,
        names: Option<&ComponentNames>,
    ) -> Option<Chart> {
        let o = self.orientation.as_ref()?;
        let mut b = ChartBuilder::new(degree);
        let white_name = |v: usize| {
            names
                .and_then(|n| n.whites.get(v).cloned())
                .unwrap_or(format!("w{}", v + 1))
        };
        let edge_name = |e: usize| {
            names
                .and_then(|n| n.edges.get(e).cloned())
                .unwrap_or(format!("e{}", e + 1))
        };
        let whites: Vec<VertexId> = (0..self.white_count())
            .map(|v| b.vertex(&white_name(v), VertexKind::White))
            .collect();
        let mut dart_of_internal = vec![usize::MAX; 2 * self.edges.len()];
        let mut terminal_dart = vec![None; self.white_count()];
        let mut corner_stubs: Vec<(DartId, Direction)> = Vec::new();
        for v in 0..self.white_count() {
            let mid = self.middle_slot(o, v)?;
            let dirs = self.slot_directions(o, v);
            let mid_dir = dirs[mid];
            for (i, s) in self.rotations[v].iter().enumerate() {
                let d = b.dart(whites[v]);
                match s {
                    Slot::Dart(x) => dart_of_internal[*x] = d,
                    Slot::Terminal => terminal_dart[v] = Some(d),
                }
                let next = (i + 1) % 3;
                let stub_dir = if i == mid || next == mid {
                    mid_dir
                } else {
                    mid_dir.flip()
                };
                let sd = b.dart(whites[v]);
                corner_stubs.push((sd, stub_dir));
            }
        }
        for e in 0..self.edges.len() {
            let (dx, dy) = (dart_of_internal[2 * e], dart_of_internal[2 * e + 1]);
            if o.forward[e] {
                b.edge(&edge_name(e), m, Some(dx), Some(dy));
            } else {
                b.edge(&edge_name(e), m, Some(dy), Some(dx));
            }
        }
        let mut tcount = 0;
        for (v, td) in terminal_dart.iter().enumerate() {
            if let Some(d) = *td {
                tcount += 1;
                let bv = b.vertex(&format!("b{tcount}"), VertexKind::Black);
                let bd = b.dart(bv);
                let name = format!("t{tcount}");
                match o.terminal[v]? {
                    Direction::Inward => b.edge(&name, m, Some(bd), Some(d)),
                    Direction::Outward => b.edge(&name, m, Some(d), Some(bd)),
                };
            }
        }
        for (k, (sd, dir)) in corner_stubs.into_iter().enumerate() {
            let name = format!("s{}", k + 1);
            match dir {
                Direction::Outward => b.edge(&name, stub_label, Some(sd), None),
                Direction::Inward => b.edge(&name, stub_label, None, Some(sd)),
            };
        }
        b.build().ok()
    }
}

/// Optional names for vertices and internal edges used by [`AbstractComponent::to_chart`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ComponentNames {
    pub whites: Vec<String>,
    pub edges: Vec<String>,
}
