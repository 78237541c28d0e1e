//! Hand-encoded reference components.
//!
//! The small components (θ-curve, oval, skew θ-curve), the nine components
//! with five white vertices and their refined orientations are written down
//! once from the pictures.  Vertex and edge order follows the pictures where
//! they name them (e.g. `w1..w5`, `e1..e6` for graph (g)); rotation lists give
//! the counter-clockwise order of internal darts with `T` for a terminal
//! edge.  The enumerator never reads these tables; they are only compared
//! against its output.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use crate::component::{AbstractComponent, CanonicalCode, ComponentNames, Orientation, Slot};
use crate::model::Direction;
use crate::subgraph::ClassKind;

/// Identifiers of the nine graphs with five white vertices.
pub const FIG12_IDS: [char; 9] = ['a', 'b', 'c', 'd', 'e', 'f', 'g', 'h', 'i'];

/// Terminal marker in rotation tables.
const T: i32 = -1;

struct GraphTable {
    kind: ClassKind,
    edges: &'static [(usize, usize)],
    rotations: &'static [&'static [i32]],
}

const TABLES: &[GraphTable] = &[
    GraphTable {
        kind: ClassKind::Theta,
        edges: &[(0, 1), (0, 1), (0, 1)],
        rotations: &[&[0, 2, 4], &[1, 5, 3]],
    },
    GraphTable {
        kind: ClassKind::Oval,
        edges: &[(0, 1), (0, 1)],
        rotations: &[&[0, 2, T], &[1, 3, T]],
    },
    GraphTable {
        kind: ClassKind::SkewTheta,
        edges: &[(0, 1), (0, 2), (1, 2), (1, 2)],
        rotations: &[&[0, 2, T], &[1, 4, 6], &[3, 7, 5]],
    },
    GraphTable {
        kind: ClassKind::Fig12('a'),
        edges: &[(0, 1), (0, 2), (1, 3), (2, 4), (3, 4), (3, 4)],
        rotations: &[&[0, 2, T], &[1, 4, T], &[3, 6, T], &[5, 8, 10], &[7, 11, 9]],
    },
    GraphTable {
        kind: ClassKind::Fig12('b'),
        edges: &[(0, 3), (0, 4), (3, 4), (1, 3), (1, 2), (2, 4)],
        rotations: &[&[0, 2, T], &[6, 8, T], &[9, 10, T], &[1, 4, 7], &[3, 11, 5]],
    },
    GraphTable {
        kind: ClassKind::Fig12('c'),
        edges: &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)],
        rotations: &[&[0, 2, 4], &[6, 10, 8], &[1, 7, T], &[3, 9, T], &[5, 11, T]],
    },
    GraphTable {
        kind: ClassKind::Fig12('d'),
        edges: &[(0, 1), (0, 2), (1, 4), (1, 4), (2, 3), (2, 3), (3, 4)],
        rotations: &[
            &[0, 2, T],
            &[1, 4, 6],
            &[3, 8, 10],
            &[9, 12, 11],
            &[5, 13, 7],
        ],
    },
    GraphTable {
        kind: ClassKind::Fig12('e'),
        edges: &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 4), (3, 4), (3, 4)],
        rotations: &[
            &[0, 2, T],
            &[1, 4, 6],
            &[3, 8, 5],
            &[7, 10, 12],
            &[9, 13, 11],
        ],
    },
    GraphTable {
        kind: ClassKind::Fig12('f'),
        edges: &[(0, 1), (0, 4), (1, 2), (1, 3), (2, 3), (2, 4), (3, 4)],
        rotations: &[
            &[0, 2, T],
            &[1, 4, 6],
            &[5, 10, 8],
            &[7, 9, 12],
            &[3, 13, 11],
        ],
    },
    GraphTable {
        kind: ClassKind::Fig12('g'),
        edges: &[(0, 1), (0, 1), (1, 2), (2, 3), (3, 4), (2, 4)],
        rotations: &[&[0, 2, T], &[1, 3, 4], &[5, 6, 10], &[7, 8, T], &[9, 11, T]],
    },
    GraphTable {
        kind: ClassKind::Fig12('h'),
        edges: &[(0, 4), (0, 4), (1, 3), (1, 3), (2, 3), (2, 4)],
        rotations: &[&[0, 2, T], &[4, 6, T], &[8, 10, T], &[5, 7, 9], &[1, 3, 11]],
    },
    GraphTable {
        kind: ClassKind::Fig12('i'),
        edges: &[(0, 1), (0, 1), (1, 3), (2, 3), (2, 4), (2, 4), (3, 4)],
        rotations: &[
            &[0, 2, T],
            &[1, 3, 4],
            &[6, 8, 10],
            &[5, 7, 12],
            &[9, 13, 11],
        ],
    },
];

fn build(t: &GraphTable) -> AbstractComponent {
    AbstractComponent {
        rotations: t
            .rotations
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&x| {
                        if x == T {
                            Slot::Terminal
                        } else {
                            Slot::Dart(x as usize)
                        }
                    })
                    .collect()
            })
            .collect(),
        edges: t.edges.to_vec(),
        orientation: None,
    }
}

/// The unoriented reference graph of a class.
pub fn reference_graph(kind: ClassKind) -> Option<AbstractComponent> {
    TABLES.iter().find(|t| t.kind == kind).map(build)
}

/// All reference classes in table order.
pub fn reference_kinds() -> Vec<ClassKind> {
    TABLES.iter().map(|t| t.kind).collect()
}

fn code_table() -> &'static BTreeMap<CanonicalCode, ClassKind> {
    static TABLE: OnceLock<BTreeMap<CanonicalCode, ClassKind>> = OnceLock::new();
    TABLE.get_or_init(|| {
        TABLES
            .iter()
            .map(|t| (build(t).canonical_code(), t.kind))
            .collect()
    })
}

/// The reference class with the given unoriented code.
pub fn class_of_code(code: &CanonicalCode) -> Option<ClassKind> {
    code_table().get(code).copied()
}

/// Names used by the pictures for graph (g): `w1..w5`, `e1..e6`.
pub fn fig12g_names() -> ComponentNames {
    ComponentNames {
        whites: (1..=5).map(|i| format!("w{i}")).collect(),
        edges: (1..=6).map(|i| format!("e{i}")).collect(),
    }
}

/// A (possibly partial) orientation read off a refined picture.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientedReference {
    /// The graph with five white vertices.
    pub graph: char,
    /// The refined picture.
    pub panel: char,
    /// Fixed edge directions: `(edge, forward)`.
    pub edges: Vec<(usize, bool)>,
    /// Fixed terminal directions at white vertices.
    pub terminals: Vec<(usize, Direction)>,
    /// True when the picture fixes only some directions.
    pub partial: bool,
}

impl OrientedReference {
    /// Orientations of the graph (local rules) agreeing with the fixed
    /// directions.
    pub fn completions(&self) -> Vec<AbstractComponent> {
        let g = reference_graph(ClassKind::Fig12(self.graph)).expect("reference graph");
        g.all_orientations(true)
            .into_iter()
            .filter(|o| {
                self.edges.iter().all(|&(e, f)| o.forward[e] == f)
                    && self
                        .terminals
                        .iter()
                        .all(|&(v, d)| o.terminal[v] == Some(d))
            })
            .map(|o| g.with_orientation(o))
            .collect()
    }

    /// Oriented codes of all completions (with repetitions removed).
    pub fn expected_codes(&self) -> Vec<CanonicalCode> {
        let mut codes: Vec<CanonicalCode> = self
            .completions()
            .iter()
            .map(|c| c.canonical_code())
            .collect();
        codes.sort();
        codes.dedup();
        codes
    }

    /// The fully oriented component when the picture fixes every direction.
    pub fn full(&self) -> Option<AbstractComponent> {
        if self.partial {
            return None;
        }
        let g = reference_graph(ClassKind::Fig12(self.graph))?;
        let mut forward = vec![false; g.edges.len()];
        for &(e, f) in &self.edges {
            forward[e] = f;
        }
        let mut terminal = vec![None; g.white_count()];
        for &(v, d) in &self.terminals {
            terminal[v] = Some(d);
        }
        Some(g.with_orientation(Orientation { forward, terminal }))
    }
}

fn full(
    graph: char,
    panel: char,
    forward: &[bool],
    terminals: &[(usize, Direction)],
) -> OrientedReference {
    OrientedReference {
        graph,
        panel,
        edges: forward.iter().copied().enumerate().collect(),
        terminals: terminals.to_vec(),
        partial: false,
    }
}

/// The refined orientation pictures, keyed by graph.
pub fn oriented_references() -> Vec<OrientedReference> {
    use Direction::{Inward as I, Outward as O};
    vec![
        full(
            'a',
            'a',
            &[true, true, false, false, true, false],
            &[(0, I), (1, O), (2, O)],
        ),
        full(
            'b',
            'b',
            &[true, true, true, true, true, false],
            &[(0, I), (1, I), (2, O)],
        ),
        full(
            'c',
            'c',
            &[false, true, true, false, true, true],
            &[(2, I), (3, O), (4, O)],
        ),
        // The picture fixes a feelerless 2-angled disk whose two outside
        // edges are both oriented outward.
        OrientedReference {
            graph: 'd',
            panel: 'd',
            edges: vec![(1, false), (6, true)],
            terminals: vec![],
            partial: true,
        },
        // The picture fixes the directions at the BW-vertex.
        OrientedReference {
            graph: 'e',
            panel: 'e',
            edges: vec![(0, true), (1, true)],
            terminals: vec![(0, I)],
            partial: true,
        },
        full(
            'g',
            'f',
            &[true, true, true, true, false, false],
            &[(0, I), (3, O), (4, I)],
        ),
        full(
            'h',
            'g',
            &[true, true, true, true, false, false],
            &[(0, I), (1, I), (2, O)],
        ),
    ]
}

/// The refined reference for graph (g), fully oriented.
pub fn fig13f() -> AbstractComponent {
    oriented_references()
        .into_iter()
        .find(|r| r.panel == 'f')
        .and_then(|r| r.full())
        .expect("fig13(f)")
}
