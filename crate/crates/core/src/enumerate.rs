//! Exhaustive enumeration of connected components of Γ_m.
//!
//! Components are generated from their BW-reduced multigraphs: every white
//! vertex gets a terminal count `t`, internal edges realise the degree
//! sequence `3 − t`, and every rotation system is tried.  Sphere embeddings
//! are kept and deduplicated by canonical code.  Direction rules are applied
//! as a filter: a component survives when at least one orientation satisfies
//! them.

use std::collections::BTreeMap;

use crate::component::{AbstractComponent, CanonicalCode, Slot};
use crate::reference;
use crate::subgraph::ClassKind;

/// Constraints applied by [`enumerate`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EnumerateFlags {
    /// Exclude internal edges joining a vertex to itself.
    pub no_loop: bool,
    /// Require an orientation with a 2–1 split of directions at every white
    /// vertex.
    pub orient: bool,
    /// At most one terminal edge per white vertex, terminal edges are middle
    /// and the BW-vertex rule holds (implies the orientation check).
    pub local_rules: bool,
}

impl EnumerateFlags {
    /// All constraints on.
    pub fn all() -> Self {
        EnumerateFlags {
            no_loop: true,
            orient: true,
            local_rules: true,
        }
    }
}

/// One enumerated component class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enumerated {
    pub code: CanonicalCode,
    /// A representative (unoriented).
    pub component: AbstractComponent,
}

impl Enumerated {
    pub fn black_count(&self) -> usize {
        self.component.black_count()
    }
}

/// Loop-aware multigraphs on `w` vertices with the given degrees.
fn multigraphs(deg: &[usize], loops: bool) -> Vec<Vec<(usize, usize)>> {
    let w = deg.len();
    let pairs: Vec<(usize, usize)> = (0..w)
        .flat_map(|i| (i..w).map(move |j| (i, j)))
        .filter(|&(i, j)| loops || i != j)
        .collect();
    let mut out = Vec::new();
    fn rec(
        k: usize,
        pairs: &[(usize, usize)],
        rem: &mut Vec<usize>,
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if k == pairs.len() {
            if rem.iter().all(|&r| r == 0) {
                out.push(cur.clone());
            }
            return;
        }
        let (i, j) = pairs[k];
        // Vertex i has no later pair involving it once all pairs (i, *) are done.
        let max = if i == j {
            rem[i] / 2
        } else {
            rem[i].min(rem[j])
        };
        for c in 0..=max {
            if i == j {
                rem[i] -= 2 * c;
            } else {
                rem[i] -= c;
                rem[j] -= c;
            }
            for _ in 0..c {
                cur.push((i, j));
            }
            // Prune: once the last pair starting at i is processed, rem[i] must be 0.
            let last_for_i = pairs.get(k + 1).is_none_or(|p| p.0 != i);
            if !last_for_i || rem[i] == 0 {
                rec(k + 1, pairs, rem, cur, out);
            }
            for _ in 0..c {
                cur.pop();
            }
            if i == j {
                rem[i] += 2 * c;
            } else {
                rem[i] += c;
                rem[j] += c;
            }
        }
    }
    let mut rem = deg.to_vec();
    rec(0, &pairs, &mut rem, &mut Vec::new(), &mut out);
    out
}

/// Every rotation system of a multigraph, with `terminals[v]` terminal
/// slots appended at each vertex.
fn rotation_systems(
    w: usize,
    edges: &[(usize, usize)],
    terminals: &[usize],
) -> Vec<Vec<Vec<Slot>>> {
    let mut darts: Vec<Vec<usize>> = vec![Vec::new(); w];
    for (e, &(a, b)) in edges.iter().enumerate() {
        darts[a].push(2 * e);
        darts[b].push(2 * e + 1);
    }
    let choices: Vec<Vec<Vec<usize>>> = darts
        .iter()
        .map(|ds| {
            if ds.len() == 3 {
                vec![ds.clone(), vec![ds[0], ds[2], ds[1]]]
            } else {
                vec![ds.clone()]
            }
        })
        .collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; w];
    loop {
        let rot: Vec<Vec<Slot>> = (0..w)
            .map(|v| {
                let mut r: Vec<Slot> = choices[v][idx[v]].iter().map(|&d| Slot::Dart(d)).collect();
                r.extend(std::iter::repeat_n(Slot::Terminal, terminals[v]));
                r
            })
            .collect();
        out.push(rot);
        let mut k = 0;
        loop {
            if k == w {
                return out;
            }
            idx[k] += 1;
            if idx[k] < choices[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Non-increasing terminal-count vectors of length `w` with entries at most `max`.
fn terminal_vectors(w: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn rec(w: usize, bound: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == w {
            out.push(cur.clone());
            return;
        }
        for t in (0..=bound).rev() {
            cur.push(t);
            rec(w, t, cur, out);
            cur.pop();
        }
    }
    rec(w, max, &mut Vec::new(), &mut out);
    out
}

/// Enumerate all components with `w` white vertices satisfying `flags`,
/// deduplicated by (unoriented) canonical code, sorted by code.
pub fn enumerate(w: usize, flags: EnumerateFlags) -> Vec<Enumerated> {
    let mut found: BTreeMap<CanonicalCode, AbstractComponent> = BTreeMap::new();
    if w == 0 {
        return Vec::new();
    }
    let max_t = if flags.local_rules {
        1
    } else if w == 1 {
        3
    } else {
        2
    };
    for t in terminal_vectors(w, max_t) {
        let b: usize = t.iter().sum();
        if !(3 * w + b).is_multiple_of(2) {
            continue;
        }
        let deg: Vec<usize> = t.iter().map(|&x| 3 - x).collect();
        for edges in multigraphs(&deg, !flags.no_loop) {
            for rotations in rotation_systems(w, &edges, &t) {
                let comp = AbstractComponent {
                    rotations,
                    edges: edges.clone(),
                    orientation: None,
                };
                if !comp.is_spherical() {
                    continue;
                }
                let code = comp.canonical_code();
                if found.contains_key(&code) {
                    continue;
                }
                if (flags.orient || flags.local_rules)
                    && comp.all_orientations(flags.local_rules).is_empty()
                {
                    continue;
                }
                found.insert(code, comp);
            }
        }
    }
    found
        .into_iter()
        .map(|(code, component)| Enumerated { code, component })
        .collect()
}

/// Orientation classes of a component up to RO-equivalence: one oriented
/// representative per class, sorted by oriented canonical code.
pub fn orientations(comp: &AbstractComponent, local_rules: bool) -> Vec<AbstractComponent> {
    let mut classes: BTreeMap<CanonicalCode, AbstractComponent> = BTreeMap::new();
    for o in comp.all_orientations(local_rules) {
        let oriented = comp.with_orientation(o);
        classes.entry(oriented.canonical_code()).or_insert(oriented);
    }
    classes.into_values().collect()
}

/// Oriented canonical codes of the orientation classes.
pub fn orientation_codes(comp: &AbstractComponent, local_rules: bool) -> Vec<CanonicalCode> {
    orientations(comp, local_rules)
        .iter()
        .map(|c| c.canonical_code())
        .collect()
}

/// Lemma selector for [`verify_classification`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassificationLemma {
    /// Components with two or three white vertices.
    SmallComponents,
    /// Components with five white vertices.
    FiveWhites,
    /// Orientations of the components with five white vertices.
    FiveWhiteOrientations,
}

/// Outcome of comparing an enumeration with the reference set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationReport {
    /// Reference entries reproduced by the enumeration, with their names.
    pub matched: Vec<String>,
    /// Reference entries the enumeration did not produce.
    pub missing: Vec<String>,
    /// Enumerated codes without a reference entry.
    pub extras: Vec<CanonicalCode>,
}

impl ClassificationReport {
    pub fn is_match(&self) -> bool {
        self.missing.is_empty() && self.extras.is_empty()
    }
}

fn compare(found: &[CanonicalCode], expected: &[(String, CanonicalCode)]) -> ClassificationReport {
    let mut matched = Vec::new();
    let mut missing = Vec::new();
    for (name, code) in expected {
        if found.contains(code) {
            matched.push(name.clone());
        } else {
            missing.push(name.clone());
        }
    }
    let extras = found
        .iter()
        .filter(|c| !expected.iter().any(|(_, e)| e == *c))
        .cloned()
        .collect();
    ClassificationReport {
        matched,
        missing,
        extras,
    }
}

/// Run an enumeration and compare it with the hand-encoded references.
pub fn verify_classification(lemma: ClassificationLemma) -> ClassificationReport {
    match lemma {
        ClassificationLemma::SmallComponents => {
            let mut found: Vec<CanonicalCode> = Vec::new();
            for w in [2, 3] {
                found.extend(
                    enumerate(w, EnumerateFlags::all())
                        .into_iter()
                        .map(|e| e.code),
                );
            }
            let expected: Vec<(String, CanonicalCode)> =
                [ClassKind::Theta, ClassKind::Oval, ClassKind::SkewTheta]
                    .into_iter()
                    .map(|k| {
                        (
                            k.to_string(),
                            reference::reference_graph(k)
                                .expect("reference")
                                .canonical_code(),
                        )
                    })
                    .collect();
            compare(&found, &expected)
        }
        ClassificationLemma::FiveWhites => {
            let found: Vec<CanonicalCode> = enumerate(5, EnumerateFlags::all())
                .into_iter()
                .map(|e| e.code)
                .collect();
            let expected: Vec<(String, CanonicalCode)> = reference::FIG12_IDS
                .iter()
                .map(|&c| {
                    let k = ClassKind::Fig12(c);
                    (
                        k.to_string(),
                        reference::reference_graph(k)
                            .expect("reference")
                            .canonical_code(),
                    )
                })
                .collect();
            compare(&found, &expected)
        }
        ClassificationLemma::FiveWhiteOrientations => {
            let mut report = ClassificationReport {
                matched: Vec::new(),
                missing: Vec::new(),
                extras: Vec::new(),
            };
            for r in reference::oriented_references() {
                let graph =
                    reference::reference_graph(ClassKind::Fig12(r.graph)).expect("reference");
                let found = orientation_codes(&graph, true);
                let expected = r.expected_codes();
                let name = format!("fig12({}) -> fig13({})", r.graph, r.panel);
                let mut exp_sorted = expected.clone();
                exp_sorted.sort();
                exp_sorted.dedup();
                if found == exp_sorted {
                    report.matched.push(name);
                } else {
                    report.missing.extend(
                        exp_sorted
                            .iter()
                            .filter(|c| !found.contains(c))
                            .map(|_| name.clone()),
                    );
                    report
                        .extras
                        .extend(found.iter().filter(|c| !exp_sorted.contains(c)).cloned());
                    if report.missing.is_empty() && report.extras.is_empty() {
                        report.missing.push(name);
                    }
                }
            }
            report
        }
    }
}
