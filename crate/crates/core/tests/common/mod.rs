//! Shared fixtures: golden files, pictured configurations and complete
//! charts, each built directly from the pictures with the chart builder.

#![allow(dead_code)]

use std::path::PathBuf;

use chartcalc::embed::{Embedding, FaceId};
use chartcalc::engine::config::{place_oval, Binding};
use chartcalc::format::parse;
use chartcalc::model::{Chart, ChartBuilder, DartId, Direction, FaceRef, Label, VertexKind};
use chartcalc::region::Region;

/// Directory of the golden chart files.
pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("golden")
}

/// All golden files as `(name, text)`, sorted by name.
pub fn golden_texts() -> Vec<(String, String)> {
    let mut out: Vec<(String, String)> = std::fs::read_dir(golden_dir())
        .expect("golden dir")
        .map(|e| e.expect("entry").path())
        .filter(|p| p.extension().is_some_and(|x| x == "chart"))
        .map(|p| {
            let name = p.file_stem().expect("stem").to_string_lossy().into_owned();
            (name, std::fs::read_to_string(&p).expect("read golden"))
        })
        .collect();
    out.sort();
    out
}

/// A golden chart by name.
pub fn golden(name: &str) -> Chart {
    let text =
        std::fs::read_to_string(golden_dir().join(format!("{name}.chart"))).expect("golden file");
    parse(&text).expect("golden parses")
}

/// All golden charts.
pub fn goldens() -> Vec<(String, Chart)> {
    golden_texts()
        .into_iter()
        .map(|(n, t)| (n.clone(), parse(&t).unwrap_or_else(|e| panic!("{n}: {e}"))))
        .collect()
}

/// How the label-(m+1) stub inside a polygon corner is directed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Corner {
    /// The inner stub is inward and the outside label-m edge outward.
    InnerIn,
    /// The inner stub is outward and the outside label-m edge inward.
    InnerOut,
}

/// A polygon of label-m edges through white vertices `v1..vk`, oriented
/// coherently `v_i → v_{i+1}`.  Every vertex carries one label-(m+1) stub
/// inside, two outside and an open label-m edge `x_i` outside.  Returns the
/// builder and the inner corner dart of `v1` (the corner after `a1`).
pub fn coherent_polygon(k: usize, m: Label, corners: &[Corner]) -> (ChartBuilder, DartId) {
    use Direction::{Inward as I, Outward as O};
    let mut b = ChartBuilder::new(m + 3);
    let vs: Vec<_> = (0..k)
        .map(|i| b.vertex(&format!("v{}", i + 1), VertexKind::White))
        .collect();
    // Rotation [a_i, e_i, a_{i-1}, s_i', x_i, s_i''].
    let mut out_dart = Vec::new();
    let mut in_dart = Vec::new();
    let mut rest = Vec::new();
    for (i, &v) in vs.iter().enumerate() {
        let a_out = b.dart(v);
        let e = b.dart(v);
        let a_in = b.dart(v);
        let s1 = b.dart(v);
        let x = b.dart(v);
        let s2 = b.dart(v);
        out_dart.push(a_out);
        in_dart.push(a_in);
        // Directions [O, I, I, I, O, O] or [O, O, I, I, I, O].
        let (de, ds1, dx, ds2) = match corners[i] {
            Corner::InnerIn => (I, I, O, O),
            Corner::InnerOut => (O, I, I, O),
        };
        rest.push((i, e, de, s1, ds1, x, dx, s2, ds2));
    }
    for (i, &tail) in out_dart.iter().enumerate() {
        let head = in_dart[(i + 1) % k];
        b.edge(&format!("a{}", i + 1), m, Some(tail), Some(head));
    }
    let open = |b: &mut ChartBuilder, name: String, label: Label, d: DartId, dir: Direction| {
        match dir {
            Direction::Outward => b.edge(&name, label, Some(d), None),
            Direction::Inward => b.edge(&name, label, None, Some(d)),
        };
    };
    for (i, e, de, s1, ds1, x, dx, s2, ds2) in rest {
        let n = i + 1;
        open(&mut b, format!("e{n}"), m + 1, e, de);
        open(&mut b, format!("s{n}'"), m + 1, s1, ds1);
        open(&mut b, format!("x{n}"), m, x, dx);
        open(&mut b, format!("s{n}''"), m + 1, s2, ds2);
    }
    let corner = out_dart[0];
    (b, corner)
}

/// A built configuration with the face of interest.
pub struct Configuration {
    pub chart: Chart,
    pub emb: Embedding,
    pub face: FaceId,
}

/// A coherent polygon with the oval of label m placed inside; the face of
/// interest is the polygon interior minus the oval's disk.
pub fn polygon_with_oval(k: usize, corners: &[Corner], reversed: bool) -> Configuration {
    let m = 2;
    let (b, corner) = coherent_polygon(k, m, corners);
    let chart = b.build().expect("polygon builds");
    let emb = Embedding::new(&chart).expect("polygon embeds");
    let inner = emb.corner_face(&chart, corner);
    let hc = place_oval(&chart, &emb, inner, Binding::Lower, reversed).expect("oval placed");
    Configuration {
        chart: hc.chart,
        emb: hc.emb,
        face: hc.face,
    }
}

/// The configuration of the IO-Calculation example: a feelerless 3-angled
/// disk D1 of Γ_{k−1} with coherent boundary and an oval of label k−1
/// inside, with the label-k edges e1, e2, e3 at v1, v2, v3 inward and not
/// middle.  The face is F = Cl(D1 − D2).
pub fn io_example() -> Configuration {
    polygon_with_oval(3, &[Corner::InnerIn; 3], false)
}

/// The lens configuration: a feelerless 2-angled disk D of Γ_m with
/// coherent boundary, e1 inward at w1 and e2 outward at w2 (so the inner
/// label-(m+1) edges e1' is outward and e2' inward), and the oval inside.
pub fn lens_example() -> Configuration {
    polygon_with_oval(2, &[Corner::InnerOut, Corner::InnerIn], false)
}

/// Complete charts (no open ends) satisfying the chart conditions.
pub fn complete_charts() -> Vec<(String, Chart)> {
    vec![
        ("free-edge".into(), free_edge()),
        ("six-parallel".into(), six_parallel()),
        ("crossing".into(), crossing()),
        ("nested".into(), nested()),
    ]
}

/// One free edge of label 1 between two black vertices in a 2-chart.
pub fn free_edge() -> Chart {
    let mut b = ChartBuilder::new(2);
    b.name("free-edge");
    let b1 = b.vertex("b1", VertexKind::Black);
    let b2 = b.vertex("b2", VertexKind::Black);
    let d1 = b.dart(b1);
    let d2 = b.dart(b2);
    b.edge("f", 1, Some(d1), Some(d2));
    b.build().expect("free edge")
}

/// Two white vertices joined by six edges, labels alternating 1, 2, in a
/// 3-chart; edges 1a, 2a, 1b run w1 → w2, the others w2 → w1.
pub fn six_parallel() -> Chart {
    let mut b = ChartBuilder::new(3);
    b.name("six-parallel");
    let w1 = b.vertex("w1", VertexKind::White);
    let w2 = b.vertex("w2", VertexKind::White);
    let d1: Vec<DartId> = (0..6).map(|_| b.dart(w1)).collect();
    let d2: Vec<DartId> = (0..6).map(|_| b.dart(w2)).collect();
    // Edge i leaves w1 at position i and arrives at w2 at position 5 − i
    // (the mirror order keeps the embedding planar).
    let names = ["1a", "2a", "1b", "2b", "1c", "2c"];
    for i in 0..6 {
        let label = if i % 2 == 0 { 1 } else { 2 };
        let (a, c) = (d1[i], d2[5 - i]);
        if i < 3 {
            b.edge(names[i], label, Some(a), Some(c));
        } else {
            b.edge(names[i], label, Some(c), Some(a));
        }
    }
    b.build().expect("six parallel")
}

/// Two free edges of labels 1 and 3 crossing once in a 4-chart.
pub fn crossing() -> Chart {
    let mut b = ChartBuilder::new(4);
    b.name("crossing");
    let c = b.vertex("c", VertexKind::Crossing);
    let blacks: Vec<_> = (0..4)
        .map(|i| b.vertex(&format!("b{}", i + 1), VertexKind::Black))
        .collect();
    let cd: Vec<DartId> = (0..4).map(|_| b.dart(c)).collect();
    let bd: Vec<DartId> = blacks.iter().map(|&v| b.dart(v)).collect();
    // Rotation at c: label 1 in, label 3 in, label 1 out, label 3 out.
    b.edge("f1", 1, Some(bd[0]), Some(cd[0]));
    b.edge("g1", 3, Some(bd[1]), Some(cd[1]));
    b.edge("f2", 1, Some(cd[2]), Some(bd[2]));
    b.edge("g2", 3, Some(cd[3]), Some(bd[3]));
    b.build().expect("crossing")
}

/// The six-edge chart with a free edge of label 1 and a hoop of label 2
/// placed in its faces.
pub fn nested() -> Chart {
    let base = six_parallel();
    let mut b = ChartBuilder::from_chart(base);
    b.name("nested");
    let b1 = b.vertex("b1", VertexKind::Black);
    let b2 = b.vertex("b2", VertexKind::Black);
    let d1 = b.dart(b1);
    let d2 = b.dart(b2);
    b.edge("f", 1, Some(d1), Some(d2));
    b.place(FaceRef::Corner(d1), FaceRef::Corner(0));
    let h = b.hoop("h", 2);
    b.place(FaceRef::HoopSide(h, 0), FaceRef::Corner(3));
    b.build().expect("nested")
}

// --- mutation suite -------------------------------------------------------

/// Reverse every edge once (open stubs included).
pub fn flip_mutants(c: &Chart) -> Vec<(String, Chart)> {
    (0..c.edges.len())
        .map(|e| {
            let mut m = c.clone();
            let ed = &mut m.edges[e];
            std::mem::swap(&mut ed.tail, &mut ed.head);
            (format!("flip {}", c.edges[e].name), m)
        })
        .collect()
}

/// Change every label once, to each other label in range.
pub fn label_mutants(c: &Chart) -> Vec<(String, Chart)> {
    let mut out = Vec::new();
    for e in 0..c.edges.len() {
        for l in 1..c.degree {
            if l != c.edges[e].label {
                let mut m = c.clone();
                m.edges[e].label = l;
                out.push((format!("relabel {} -> {l}", c.edges[e].name), m));
            }
        }
    }
    out
}

/// Swap two adjacent darts in the rotation of every white vertex.
pub fn rotation_mutants(c: &Chart) -> Vec<(String, Chart)> {
    let mut out = Vec::new();
    for (v, vx) in c.vertices.iter().enumerate() {
        if vx.kind != VertexKind::White {
            continue;
        }
        for i in 0..vx.rotation.len() {
            let mut m = c.clone();
            let n = vx.rotation.len();
            m.vertices[v].rotation.swap(i, (i + 1) % n);
            out.push((format!("swap {}[{i}]", vx.name), m));
        }
    }
    out
}

/// Every single-step mutant: flipped edges, changed labels and broken
/// white-vertex rotations.
pub fn mutants(c: &Chart) -> Vec<(String, Chart)> {
    flip_mutants(c)
        .into_iter()
        .chain(label_mutants(c))
        .chain(rotation_mutants(c))
        .collect()
}

/// Every non-empty set of faces.
pub fn face_subsets(n: usize) -> impl Iterator<Item = Region> {
    (1..1u32 << n).map(move |mask| Region::new((0..n).filter(|&f| mask & (1 << f) != 0)))
}
