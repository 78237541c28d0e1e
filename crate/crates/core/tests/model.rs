//! Chart model, validator and text format.

mod common;

use std::collections::BTreeSet;

use chartcalc::format::{parse, serialize, ParseError};
use chartcalc::model::{Clause, FaceRef};
use chartcalc::{
    ro_transform, validate, Chart, ChartBuilder, Embedding, ModelError, ValidationMode, VertexKind,
};
use common::*;

/// Independent face count: orbits of the face permutation on the darts of
/// complete edges (walk along an edge, then turn to the next complete dart
/// counter-clockwise at the arrival vertex), plus the hoops.
fn oracle_faces(chart: &Chart) -> usize {
    let complete = |d: usize| chart.edges[chart.darts[d].edge].is_complete();
    let twin = |d: usize| {
        chart.edges[chart.darts[d].edge]
            .other(d)
            .expect("complete edge")
    };
    let next = |d: usize| {
        let rot = &chart.vertices[chart.darts[d].vertex].rotation;
        let i = rot.iter().position(|&x| x == d).expect("in rotation");
        (1..=rot.len())
            .map(|s| rot[(i + s) % rot.len()])
            .find(|&x| complete(x))
            .expect("dart")
    };
    let mut seen = BTreeSet::new();
    let mut faces = 0;
    for d in (0..chart.darts.len()).filter(|&d| complete(d)) {
        if seen.contains(&d) {
            continue;
        }
        faces += 1;
        let mut x = d;
        while seen.insert(x) {
            x = next(twin(x));
        }
    }
    // Valid for connected charts; every hoop splits one face in two.
    faces.max(1) + chart.hoops.len()
}

fn euler(chart: &Chart) -> i64 {
    let v = chart.vertices.len() as i64;
    let e = chart.edges.iter().filter(|e| e.is_complete()).count() as i64;
    v - e + oracle_faces(chart) as i64
}

#[test]
fn goldens_are_valid_charts() {
    let gs = goldens();
    assert_eq!(gs.len(), 17);
    for (name, c) in &gs {
        let v = validate(c, ValidationMode::AxiomsOnly);
        assert!(v.is_empty(), "{name}: {v:?}");
    }
}

#[test]
fn goldens_satisfy_euler_on_the_sphere() {
    for (name, c) in goldens() {
        assert_eq!(euler(&c), 2, "{name} (oracle)");
        let emb = Embedding::new(&c).expect("embeds");
        assert_eq!(emb.euler_characteristic(&c), 2, "{name}");
        assert_eq!(emb.face_count, oracle_faces(&c), "{name}");
    }
}

#[test]
fn theta_has_three_faces_and_graph_g_three() {
    let theta = golden("theta");
    assert_eq!(Embedding::new(&theta).unwrap().face_count, 3);
    let g = golden("fig12g");
    assert_eq!(g.vertices.len(), 8);
    assert_eq!(g.edges.iter().filter(|e| e.is_complete()).count(), 9);
    assert_eq!(Embedding::new(&g).unwrap().face_count, 3);
}

#[test]
fn parse_serialize_round_trip_on_goldens() {
    for (name, text) in golden_texts() {
        let c = parse(&text).expect("parses");
        let s = serialize(&c);
        assert_eq!(parse(&s).expect("reparses"), c, "{name}");
        assert_eq!(
            serialize(&parse(&s).unwrap()),
            s,
            "{name}: serialization is a fixed point"
        );
        assert_eq!(s, text, "{name}: goldens are stored in serialized form");
    }
}

#[test]
fn round_trip_on_complete_charts_with_hoops_and_placements() {
    for (name, c) in complete_charts() {
        let s = serialize(&c);
        assert_eq!(parse(&s).expect("reparses"), c, "{name}");
    }
}

// --- mutation suite -------------------------------------------------------

#[test]
fn every_mutant_of_every_golden_is_caught() {
    let mut total = 0;
    for (name, c) in goldens() {
        let ms = mutants(&c);
        assert!(!ms.is_empty());
        for (what, m) in ms {
            total += 1;
            assert!(
                !validate(&m, ValidationMode::AxiomsOnly).is_empty(),
                "{name}: {what} not caught"
            );
        }
    }
    assert!(total > 500, "{total} mutants");
}

#[test]
fn flipping_an_edge_breaks_the_white_direction_condition() {
    let mut c = golden("theta");
    let e = c.edge_by_name("e1").unwrap();
    let ed = &mut c.edges[e];
    std::mem::swap(&mut ed.tail, &mut ed.head);
    let v = validate(&c, ValidationMode::AxiomsOnly);
    assert!(
        v.iter().any(|x| x.clause == Clause::WhiteDirections),
        "{v:?}"
    );
}

#[test]
fn label_out_of_range_is_reported() {
    let mut c = golden("oval");
    c.edges[0].label = c.degree;
    let v = validate(&c, ValidationMode::AxiomsOnly);
    assert!(v.iter().any(|x| x.clause == Clause::LabelRange), "{v:?}");
}

#[test]
fn degree_mismatch_is_reported() {
    let mut b = ChartBuilder::new(3);
    let w = b.vertex("w", VertexKind::White);
    let d = b.dart(w);
    b.edge("e", 1, Some(d), None);
    let c = b.build().unwrap();
    let v = validate(&c, ValidationMode::AxiomsOnly);
    assert!(v.iter().any(|x| x.clause == Clause::Degree), "{v:?}");
}

#[test]
fn free_edge_is_valid_but_not_minimal() {
    let c = free_edge();
    assert!(validate(&c, ValidationMode::AxiomsOnly).is_empty());
    let v = validate(&c, ValidationMode::MinimalAssumptions);
    assert!(
        v.iter().any(|x| x.clause == Clause::NoFreeOrSimpleHoop),
        "{v:?}"
    );
}

#[test]
fn complete_fixture_charts_are_valid() {
    for (name, c) in complete_charts() {
        let v = validate(&c, ValidationMode::AxiomsOnly);
        assert!(v.is_empty(), "{name}: {v:?}");
        let emb = Embedding::new(&c).unwrap();
        // V − E + F = 1 + (number of connected pieces) on the sphere.
        assert_eq!(
            emb.euler_characteristic(&c),
            1 + emb.piece_count as i64,
            "{name}"
        );
    }
}

#[test]
fn crossing_with_adjacent_labels_is_rejected() {
    let mut c = crossing();
    let g1 = c.edge_by_name("g1").unwrap();
    let g2 = c.edge_by_name("g2").unwrap();
    c.edges[g1].label = 2;
    c.edges[g2].label = 2;
    let v = validate(&c, ValidationMode::AxiomsOnly);
    assert!(
        v.iter().any(|x| x.clause == Clause::CrossingLabels),
        "{v:?}"
    );
}

#[test]
fn ro_transforms_preserve_validity_and_are_involutions() {
    for (name, c) in goldens().into_iter().chain(complete_charts()) {
        for (reflect, reverse) in [(true, false), (false, true), (true, true)] {
            let t = ro_transform(&c, reflect, reverse);
            assert!(
                validate(&t, ValidationMode::AxiomsOnly).is_empty(),
                "{name} {reflect} {reverse}"
            );
            assert_eq!(ro_transform(&t, reflect, reverse), c, "{name}: involution");
        }
    }
}

#[test]
fn builder_and_parser_errors() {
    let mut b = ChartBuilder::new(3);
    b.vertex("v", VertexKind::Black);
    b.vertex("v", VertexKind::Black);
    assert!(matches!(
        b.build(),
        Err(ModelError::DuplicateName(_)) | Err(ModelError::EmptyRotation(_))
    ));

    assert!(matches!(
        parse("chart 2\n"),
        Err(ParseError::UnknownVersion { .. })
    ));
    match parse("chart 1\ndegree 3\nvertex b black b.0\nedge e 1 b.0 nowhere\n") {
        Err(ParseError::Model(ModelError::DanglingDart(r))) => assert_eq!(r, "nowhere"),
        other => panic!("{other:?}"),
    }
    match parse("chart 1\ndegree x\n") {
        Err(ParseError::Syntax { line, .. }) => assert_eq!(line, 2),
        other => panic!("{other:?}"),
    }
}

#[test]
fn placements_survive_round_trip() {
    let c = nested();
    assert!(c
        .placements
        .iter()
        .any(|p| matches!(p.child, FaceRef::HoopSide(..))));
    let emb = Embedding::new(&c).unwrap();
    // The hoop adds one face, the free edge piece none beyond its host.
    assert_eq!(
        emb.face_count,
        Embedding::new(&six_parallel()).unwrap().face_count + 1
    );
}
