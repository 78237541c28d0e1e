//! Angled disks, lenses, IO-Calculation and local complexity.

mod common;

use chartcalc::model::FaceRef;
use chartcalc::pairing::{face_cycles, materialize, solve, PairingOptions};
use chartcalc::region::{
    boundary_orientation, detect_all_lenses, detect_lenses, find_angled_disks, io_balance,
    local_complexity, min_white_lower_bound, BoundaryOrientation, CompletionRules, Region,
    RegionError,
};
use chartcalc::{ChartBuilder, Direction, Embedding};
use common::*;

#[test]
fn io_example_counts_five_inward_two_outward() {
    for reversed in [false, true] {
        let cfg = polygon_with_oval(3, &[Corner::InnerIn; 3], reversed);
        let s = io_balance(&cfg.chart, &cfg.emb, &Region::single(cfg.face), 3, &[]).unwrap();
        assert_eq!((s.inward, s.outward), (5, 2), "reversed oval: {reversed}");
        assert_eq!((s.optional_inward, s.optional_outward), (0, 0));
        assert!(!s.balance_possible());
        let lb = min_white_lower_bound(
            &cfg.chart,
            &cfg.emb,
            &Region::single(cfg.face),
            3,
            CompletionRules::default(),
        )
        .unwrap();
        assert!(lb >= 1);
    }
}

#[test]
fn io_counts_match_an_independent_tally() {
    // Tally by construction: the triangle contributes its three inner stubs
    // (all inward); the oval contributes its label-3 darts on the side of
    // its outer face, read off the vertex rotations of w6 and w7.
    let cfg = io_example();
    let c = &cfg.chart;
    let mut inward = 3;
    let mut outward = 0;
    for name in ["w6", "w7"] {
        let v = c.vertex_by_name(name).unwrap();
        for &d in &c.vertices[v].rotation {
            if c.label(d) != 3 {
                continue;
            }
            let faces = [
                cfg.emb.corner_face(c, d),
                cfg.emb.corner_face(c, c.prev_ccw(d)),
            ];
            if faces.contains(&cfg.face) {
                match c.direction(d) {
                    Direction::Inward => inward += 1,
                    Direction::Outward => outward += 1,
                }
            }
        }
    }
    assert_eq!((inward, outward), (5, 2));
}

#[test]
fn fixing_a_direction_changes_the_sheet() {
    let cfg = io_example();
    let c = &cfg.chart;
    let e1 = c.edge_by_name("e1").unwrap();
    let d = c.edges[e1].head.unwrap();
    let s = io_balance(
        c,
        &cfg.emb,
        &Region::single(cfg.face),
        3,
        &[(d, Direction::Outward)],
    )
    .unwrap();
    assert_eq!((s.inward, s.outward), (4, 3));
}

#[test]
fn lens_example_admits_only_completions_with_a_lens() {
    for reversed in [false, true] {
        let cfg = polygon_with_oval(2, &[Corner::InnerOut, Corner::InnerIn], reversed);
        let cyc = face_cycles(&cfg.chart, &cfg.emb, cfg.face, 3);
        let all = solve(
            &cyc,
            PairingOptions {
                forbid_lens: false,
                forbid_loop: true,
                limit: None,
            },
        );
        assert_eq!(all.len(), 3);
        for c in &all {
            let mat = materialize(&cfg.chart, &cyc, c);
            assert!(!detect_lenses(&mat, 2).unwrap().is_empty());
        }
        let no_lens = solve(
            &cyc,
            PairingOptions {
                forbid_lens: true,
                forbid_loop: true,
                limit: None,
            },
        );
        assert!(no_lens.is_empty());
        let region = Region::single(cfg.face);
        let rules = CompletionRules {
            forbid_lens: true,
            forbid_loop: true,
        };
        assert_eq!(
            min_white_lower_bound(&cfg.chart, &cfg.emb, &region, 3, rules).unwrap(),
            1
        );
        let rules = CompletionRules {
            forbid_lens: false,
            forbid_loop: true,
        };
        assert_eq!(
            min_white_lower_bound(&cfg.chart, &cfg.emb, &region, 3, rules).unwrap(),
            0
        );
    }
}

#[test]
fn coherent_bigon_is_found_as_a_feelerless_two_angled_disk() {
    let cfg = lens_example();
    let disks = find_angled_disks(&cfg.chart, 2).unwrap();
    let d = disks
        .iter()
        .find(|d| {
            d.k == 2
                && d.feeler_count() == 0
                && boundary_orientation(d) == BoundaryOrientation::Coherent
        })
        .expect("the bigon interior");
    assert!(d.is_special());
    // The oval lies inside.
    let lc = local_complexity(&cfg.chart, d).unwrap();
    assert_eq!((lc.interior_whites, lc.boundary_crossings), (2, 0));
}

#[test]
fn triangle_is_a_coherent_three_angled_disk() {
    let cfg = io_example();
    let disks = find_angled_disks(&cfg.chart, 2).unwrap();
    let tri: Vec<_> = disks.iter().filter(|d| d.k == 3).collect();
    assert!(!tri.is_empty());
    assert!(
        tri.iter()
            .any(|d| boundary_orientation(d) == BoundaryOrientation::Coherent
                && d.feeler_count() == 0)
    );
}

#[test]
fn goldens_have_no_lenses() {
    for (name, c) in goldens() {
        assert!(detect_all_lenses(&c).unwrap().is_empty(), "{name}");
    }
}

#[test]
fn theta_faces_are_two_angled_disks() {
    let c = golden("theta");
    let disks = find_angled_disks(&c, 2).unwrap();
    // Each of the three faces of the theta-curve is a 2-angled disk.
    assert_eq!(
        disks
            .iter()
            .filter(|d| d.k == 2 && d.region.faces.len() == 1)
            .count(),
        3
    );
}

#[test]
fn io_balance_holds_on_complete_valid_charts() {
    let mut checked = 0;
    for (name, c) in complete_charts() {
        let emb = Embedding::new(&c).unwrap();
        for region in face_subsets(emb.face_count) {
            for k in 1..c.degree {
                match io_balance(&c, &emb, &region, k, &[]) {
                    Ok(s) => {
                        checked += 1;
                        assert!(s.is_balanced(), "{name}: {region:?} label {k}: {s:?}");
                    }
                    Err(RegionError::BoundaryLabel { .. }) => {}
                    Err(e) => panic!("{name}: {e}"),
                }
            }
        }
    }
    assert!(checked > 100, "{checked}");
}

#[test]
fn boundary_label_precondition_is_enforced() {
    // A label-3 hoop around nothing, next to the crossing chart: its inner
    // side is bounded by label 3, outside the window 1..2 for k = 1.
    let mut b = ChartBuilder::from_chart(crossing());
    let h = b.hoop("h", 3);
    b.place(FaceRef::HoopSide(h, 1), FaceRef::Corner(0));
    let c = b.build().unwrap();
    let emb = Embedding::new(&c).unwrap();
    let inner = emb.face_of_ref(&c, FaceRef::HoopSide(h, 0));
    let region = Region::single(inner);
    assert!(matches!(
        io_balance(&c, &emb, &region, 1, &[]),
        Err(RegionError::BoundaryLabel { label: 3, .. })
    ));
    let s = io_balance(&c, &emb, &region, 3, &[]).unwrap();
    assert_eq!((s.inward, s.outward), (0, 0));
}
