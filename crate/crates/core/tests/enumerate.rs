//! Component enumeration and orientation refinement, checked against an
//! independent brute-force enumerator of reduced maps.

mod common;

use chartcalc::component::Slot;
use chartcalc::enumerate::{
    enumerate, orientation_codes, orientations, verify_classification, ClassificationLemma,
    EnumerateFlags,
};
use chartcalc::reference::{fig13f, oriented_references, reference_graph, FIG12_IDS};
use chartcalc::subgraph::{classify_abstract, components, extract, to_abstract, ClassKind};
use chartcalc::{AbstractComponent, Direction};
use common::*;

// --- oracle -----------------------------------------------------------------

/// A connected map with white vertices of degree three after collapsing
/// terminal edges into vertex weights.  Darts `2k` and `2k+1` are the ends of
/// edge `k`.
#[derive(Clone, Debug)]
struct Map {
    weight: Vec<usize>,
    vertex: Vec<usize>,
    /// Counter-clockwise successor at the vertex.
    next: Vec<usize>,
    /// Outward at its vertex, when oriented.
    out: Option<Vec<bool>>,
    /// Terminal direction per vertex (`true` = outward), when oriented.
    term_out: Option<Vec<Option<bool>>>,
}

impl Map {
    fn darts(&self) -> usize {
        self.vertex.len()
    }

    fn prev(&self, d: usize) -> usize {
        (0..self.darts())
            .find(|&x| self.next[x] == d)
            .expect("rotation")
    }

    fn faces(&self) -> usize {
        let mut seen = vec![false; self.darts()];
        let mut n = 0;
        for d in 0..self.darts() {
            if !seen[d] {
                n += 1;
                let mut x = d;
                while !seen[x] {
                    seen[x] = true;
                    x = self.next[x ^ 1];
                }
            }
        }
        n
    }

    fn spherical(&self) -> bool {
        let (v, e) = (self.weight.len() as i64, (self.darts() / 2) as i64);
        v - e + self.faces() as i64 == 2
    }
}

/// Isomorphism up to reflection and (for oriented maps) global reversal,
/// by propagating the image of one dart.
fn isomorphic(a: &Map, b: &Map) -> bool {
    if a.darts() != b.darts() || a.weight.len() != b.weight.len() {
        return false;
    }
    if a.darts() == 0 {
        return a.weight == b.weight && a.term_out == b.term_out;
    }
    let reversals: &[bool] = if a.out.is_some() {
        &[false, true]
    } else {
        &[false]
    };
    for &reflect in &[false, true] {
        for &reverse in reversals {
            for seed in 0..b.darts() {
                if extend(a, b, seed, reflect, reverse) {
                    return true;
                }
            }
        }
    }
    false
}

fn extend(a: &Map, b: &Map, seed: usize, reflect: bool, reverse: bool) -> bool {
    let n = a.darts();
    let mut m = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut stack = vec![(0usize, seed)];
    while let Some((x, y)) = stack.pop() {
        if m[x] != usize::MAX {
            if m[x] != y {
                return false;
            }
            continue;
        }
        if used[y] {
            return false;
        }
        m[x] = y;
        used[y] = true;
        let (va, vb) = (a.vertex[x], b.vertex[y]);
        if a.weight[va] != b.weight[vb] {
            return false;
        }
        if let (Some(oa), Some(ob)) = (&a.out, &b.out) {
            if oa[x] != (ob[y] ^ reverse) {
                return false;
            }
            let (ta, tb) = (
                a.term_out.as_ref().unwrap()[va],
                b.term_out.as_ref().unwrap()[vb],
            );
            if ta != tb.map(|t| t ^ reverse) {
                return false;
            }
        }
        stack.push((x ^ 1, y ^ 1));
        let ny = if reflect { b.prev(y) } else { b.next[y] };
        stack.push((a.next[x], ny));
    }
    true
}

/// The reduced map of an abstract component.
fn reduce(c: &AbstractComponent) -> Map {
    let nd = 2 * c.edges.len();
    let mut vertex = vec![0; nd];
    let mut next = vec![0; nd];
    for (v, rot) in c.rotations.iter().enumerate() {
        let ds: Vec<usize> = rot
            .iter()
            .filter_map(|s| {
                if let Slot::Dart(d) = s {
                    Some(*d)
                } else {
                    None
                }
            })
            .collect();
        for (i, &d) in ds.iter().enumerate() {
            vertex[d] = v;
            next[d] = ds[(i + 1) % ds.len()];
        }
    }
    let (out, term_out) = match &c.orientation {
        Some(o) => (
            Some(
                (0..nd)
                    .map(|d| AbstractComponent::dart_direction(o, d) == Direction::Outward)
                    .collect(),
            ),
            Some(
                o.terminal
                    .iter()
                    .map(|t| t.map(|d| d == Direction::Outward))
                    .collect(),
            ),
        ),
        None => (None, None),
    };
    Map {
        weight: c.terminal_counts(),
        vertex,
        next,
        out,
        term_out,
    }
}

/// Edge multisets on `deg.len()` vertices realizing the degrees.
fn multigraphs(deg: &[usize], loops: bool) -> Vec<Vec<(usize, usize)>> {
    let w = deg.len();
    let pairs: Vec<(usize, usize)> = (0..w)
        .flat_map(|i| (i..w).map(move |j| (i, j)))
        .filter(|&(i, j)| loops || i != j)
        .collect();
    let mut out = Vec::new();
    let mut rem = deg.to_vec();
    fn go(
        k: usize,
        pairs: &[(usize, usize)],
        rem: &mut [usize],
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if rem.iter().all(|&r| r == 0) {
            out.push(cur.clone());
            return;
        }
        if k == pairs.len() {
            return;
        }
        let (i, j) = pairs[k];
        let mut added = 0;
        loop {
            go(k + 1, pairs, rem, cur, out);
            let ok = if i == j {
                rem[i] >= 2
            } else {
                rem[i] >= 1 && rem[j] >= 1
            };
            if !ok {
                break;
            }
            if i == j {
                rem[i] -= 2;
            } else {
                rem[i] -= 1;
                rem[j] -= 1;
            }
            cur.push((i, j));
            added += 1;
        }
        for _ in 0..added {
            cur.pop();
            if i == j {
                rem[i] += 2;
            } else {
                rem[i] += 1;
                rem[j] += 1;
            }
        }
    }
    go(0, &pairs, &mut rem, &mut Vec::new(), &mut out);
    out
}

fn connected(w: usize, edges: &[(usize, usize)]) -> bool {
    let mut reach = vec![false; w];
    reach[0] = true;
    let mut changed = true;
    while changed {
        changed = false;
        for &(a, b) in edges {
            if reach[a] != reach[b] {
                reach[a] = true;
                reach[b] = true;
                changed = true;
            }
        }
    }
    reach.into_iter().all(|r| r)
}

/// All cyclic orders of a list (first element fixed).
fn cyclic_orders(ds: &[usize]) -> Vec<Vec<usize>> {
    if ds.len() <= 2 {
        return vec![ds.to_vec()];
    }
    // Degree three: two cyclic orders.
    vec![ds.to_vec(), vec![ds[0], ds[2], ds[1]]]
}

/// Does some orientation give a 2–1 split of the three label-m ends at
/// every vertex, with (under the local rules) the terminal edge being the
/// odd one out?
fn orientable(map: &Map, local_rules: bool) -> bool {
    let ne = map.darts() / 2;
    let w = map.weight.len();
    let term_vs: Vec<usize> = (0..w).filter(|&v| map.weight[v] > 0).collect();
    let slots_t: usize = term_vs.iter().map(|&v| map.weight[v]).sum();
    for eb in 0u32..(1 << ne) {
        for tb in 0u32..(1 << slots_t) {
            let mut ok = true;
            let mut t_index = 0;
            for v in 0..w {
                let mut dirs: Vec<bool> = (0..map.darts())
                    .filter(|&d| map.vertex[d] == v)
                    .map(|d| (eb >> (d / 2) & 1 == 1) == (d % 2 == 0))
                    .collect();
                let mut terms = Vec::new();
                for _ in 0..map.weight[v] {
                    terms.push(tb >> t_index & 1 == 1);
                    t_index += 1;
                }
                dirs.extend(&terms);
                let outs = dirs.iter().filter(|&&x| x).count();
                if outs == 0 || outs == 3 {
                    ok = false;
                    break;
                }
                if local_rules && !terms.is_empty() {
                    let odd = outs == 1;
                    if terms.len() > 1 || terms[0] != odd {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                return true;
            }
        }
    }
    false
}

/// Independent enumeration of the reduced maps with `w` white vertices.
fn oracle(w: usize, flags: EnumerateFlags) -> Vec<Map> {
    let max_t = if flags.local_rules { 1 } else { 2 };
    let mut reps: Vec<Map> = Vec::new();
    let mut t = vec![0usize; w];
    loop {
        let deg: Vec<usize> = t.iter().map(|&x| 3 - x).collect();
        if deg.iter().sum::<usize>() % 2 == 0 {
            for edges in multigraphs(&deg, !flags.no_loop) {
                if !connected(w, &edges) {
                    continue;
                }
                let mut vertex = vec![0; 2 * edges.len()];
                for (k, &(a, b)) in edges.iter().enumerate() {
                    vertex[2 * k] = a;
                    vertex[2 * k + 1] = b;
                }
                let at: Vec<Vec<usize>> = (0..w)
                    .map(|v| (0..vertex.len()).filter(|&d| vertex[d] == v).collect())
                    .collect();
                let choices: Vec<Vec<Vec<usize>>> = at.iter().map(|ds| cyclic_orders(ds)).collect();
                let total: usize = choices.iter().map(|c| c.len()).product();
                for mut idx in 0..total {
                    let mut next = vec![0; vertex.len()];
                    for c in &choices {
                        let order = &c[idx % c.len()];
                        idx /= c.len();
                        for (i, &d) in order.iter().enumerate() {
                            next[d] = order[(i + 1) % order.len()];
                        }
                    }
                    let map = Map {
                        weight: t.clone(),
                        vertex: vertex.clone(),
                        next,
                        out: None,
                        term_out: None,
                    };
                    if !map.spherical() {
                        continue;
                    }
                    if (flags.orient || flags.local_rules) && !orientable(&map, flags.local_rules) {
                        continue;
                    }
                    if !reps.iter().any(|r| isomorphic(r, &map)) {
                        reps.push(map);
                    }
                }
            }
        }
        // Next terminal vector.
        let mut i = 0;
        while i < w && t[i] == max_t {
            t[i] = 0;
            i += 1;
        }
        if i == w {
            break;
        }
        t[i] += 1;
    }
    reps
}

fn sorted_blacks(maps: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut v: Vec<usize> = maps.collect();
    v.sort();
    v
}

/// Every enumerated class is isomorphic to exactly one oracle class and
/// the classes correspond one to one.
fn assert_matches_oracle(w: usize, flags: EnumerateFlags) -> usize {
    let found = enumerate(w, flags);
    let reps = oracle(w, flags);
    assert_eq!(found.len(), reps.len(), "w={w} {flags:?}");
    let mut hit = vec![false; reps.len()];
    for e in &found {
        let m = reduce(&e.component);
        let matches: Vec<usize> = (0..reps.len())
            .filter(|&i| isomorphic(&reps[i], &m))
            .collect();
        assert_eq!(matches.len(), 1, "w={w} {flags:?}: {:?}", e.code);
        hit[matches[0]] = true;
    }
    assert!(hit.into_iter().all(|h| h));
    assert_eq!(
        sorted_blacks(found.iter().map(|e| e.black_count())),
        sorted_blacks(reps.iter().map(|m| m.weight.iter().sum()))
    );
    found.len()
}

// --- tests ------------------------------------------------------------------

#[test]
fn small_components_match_the_oracle_and_the_pictures() {
    assert_eq!(assert_matches_oracle(2, EnumerateFlags::all()), 2);
    assert_eq!(assert_matches_oracle(3, EnumerateFlags::all()), 1);
    let two: Vec<ClassKind> = enumerate(2, EnumerateFlags::all())
        .iter()
        .map(|e| classify_abstract(&e.component))
        .collect();
    assert!(two.contains(&ClassKind::Theta) && two.contains(&ClassKind::Oval));
    let three = enumerate(3, EnumerateFlags::all());
    assert_eq!(classify_abstract(&three[0].component), ClassKind::SkewTheta);
    assert!(verify_classification(ClassificationLemma::SmallComponents).is_match());
}

#[test]
fn five_white_components_match_the_oracle_and_the_caption() {
    assert_eq!(assert_matches_oracle(5, EnumerateFlags::all()), 9);
    let found = enumerate(5, EnumerateFlags::all());
    let caption = [3, 3, 3, 1, 1, 1, 3, 3, 1];
    for (g, blacks) in FIG12_IDS.into_iter().zip(caption) {
        let r = reference_graph(ClassKind::Fig12(g)).unwrap();
        let e = found
            .iter()
            .find(|e| e.code == r.canonical_code())
            .unwrap_or_else(|| panic!("fig12({g}) missing"));
        assert_eq!(e.black_count(), blacks, "fig12({g})");
    }
    let rep = verify_classification(ClassificationLemma::FiveWhites);
    assert!(rep.is_match(), "{rep:?}");
    assert_eq!(rep.matched.len(), 9);
}

#[test]
fn other_flag_combinations_match_the_oracle() {
    let relaxed = EnumerateFlags {
        no_loop: true,
        orient: false,
        local_rules: false,
    };
    let orient = EnumerateFlags {
        no_loop: true,
        orient: true,
        local_rules: false,
    };
    let loops = EnumerateFlags::default();
    for w in 2..=4 {
        for f in [relaxed, orient, loops] {
            assert_matches_oracle(w, f);
        }
    }
    assert_matches_oracle(4, EnumerateFlags::all());
    assert_matches_oracle(5, orient);
}

#[test]
fn stronger_flags_give_subsets() {
    let levels = [
        EnumerateFlags::default(),
        EnumerateFlags {
            no_loop: true,
            orient: false,
            local_rules: false,
        },
        EnumerateFlags {
            no_loop: true,
            orient: true,
            local_rules: false,
        },
        EnumerateFlags::all(),
    ];
    for w in 1..=5 {
        for pair in levels.windows(2) {
            let weak: Vec<_> = enumerate(w, pair[0]).into_iter().map(|e| e.code).collect();
            let strong: Vec<_> = enumerate(w, pair[1]).into_iter().map(|e| e.code).collect();
            assert!(
                strong.iter().all(|c| weak.contains(c)),
                "w={w}: {:?} ⊄ {:?}",
                pair[1],
                pair[0]
            );
        }
    }
}

#[test]
fn goldens_reduce_to_their_reference_codes() {
    for g in FIG12_IDS {
        let c = golden(&format!("fig12{g}"));
        let sub = extract(&c, 2).unwrap();
        let comp = &components(&c, &sub)[0];
        let abs = AbstractComponent {
            orientation: None,
            ..to_abstract(&c, &sub, comp).unwrap()
        };
        let r = reference_graph(ClassKind::Fig12(g)).unwrap();
        assert!(isomorphic(&reduce(&abs), &reduce(&r)), "fig12({g})");
        assert_eq!(abs.canonical_code(), r.canonical_code(), "fig12({g})");
    }
}

/// Orientation classes counted by the oracle: orbits of the valid
/// orientations under map isomorphism, reflection and reversal.
fn oracle_orientation_classes(c: &AbstractComponent, local_rules: bool) -> usize {
    let mut reps: Vec<Map> = Vec::new();
    for o in c.all_orientations(local_rules) {
        let m = reduce(&c.with_orientation(o));
        if !reps.iter().any(|r| isomorphic(r, &m)) {
            reps.push(m);
        }
    }
    reps.len()
}

#[test]
fn orientation_classes_match_the_oracle() {
    for g in FIG12_IDS {
        let c = reference_graph(ClassKind::Fig12(g)).unwrap();
        for local in [true, false] {
            assert_eq!(
                orientation_codes(&c, local).len(),
                oracle_orientation_classes(&c, local),
                "fig12({g}) {local}"
            );
        }
    }
}

#[test]
fn orientations_reproduce_the_refined_pictures() {
    let rep = verify_classification(ClassificationLemma::FiveWhiteOrientations);
    assert!(rep.is_match(), "{rep:?}");
    for r in oriented_references() {
        let g = reference_graph(ClassKind::Fig12(r.graph)).unwrap();
        let expected = r.expected_codes();
        let found = orientation_codes(&g, true);
        if r.partial {
            assert!(
                expected.iter().all(|c| found.contains(c)),
                "fig13({})",
                r.panel
            );
        } else {
            assert_eq!(found, expected, "fig13({})", r.panel);
            assert_eq!(found.len(), 1);
        }
    }
}

#[test]
fn graph_g_has_a_single_orientation_class() {
    let g = reference_graph(ClassKind::Fig12('g')).unwrap();
    let classes = orientations(&g, true);
    assert_eq!(classes.len(), 1);
    // The two orientations left by the local rules are mirror images.
    let all = g.all_orientations(true);
    assert!(all.len() >= 2);
    let a = g.with_orientation(all[0].clone());
    let b = g.with_orientation(all[1].clone());
    assert_eq!(a.canonical_code(), b.canonical_code());
    assert_eq!(a.canonical_code(), fig13f().canonical_code());
}

#[test]
fn oriented_goldens_match_their_pictures() {
    for r in oriented_references().into_iter().filter(|r| !r.partial) {
        let c = golden(&format!("fig13{}", r.panel));
        let sub = extract(&c, 2).unwrap();
        let abs = to_abstract(&c, &sub, &components(&c, &sub)[0]).unwrap();
        assert_eq!(
            abs.canonical_code(),
            r.full().unwrap().canonical_code(),
            "fig13({})",
            r.panel
        );
    }
}

#[test]
fn codes_are_invariant_under_reflection_and_reversal() {
    for w in 2..=5 {
        for e in enumerate(w, EnumerateFlags::all()) {
            let c = &e.component;
            assert_eq!(c.reflected().canonical_code(), e.code);
            for o in orientations(c, true) {
                let code = o.canonical_code();
                assert_eq!(o.reflected().canonical_code(), code);
                assert_eq!(o.reversed().canonical_code(), code);
                assert_eq!(o.reflected().reversed().canonical_code(), code);
            }
        }
    }
}

#[test]
fn ro_transformed_charts_classify_the_same() {
    for g in FIG12_IDS {
        let c = golden(&format!("fig12{g}"));
        for (reflect, reverse) in [(true, false), (false, true), (true, true)] {
            let t = chartcalc::ro_transform(&c, reflect, reverse);
            let sub = extract(&t, 2).unwrap();
            let abs = to_abstract(&t, &sub, &components(&t, &sub)[0]).unwrap();
            assert_eq!(classify_abstract(&abs), ClassKind::Fig12(g));
        }
    }
}

#[test]
fn five_white_enumeration_is_fast() {
    let t = std::time::Instant::now();
    enumerate(5, EnumerateFlags::all());
    assert!(t.elapsed().as_secs_f64() < 60.0);
}
