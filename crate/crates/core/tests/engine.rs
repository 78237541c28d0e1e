//! Case engine: five-vertex eliminations, type refinement, the gluing
//! argument, trace replay and determinism.

use chartcalc::engine::config::Config;
use chartcalc::engine::theorem::{check_type_refinement, partitions, run_pipeline, TheoremReport};
use chartcalc::engine::{eliminate_fig12, replay, Check, EngineOptions, RuleId, Trace, Verdict};
use chartcalc::pairing::{face_cycles, materialize, solve, PairingOptions};
use chartcalc::reference::FIG12_IDS;
use chartcalc::region::{detect_lenses, io_balance, Region};
use chartcalc::Embedding;

fn pipeline(opts: EngineOptions) -> TheoremReport {
    run_pipeline(&opts).expect("pipeline runs")
}

/// Partitions of `n` into parts of size at least `min`, by brute force over
/// non-increasing sequences.
fn oracle_partitions(n: usize, min: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, max: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (min..=max.min(rest)).rev() {
            cur.push(p);
            go(rest - p, p, min, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, min, &mut Vec::new(), &mut out);
    out
}

#[test]
fn partitions_of_seven() {
    let mut ours = partitions(7, 2);
    let mut oracle = oracle_partitions(7, 2);
    ours.sort();
    oracle.sort();
    assert_eq!(ours, oracle);
    assert_eq!(oracle.len(), 4);
}

#[test]
fn only_type_five_two_survives() {
    let r = check_type_refinement(None).unwrap();
    assert_eq!(r.surviving, vec![vec![5, 2]]);
    assert!(replay(&r.trace).ok());
}

#[test]
fn refuted_type_hypotheses() {
    for h in [vec![4, 3], vec![3, 2, 2], vec![7]] {
        let r = check_type_refinement(Some(std::slice::from_ref(&h))).unwrap();
        assert!(r.surviving.is_empty(), "{h:?}");
        assert!(
            r.trace
                .records
                .iter()
                .any(|x| x.verdict == Verdict::Refuted),
            "{h:?}"
        );
        let rep = replay(&r.trace);
        assert!(rep.ok(), "{h:?}: {:?}", rep.failures);
    }
    let r = check_type_refinement(Some(&[vec![5, 2]])).unwrap();
    assert_eq!(r.surviving, vec![vec![5, 2]]);
}

#[test]
fn every_graph_except_g_is_refuted() {
    let opts = EngineOptions::default();
    for g in FIG12_IDS {
        let o = eliminate_fig12(g, &opts).unwrap();
        assert!(o.agrees(), "fig12({g}): plan and fallback disagree");
        let rep = replay(&o.trace);
        assert!(rep.ok(), "fig12({g}): {:?}", rep.failures);
        assert!(rep.checked > 0);
        if g == 'g' {
            assert_eq!(o.verdict, Verdict::Survives);
            assert_eq!(o.survivors.len(), 16);
        } else {
            assert_eq!(o.verdict, Verdict::Refuted, "fig12({g})");
            assert!(o.survivors.is_empty(), "fig12({g})");
        }
    }
}

/// Recheck the counting and pairing records of a trace along a third route:
/// the dart tally of the IO sheet for counting claims, and materialising all
/// completions for pairing claims.
fn oracle_check(trace: &Trace) -> usize {
    let mut checked = 0;
    let mut cache: Option<Config> = None;
    for r in &trace.records {
        let (branch, face, lens) = match &r.check {
            Check::Count { branch, face } => (branch, *face, None),
            Check::Pairing { branch, face, lens } => (branch, *face, Some(*lens)),
            _ => continue,
        };
        if cache.as_ref().is_none_or(|c| c.key != branch.config) {
            cache = Some(Config::build(&branch.config).unwrap());
        }
        let cfg = cache.as_ref().unwrap();
        let stub = branch.config.binding.stub();
        let host;
        let (chart, emb, f) = if face == branch.host {
            host = cfg.host(branch.host, branch.reversed).unwrap();
            (&host.chart, &host.emb, host.face)
        } else {
            (&cfg.chart, &cfg.emb, face)
        };
        match lens {
            None => {
                let s = io_balance(chart, emb, &Region::single(f), stub, &[]).unwrap();
                assert!(!s.balance_possible(), "{r}: {s:?}");
            }
            Some(lens) => {
                let cyc = face_cycles(chart, emb, f, stub);
                let all = solve(
                    &cyc,
                    PairingOptions {
                        forbid_lens: false,
                        forbid_loop: true,
                        limit: None,
                    },
                );
                // The lens type is (min, min+1) over the component label and
                // the stub label.
                let m = stub.min(branch.config.binding.k());
                for c in &all {
                    assert!(lens, "{r}: a completion exists");
                    let mat = materialize(chart, &cyc, c);
                    if Embedding::new(&mat).is_ok() {
                        assert!(!detect_lenses(&mat, m).unwrap().is_empty(), "{r}");
                    }
                }
            }
        }
        checked += 1;
    }
    checked
}

#[test]
fn counting_and_pairing_claims_hold_independently() {
    let opts = EngineOptions::default();
    let mut total = 0;
    for g in FIG12_IDS {
        total += oracle_check(&eliminate_fig12(g, &opts).unwrap().trace);
    }
    assert!(total > 1000, "{total}");
}

#[test]
fn theorem_is_established() {
    let rep = pipeline(EngineOptions::default());
    assert!(rep.refuted);
    assert_eq!(rep.conclusion, "refuted: no minimal chart of type (m;7)");
    assert_eq!(rep.types, vec![vec![5, 2]]);
    let survivors: Vec<char> = rep
        .fig12
        .iter()
        .filter(|s| s.verdict != Verdict::Refuted)
        .map(|s| s.graph)
        .collect();
    assert_eq!(survivors, vec!['g']);
    assert!(rep.fig12.iter().all(|s| s.agrees));
    assert!(!rep.gluing.is_empty());
    for gl in &rep.gluing {
        assert!(gl.refuted(), "{}", gl.branch);
        let by = |id: RuleId| gl.cases.iter().find(|c| c.rule == id).expect("case");
        let (i, ii, iii) = (by(RuleId::CaseI), by(RuleId::CaseII), by(RuleId::CaseIII));
        assert!(i.refuted && ii.refuted && iii.refuted);
        assert!(
            i.witness.contains("3 > 2") && i.witness.contains("L6.3(d)"),
            "{}",
            i.witness
        );
        assert!(
            ii.witness.starts_with("e4' ∪ e5 bounds a lens"),
            "{}",
            ii.witness
        );
        assert!(
            iii.witness.starts_with("e2' ∪ e1 bounds a lens"),
            "{}",
            iii.witness
        );
        assert!(ii.completions > 0 && iii.completions > 0);
    }
    let rep_replay = replay(&rep.trace);
    assert!(rep_replay.ok(), "{:?}", rep_replay.failures);
    assert!(rep
        .trace
        .records
        .iter()
        .any(|r| r.rule == RuleId::Conclusion && r.witness.contains("no minimal chart")));
}

#[test]
fn lens_witnesses_are_real_lenses() {
    let rep = pipeline(EngineOptions::default());
    let mut seen = 0;
    for r in &rep.trace.records {
        if let Check::LensAll { charts, label } = &r.check {
            for c in charts {
                assert!(!detect_lenses(c, *label).unwrap().is_empty(), "{r}");
                seen += 1;
            }
        }
    }
    assert!(seen >= 12, "{seen}");
}

#[test]
fn disabling_the_lens_axiom_breaks_the_argument() {
    let rep = pipeline(EngineOptions {
        lens_axiom: false,
        only_g: false,
    });
    assert!(!rep.refuted);
    assert!(
        rep.conclusion.starts_with("pipeline failure: surviving"),
        "{}",
        rep.conclusion
    );
    for gl in &rep.gluing {
        let live: Vec<RuleId> = gl
            .cases
            .iter()
            .filter(|c| !c.refuted)
            .map(|c| c.rule)
            .collect();
        assert_eq!(live, vec![RuleId::CaseII, RuleId::CaseIII], "{}", gl.branch);
    }
    assert!(replay(&rep.trace).ok());
}

#[test]
fn restricting_to_graph_g_gives_the_same_verdict_with_a_shorter_trace() {
    let full = pipeline(EngineOptions::default());
    let only = pipeline(EngineOptions {
        lens_axiom: true,
        only_g: true,
    });
    assert_eq!(only.refuted, full.refuted);
    assert_eq!(only.conclusion, full.conclusion);
    assert!(only.trace.len() < full.trace.len());
    assert!(replay(&only.trace).ok());
}

#[test]
fn traces_are_deterministic() {
    let a = pipeline(EngineOptions::default()).trace.render();
    let b = pipeline(EngineOptions::default()).trace.render();
    assert_eq!(a, b);
    let e1 = eliminate_fig12('b', &EngineOptions::default())
        .unwrap()
        .trace
        .render();
    let e2 = eliminate_fig12('b', &EngineOptions::default())
        .unwrap()
        .trace
        .render();
    assert_eq!(e1, e2);
}

#[test]
fn tampered_traces_fail_replay() {
    let mut t = eliminate_fig12('a', &EngineOptions::default())
        .unwrap()
        .trace;
    let mut flipped = 0;
    for r in &mut t.records {
        if let Check::Overflow { total, .. } = &mut r.check {
            *total += 100;
            flipped += 1;
        }
        if let Check::Count { face, .. } = &mut r.check {
            // Point the claim at a face where counting balances.
            *face = usize::MAX;
            flipped += 1;
        }
    }
    assert!(flipped > 0);
    let rep = replay(&t);
    assert!(!rep.ok());
}
