mod common;

use common::{closure_naive, lcg_digraph, pc_distance_naive, simple_paths};
use pcpk::graph::{generate, named_instance, ColoredDigraph, GeneratorKind};
use pcpk::reach::{
    closure, closure_with_budget, distance, pc_path_exists, pc_path_exists_with_budget, pc_path_to_set,
    pc_walk_reachable, PathMode, ReachError,
};
use proptest::prelude::*;

const PC: PathMode = PathMode::ProperlyColored;

fn check_closure(d: &ColoredDigraph, mode: PathMode) {
    let c = closure(d, mode).unwrap();
    let naive = closure_naive(d, mode);
    for u in d.vertices() {
        for v in d.vertices() {
            if u == v {
                continue;
            }
            assert_eq!(c.has_arc(u, v), naive[u][v], "{u}->{v} {mode:?}\n{}", pcpk::graph::serialize(d));
            if let Some(w) = c.witness(u, v) {
                assert_eq!((w.start(), w.end()), (u, v));
                assert!(w.validate(d).is_ok());
                assert_eq!(w.mode, mode);
            }
        }
    }
}

#[test]
fn closure_matches_path_enumeration() {
    for seed in 0..400 {
        let n = 2 + (seed % 6) as usize;
        let d = lcg_digraph(seed, n, 20 + seed % 40, 1 + (seed % 4) as u32);
        check_closure(&d, PC);
        check_closure(&d, PathMode::Rainbow);
    }
    for name in pcpk::graph::NAMED_INSTANCES {
        let d = named_instance(name).unwrap();
        check_closure(&d, PC);
        check_closure(&d, PathMode::Rainbow);
    }
}

#[test]
fn length_bound_respected() {
    for seed in 0..150 {
        let d = lcg_digraph(seed, 6, 35, 3);
        for u in d.vertices() {
            let paths = simple_paths(&d, u);
            for v in d.vertices().filter(|&v| v != u) {
                for k in 1..=3 {
                    let want = paths.iter().any(|(vs, cs)| {
                        *vs.last().unwrap() == v && cs.len() <= k && common::colors_ok(cs, PC)
                    });
                    let got = pc_path_exists(&d, u, v, PC, Some(k)).unwrap();
                    assert_eq!(got.is_some(), want, "seed {seed} {u}->{v} k={k}");
                    if let Some(p) = got {
                        assert!(p.len() <= k);
                    }
                }
            }
        }
    }
}

#[test]
fn set_target_search() {
    let d = generate(&GeneratorKind::ColoredCycle { colors: vec![1, 1, 2, 2, 1] }, 0).unwrap();
    let mut t = vec![false; 5];
    t[3] = true;
    t[4] = true;
    let p = pc_path_to_set(&d, 0, &t, PC, None, 1000).unwrap();
    assert!(p.is_none());
    let p = pc_path_to_set(&d, 1, &t, PC, None, 1000).unwrap().unwrap();
    assert_eq!(p.vertices, [1, 2, 3]);
    assert_eq!(pc_path_to_set(&d, 3, &t, PC, None, 1000), Err(ReachError::SameVertex(3)));
}

#[test]
fn pc_walks_may_exceed_paths() {
    // 0 -> 1 -> 2 -> 1 -> 3 is PC, but it revisits 1 and 0 -> 1 -> 3 is not PC.
    let d = ColoredDigraph::validate(4, None, [(0, 1, 1), (1, 3, 1), (1, 2, 2), (2, 1, 3)]).unwrap();
    assert!(pc_walk_reachable(&d, 0, 3).unwrap());
    assert!(pc_path_exists(&d, 0, 3, PC, None).unwrap().is_none());
    for seed in 0..200 {
        let d = lcg_digraph(seed, 5, 35, 2);
        let naive = closure_naive(&d, PC);
        for u in d.vertices() {
            for v in d.vertices().filter(|&v| v != u) {
                if naive[u][v] {
                    assert!(pc_walk_reachable(&d, u, v).unwrap());
                }
            }
        }
    }
}

#[test]
fn errors() {
    let d = named_instance("fig2-tournament").unwrap();
    assert_eq!(pc_path_exists(&d, 1, 1, PC, None), Err(ReachError::SameVertex(1)));
    assert_eq!(pc_path_exists(&d, 0, 9, PC, None), Err(ReachError::VertexOutOfRange(9)));
    assert_eq!(distance(&d, 0, 0), Err(ReachError::SameVertex(0)));
    let big = generate(&GeneratorKind::RandomDigraph { n: 10, arc_prob: 0.9, m: 3 }, 1).unwrap();
    assert!(matches!(closure_with_budget(&big, PC, 5), Err(ReachError::BudgetExceeded(5))));
    assert!(matches!(
        pc_path_exists_with_budget(&big, 0, 9, PathMode::Rainbow, None, 0),
        Err(ReachError::BudgetExceeded(0)) | Ok(Some(_))
    ));
}

#[test]
fn witness_lines_format() {
    let d = generate(&GeneratorKind::ColoredCycle { colors: vec![1, 2, 1, 2] }, 0).unwrap();
    let c = closure(&d, PC).unwrap();
    assert_eq!(c.arc_count(), 12);
    let lines = c.witness_lines(&d);
    assert!(lines.contains("w v0 v3 : v0 v1 v2 v3"));
    let plain = c.to_colored(&d);
    assert_eq!(plain.m(), 1);
    assert_eq!(plain.labels(), d.labels());
}

#[test]
fn plain_distance_matches_enumeration() {
    for seed in 0..100 {
        let d = lcg_digraph(seed, 6, 30, 1);
        for u in d.vertices() {
            for v in d.vertices().filter(|&v| v != u) {
                // One color: only single arcs are PC paths.
                let shortest = simple_paths(&d, u)
                    .into_iter()
                    .filter(|(vs, _)| *vs.last().unwrap() == v)
                    .map(|(_, cs)| cs.len())
                    .min();
                assert_eq!(distance(&d, u, v).unwrap(), shortest);
                assert_eq!(pc_distance_naive(&d, u, v), shortest.filter(|&k| k == 1));
            }
        }
    }
}

fn arb_digraph() -> impl Strategy<Value = ColoredDigraph> {
    (2usize..7, 1u32..4).prop_flat_map(|(n, m)| {
        proptest::collection::vec(proptest::option::of(1..=m as i64), n * n).prop_map(move |cells| {
            let arcs: Vec<_> = cells
                .iter()
                .enumerate()
                .filter_map(|(i, c)| c.map(|c| (i / n, i % n, c)))
                .filter(|&(u, v, _)| u != v)
                .collect();
            ColoredDigraph::validate(n, None, arcs).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn closure_oracle_equivalence(d in arb_digraph()) {
        let c = closure(&d, PC).unwrap();
        let naive = closure_naive(&d, PC);
        for (u, v) in c.arcs() {
            prop_assert!(naive[u][v]);
        }
        let count = naive.iter().flatten().filter(|&&b| b).count();
        prop_assert_eq!(c.arc_count(), count);
    }
}
