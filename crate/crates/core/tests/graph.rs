mod common;

use common::{cycles_naive, lcg_digraph};
use pcpk::graph::{
    bipartite_partition, classify, family_instance, generate, named_instance, parse, serialize, to_dot,
    unique_cycle, ColoredDigraph, ConnectPolicy, Family, GeneratorKind, GraphError, ParseError, NAMED_INSTANCES,
};
use proptest::prelude::*;

#[test]
fn named_instance_orders() {
    let sizes: Vec<usize> = NAMED_INSTANCES.iter().map(|n| named_instance(n).unwrap().n()).collect();
    assert_eq!(sizes, [6, 9, 4, 6]);
    assert!(matches!(named_instance("fig9"), Err(GraphError::UnknownInstance(_))));
}

#[test]
fn parse_rejects_malformed_input() {
    assert!(matches!(parse("v a\n"), Err(ParseError::SyntaxError { .. })));
    assert!(matches!(parse("acd 1\nv a\na a b 1\n"), Err(ParseError::UnknownVertexLabel { line: 3, .. })));
    for (text, line) in [
        ("acd 1\nv a\nv b\na a b 0\n", 4),
        ("acd 1\nv a\na a a 1\n", 3),
        ("acd 1\nv a\nv b\na a b 1\na a b 2\n", 5),
        ("acd 1\nv a\nv a\n", 3),
        ("acd 1\nv a\nq\n", 3),
    ] {
        assert!(matches!(parse(text), Err(ParseError::SyntaxError { line: l, .. }) if l == line), "{text}");
    }
}

#[test]
fn comments_and_color_compaction() {
    let d = parse("acd 1\n# two arcs\nv p\nv q\nv r\na p q 7\na q r 40\n").unwrap();
    assert_eq!(d.m(), 2);
    assert_eq!(d.color(0, 1), Some(1));
    assert_eq!(d.color(1, 2), Some(2));
}

#[test]
fn dot_export_uses_palette() {
    let d = named_instance("fig2-tournament").unwrap();
    let dot = to_dot(&d);
    assert!(dot.starts_with("digraph D {"));
    assert!(dot.contains("\"v1\" -> \"v2\" [color=\"black\", label=\"1\"];"));
    assert!(dot.contains("\"v2\" -> \"v3\" [color=\"red\", label=\"2\"];"));
    assert_eq!(dot.matches(" -> ").count(), 6);
}

#[test]
fn unicyclic_matches_cycle_enumeration() {
    for seed in 0..300 {
        let d = lcg_digraph(seed, 1 + (seed % 7) as usize, 25, 2);
        let cycles = cycles_naive(&d);
        let tags = classify(&d);
        assert_eq!(tags.acyclic, cycles.is_empty(), "seed {seed}");
        assert_eq!(tags.unicyclic, cycles.len() == 1, "seed {seed}");
        if cycles.len() == 1 {
            let mut c = unique_cycle(&d).unwrap();
            let k = c.iter().enumerate().min_by_key(|p| p.1).unwrap().0;
            c.rotate_left(k);
            assert_eq!(&c, cycles.iter().next().unwrap());
        } else {
            assert!(unique_cycle(&d).is_none());
        }
    }
}

#[test]
fn generators_produce_their_class() {
    for seed in 0..50 {
        let t = generate(&GeneratorKind::RandomTournament { n: 6, m: 3 }, seed).unwrap();
        assert!(classify(&t).tournament);
        let s = generate(&GeneratorKind::RandomSemiComplete { n: 6, m: 2, double_prob: 0.3 }, seed).unwrap();
        assert!(classify(&s).semi_complete);
        let b = generate(&GeneratorKind::RandomBipartiteTournament { nx: 2, ny: 4, m: 3 }, seed).unwrap();
        let p = bipartite_partition(&b).unwrap();
        assert_eq!(p.x.len().min(p.y.len()), 2);
        let u = generate(&GeneratorKind::RandomUnicyclic { n: 7, m: 3, arc_prob: 0.4, pc_cycle: true }, seed)
            .unwrap();
        let tags = classify(&u);
        assert!(tags.unicyclic);
        let c = unique_cycle(&u).unwrap();
        assert!(common::cycle_is_pc(&u, &c));
    }
    let c = generate(&GeneratorKind::ColoredCycle { colors: vec![1, 2, 2] }, 0).unwrap();
    assert!(classify(&c).is_cycle);
}

#[test]
fn generators_are_seed_deterministic() {
    let k = GeneratorKind::RandomDigraph { n: 7, arc_prob: 0.3, m: 3 };
    assert_eq!(generate(&k, 11).unwrap(), generate(&k, 11).unwrap());
    assert!(generate(&GeneratorKind::RandomDigraph { n: 3, arc_prob: 1.5, m: 1 }, 0).is_err());
}

#[test]
fn remark_families_have_requested_order() {
    for n in [6, 8, 10] {
        let d = family_instance(&Family::Remark1Even(n)).unwrap();
        assert_eq!(d.n(), n);
    }
    for n in [7, 9, 11] {
        let d = family_instance(&Family::Remark1Odd(n)).unwrap();
        assert_eq!(d.n(), n);
    }
    let base = generate(&GeneratorKind::RandomBipartiteTournament { nx: 1, ny: 2, m: 2 }, 3).unwrap();
    let d = family_instance(&Family::Remark4 { base, policy: ConnectPolicy::Cyclic(3) }).unwrap();
    assert_eq!(d.n(), 9);
    assert_eq!(d.arc_count(), 2 + 9 + 3 * 6);
}

#[test]
fn induced_keeps_colors_consistent() {
    let d = named_instance("fig1-right").unwrap();
    let h = d.induced(&[2, 3, 4]);
    assert_eq!(h.n(), 3);
    assert_eq!(h.labels(), ["u3", "u4", "u5"]);
    assert_eq!(h.arc_count(), 3);
    assert_eq!(h.color(0, 2), h.color(2, 1));
    assert_ne!(h.color(0, 1), h.color(0, 2));
}

fn arb_digraph() -> impl Strategy<Value = ColoredDigraph> {
    (1usize..8).prop_flat_map(|n| {
        proptest::collection::vec((0..n, 0..n, 1i64..5), 0..20).prop_map(move |raw| {
            let mut seen = std::collections::BTreeSet::new();
            let arcs: Vec<_> = raw.into_iter().filter(|&(u, v, _)| u != v && seen.insert((u, v))).collect();
            ColoredDigraph::validate(n, None, arcs).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn serialize_parse_round_trip(d in arb_digraph()) {
        let text = serialize(&d);
        let back = parse(&text).unwrap();
        prop_assert_eq!(serialize(&back), text);
        prop_assert_eq!(back.canonical(), d.canonical());
    }
}

fn arc_table(d: &ColoredDigraph) -> Vec<Vec<String>> {
    (1..=d.m())
        .map(|c| {
            let mut v: Vec<String> =
                d.arcs().filter(|a| a.color == c).map(|a| format!("{}{}", d.label(a.tail), d.label(a.head))).collect();
            v.sort();
            v
        })
        .collect()
}

#[test]
fn named_instances_match_figures_arc_for_arc() {
    let golden: [(&str, &[&[&str]]); 4] = [
        ("fig1-left", &[&["v1v2", "v2v3", "v3v4", "v5v6", "v6v1"], &["v3v5", "v5v4"]]),
        (
            "fig1-right",
            &[&["u1u2", "u2u3", "u3u4", "u5u6", "u6u7", "u8u9", "u9u1"], &["u3u5", "u5u4"], &["u6u8", "u8u7"]],
        ),
        ("fig2-tournament", &[&["v1v2", "v1v3", "v1v4"], &["v2v3", "v3v4", "v4v2"]]),
        ("fig3-d6", &[&["x1y1", "y1x2", "y2x1"], &["x2y2", "y2x3", "y3x2"], &["x3y3", "y1x3", "y3x1"]]),
    ];
    for (name, classes) in golden {
        let d = named_instance(name).unwrap();
        let mut want: Vec<Vec<String>> =
            classes.iter().map(|c| c.iter().map(|s| s.to_string()).collect::<Vec<_>>()).collect();
        for c in &mut want {
            c.sort();
        }
        assert_eq!(arc_table(&d), want, "{name}");
    }
    let fig3 = named_instance("fig3-d6").unwrap();
    let tags = classify(&fig3);
    assert!(tags.bipartite_tournament && !tags.semi_complete);
    let p = tags.bipartite.unwrap();
    assert_eq!((p.x.len(), p.y.len()), (3, 3));
    let text = serialize(&fig3);
    assert_eq!(serialize(&parse(&text).unwrap()), text);
}

#[test]
fn bipartite_degrees_cover_the_other_side() {
    for seed in 0..100 {
        let (nx, ny) = (1 + (seed % 4) as usize, 1 + (seed / 4 % 4) as usize);
        let d = generate(&GeneratorKind::RandomBipartiteTournament { nx, ny, m: 3 }, seed).unwrap();
        let p = bipartite_partition(&d).unwrap();
        for &x in &p.x {
            assert_eq!(d.in_degree(x) + d.out_degree(x), p.y.len());
        }
        for &y in &p.y {
            assert_eq!(d.in_degree(y) + d.out_degree(y), p.x.len());
        }
    }
}

#[test]
fn validate_examples() {
    let d = ColoredDigraph::validate(2, None, [(0, 1, 5)]).unwrap();
    assert_eq!((d.m(), d.color(0, 1)), (1, Some(1)));
    assert_eq!(ColoredDigraph::validate(1, None, [(0, 0, 1)]).unwrap_err(), GraphError::LoopArc(0));
    assert_eq!(ColoredDigraph::validate(2, None, [(0, 1, 0)]).unwrap_err(), GraphError::NonPositiveColor);
    let two = ColoredDigraph::validate(2, None, [(0, 1, 1), (1, 0, 2)]).unwrap();
    let tags = classify(&two);
    assert!(tags.is_cycle && tags.properly_arc_colored);
    assert!(family_instance(&Family::Remark1Even(7)).is_err());
    assert!(family_instance(&Family::Remark1Odd(8)).is_err());
    assert_eq!(family_instance(&Family::Remark1Even(6)).unwrap(), named_instance("fig1-left").unwrap());
}
