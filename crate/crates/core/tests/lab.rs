mod common;

use common::{cycle_colors, cycle_is_pc, cycles_naive, has_pcp_kernel_naive, lcg_digraph};
use pcpk::construct::solve_pcp_exact;
use pcpk::graph::{
    family_instance, generate, named_instance, serialize, ColoredDigraph, ConnectPolicy, Family, GeneratorKind,
};
use pcpk::lab::{
    all_cycles_properly_colored, evaluate, fuzz_conjecture, has_monochromatic_triangle, instance_seed,
    k_cycles_properly_colored, sweep_theorem, Counterexample, FuzzParams, LabError, Property, SweepParams,
    TheoremId,
};
use pcpk::reach::PathMode;

const PC: PathMode = PathMode::ProperlyColored;

#[test]
fn cycle_conditions_match_enumeration() {
    for seed in 0..400 {
        let d = lcg_digraph(seed, 2 + (seed % 6) as usize, 20 + seed % 40, 1 + (seed % 3) as u32);
        let cycles = cycles_naive(&d);
        let all = all_cycles_properly_colored(&d);
        assert_eq!(all.holds, cycles.iter().all(|c| cycle_is_pc(&d, c)), "seed {seed}");
        if let Some(w) = &all.witness {
            let k = w.iter().enumerate().min_by_key(|p| p.1).unwrap().0;
            let mut r = w.clone();
            r.rotate_left(k);
            assert!(cycles.contains(&r), "witness {w:?} is not a cycle");
            assert!(!cycle_is_pc(&d, w));
        }
        let ks = k_cycles_properly_colored(&d, &[4, 6]).unwrap();
        let want = cycles.iter().filter(|c| c.len() == 4 || c.len() == 6).all(|c| cycle_is_pc(&d, c));
        assert_eq!(ks.holds, want, "seed {seed}");
        let tri = cycles
            .iter()
            .any(|c| c.len() == 3 && cycle_colors(&d, c).windows(2).all(|w| w[0] == w[1]));
        assert_eq!(has_monochromatic_triangle(&d).is_some(), tri, "seed {seed}");
    }
}

#[test]
fn stretched_figure1_families_have_no_kernel() {
    for n in [6, 8, 10, 12] {
        let d = family_instance(&Family::Remark1Even(n)).unwrap();
        assert!(!all_cycles_properly_colored(&d).holds);
        assert_eq!(solve_pcp_exact(&d, PC).unwrap(), None, "n = {n}");
        if n <= 8 {
            assert!(!has_pcp_kernel_naive(&d, PC));
        }
    }
    // Length 0 merges u9 into u2; that digraph does have a kernel.
    let merged = family_instance(&Family::Remark1Odd(7)).unwrap();
    let cert = solve_pcp_exact(&merged, PC).unwrap().unwrap();
    assert_eq!(cert.member_labels(&merged), ["u2", "u4", "u7"]);
    assert!(has_pcp_kernel_naive(&merged, PC));
    assert!(!all_cycles_properly_colored(&merged).holds);
    for n in [9, 11, 13] {
        let d = family_instance(&Family::Remark1Odd(n)).unwrap();
        assert!(!all_cycles_properly_colored(&d).holds);
        assert_eq!(solve_pcp_exact(&d, PC).unwrap(), None, "n = {n}");
        if n <= 9 {
            assert!(!has_pcp_kernel_naive(&d, PC));
        }
    }
}

#[test]
fn bipartite_union_family_has_no_kernel() {
    for seed in 0..50u64 {
        let base = generate(
            &GeneratorKind::RandomBipartiteTournament { nx: 1 + (seed % 2) as usize, ny: 1 + (seed % 3) as usize, m: 3 },
            seed,
        )
        .unwrap();
        let policy = match seed % 3 {
            0 => ConnectPolicy::Constant(1),
            1 => ConnectPolicy::Cyclic(3),
            _ => ConnectPolicy::Random { colors: 3, seed },
        };
        let d = family_instance(&Family::Remark4 { base, policy }).unwrap();
        assert!(!has_pcp_kernel_naive(&d, PC), "seed {seed}");
        assert_eq!(solve_pcp_exact(&d, PC).unwrap(), None);
    }
}

#[test]
fn single_vertex_attached_to_d6() {
    let base = ColoredDigraph::validate(1, Some(vec!["z".into()]), Vec::<(usize, usize, i64)>::new()).unwrap();
    let d = family_instance(&Family::Remark4 { base, policy: ConnectPolicy::Constant(1) }).unwrap();
    assert_eq!((d.n(), d.arc_count()), (7, 15));
    assert!(!has_pcp_kernel_naive(&d, PC));
}

#[test]
fn properties_on_named_instances() {
    let fig2 = named_instance("fig2-tournament").unwrap();
    let e = evaluate(Property::Thm6, &fig2).unwrap();
    assert!(!e.applicable && !e.fails);
    let fig3 = named_instance("fig3-d6").unwrap();
    assert!(!evaluate(Property::Thm7i, &fig3).unwrap().applicable);
    assert!(!evaluate(Property::Thm7ii, &fig3).unwrap().applicable);
    let e = evaluate(Property::Lemma1, &fig3).unwrap();
    assert!(e.applicable && !e.fails);
    assert!(matches!("nope".parse::<Property>(), Err(LabError::UnknownProperty(_))));
}

#[test]
fn counterexample_recheck_reports_non_failures() {
    let c = Counterexample {
        index: 0,
        property: "conjecture".into(),
        acd: serialize(&named_instance("fig1-left").unwrap()),
        certificate: None,
    };
    assert!(!c.recheck().unwrap());
}

#[test]
fn sweeps_are_thread_count_independent() {
    for id in TheoremId::ALL {
        let (n, m) = if id == TheoremId::Thm4Exhaustive { (6, 2) } else { (4, 3) };
        let run = |jobs| sweep_theorem(id, &SweepParams { n, m, samples: 60, seed: 42, jobs }).unwrap();
        let a = run(1);
        let b = run(4);
        assert_eq!(a.to_json(), b.to_json(), "{}", id.name());
        assert!(a.counterexamples.is_empty(), "{}: {}", id.name(), a.render_lines());
        assert_eq!(id.name().parse::<TheoremId>().unwrap(), id);
    }
}

#[test]
fn fuzz_report_is_reproducible() {
    let p = FuzzParams {
        kind: GeneratorKind::RandomDigraph { n: 6, arc_prob: 0.3, m: 3 },
        samples: 300,
        seed: 9,
        jobs: 3,
        inject: Vec::new(),
    };
    let a = fuzz_conjecture(&p).unwrap();
    let b = fuzz_conjecture(&FuzzParams { jobs: 1, ..p.clone() }).unwrap();
    assert_eq!(a.to_json(), b.to_json());
    assert_eq!(a.instances_examined, 300);
    assert!(a.instances_passing_precondition > 0);
    assert_eq!(a.tally("kernel-found"), a.instances_passing_precondition);
    assert!(!a.to_json().contains("wall"));
    assert!(a.render_lines().contains("# wall-time"));
    let c = fuzz_conjecture(&FuzzParams { seed: 10, ..p }).unwrap();
    assert_ne!(a.to_json(), c.to_json());
    assert_ne!(instance_seed(9, 0), instance_seed(10, 0));
}
