//! Acceptance suite. Prints one line per criterion and exits non-zero if any
//! criterion fails. Every criterion runs twice; the second run must produce
//! byte-identical structured output.

mod common;

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use common::{closure_naive, has_pcp_kernel_naive, kernels_naive};
use pcpk::construct::{good_vertex_semicomplete, reduction_kernel_to_pathkernel, solve_pcp};
use pcpk::graph::{generate, named_instance, GeneratorKind, NAMED_INSTANCES};
use pcpk::kernel::{find_kernel, precondition_checks, PlainDigraph};
use pcpk::lab::{fuzz_conjecture, instance_seed, sweep_theorem, CheckReport, FuzzParams, SweepParams, TheoremId};
use pcpk::reach::{closure, PathMode};

const PC: PathMode = PathMode::ProperlyColored;
const RB: PathMode = PathMode::Rainbow;

/// Outcome of one criterion run: failures found and the structured output
/// that the determinism check compares.
#[derive(Default)]
struct Outcome {
    failures: Vec<String>,
    payload: String,
}

impl Outcome {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn report(&mut self, r: &CheckReport) {
        self.payload.push_str(&r.to_json());
        self.payload.push('\n');
    }
}

struct Criterion {
    id: usize,
    title: &'static str,
    limit: Duration,
    run: fn(usize) -> Outcome,
}

// fig3-d6 closure: the nine arcs of the digraph and the nine added ones.
const FIG3_CLOSURE: [(&str, &str); 18] = [
    ("x1", "y1"),
    ("y1", "x2"),
    ("y2", "x1"),
    ("x2", "y2"),
    ("y2", "x3"),
    ("y3", "x2"),
    ("x3", "y3"),
    ("y1", "x3"),
    ("y3", "x1"),
    ("x3", "x2"),
    ("x2", "x1"),
    ("x1", "x3"),
    ("y1", "y2"),
    ("y2", "y3"),
    ("y3", "y1"),
    ("y1", "x1"),
    ("y2", "x2"),
    ("y3", "x3"),
];

fn named_instances(_: usize) -> Outcome {
    let mut o = Outcome::default();
    for name in NAMED_INSTANCES {
        let d = named_instance(name).unwrap();
        let t = Instant::now();
        let out = solve_pcp(&d, PC).unwrap();
        let dt = t.elapsed();
        o.check(out.certificate.is_none(), || format!("{name}: solver found a kernel"));
        o.check(dt < Duration::from_secs(1), || format!("{name}: took {dt:?}"));
        o.check(!has_pcp_kernel_naive(&d, PC), || format!("{name}: oracle found a kernel"));
        let _ = writeln!(o.payload, "{name} n={} route={} kernel=none", d.n(), out.route.name());
    }
    let d = named_instance("fig3-d6").unwrap();
    let c = closure(&d, PC).unwrap();
    let got: BTreeSet<(String, String)> =
        c.arcs().map(|(u, v)| (d.label(u).to_string(), d.label(v).to_string())).collect();
    let want: BTreeSet<(String, String)> =
        FIG3_CLOSURE.iter().map(|&(u, v)| (u.to_string(), v.to_string())).collect();
    o.check(got == want, || format!("fig3-d6 closure differs: {got:?}"));
    let naive = closure_naive(&d, PC);
    let naive_arcs: BTreeSet<(String, String)> = d
        .vertices()
        .flat_map(|u| d.vertices().map(move |v| (u, v)))
        .filter(|&(u, v)| naive[u][v])
        .map(|(u, v)| (d.label(u).to_string(), d.label(v).to_string()))
        .collect();
    o.check(naive_arcs == want, || "fig3-d6 oracle closure differs from the figure".into());
    o.payload.push_str(&c.witness_lines(&d));
    o
}

// (n, m, colorings, colorings with a kernel), from the brute-force oracle.
const CYCLE_COUNTS: [(usize, u32, u64, u64); 18] = [
    (3, 1, 1, 0),
    (3, 2, 8, 6),
    (3, 3, 27, 24),
    (4, 1, 1, 1),
    (4, 2, 16, 16),
    (4, 3, 81, 81),
    (5, 1, 1, 0),
    (5, 2, 32, 30),
    (5, 3, 243, 240),
    (6, 1, 1, 1),
    (6, 2, 64, 64),
    (6, 3, 729, 729),
    (7, 1, 1, 0),
    (7, 2, 128, 126),
    (7, 3, 2187, 2184),
    (8, 1, 1, 1),
    (8, 2, 256, 256),
    (8, 3, 6561, 6561),
];

fn cycles_exhaustive(jobs: usize) -> Outcome {
    let mut o = Outcome::default();
    for (n, m, total, with) in CYCLE_COUNTS {
        let r = sweep_theorem(TheoremId::Thm4Exhaustive, &SweepParams { n, m, samples: 0, seed: 0, jobs }).unwrap();
        o.check(r.instances_examined == total, || format!("C{n} m={m}: examined {}", r.instances_examined));
        o.check(r.tally("kernel-exists") == with, || format!("C{n} m={m}: {} with kernel", r.tally("kernel-exists")));
        o.check(r.tally("constructor-verified") == with, || format!("C{n} m={m}: constructor verified {}", r.tally("constructor-verified")));
        o.check(r.counterexamples.is_empty(), || format!("C{n} m={m}: {}", r.render_lines()));
        o.report(&r);
    }
    o
}

fn sweep(o: &mut Outcome, id: TheoremId, n: usize, m: u32, samples: u64, seed: u64, jobs: usize) -> CheckReport {
    let r = sweep_theorem(id, &SweepParams { n, m, samples, seed, jobs }).unwrap();
    o.check(r.counterexamples.is_empty(), || format!("{}: {}", id.name(), r.render_lines()));
    o.check(r.tally("budget-exceeded") == 0, || format!("{}: budget exceeded", id.name()));
    o.report(&r);
    r
}

fn unicyclic_fuzz(jobs: usize) -> Outcome {
    let mut o = Outcome::default();
    let r = sweep(&mut o, TheoremId::Thm5Fuzz, 7, 3, 1000, 5, jobs);
    o.check(r.instances_passing_precondition == 1000, || format!("passing {}", r.instances_passing_precondition));
    o.check(r.tally("constructor-verified") == 1000, || "constructor output not verified everywhere".into());
    let anomalies = r.tally("sink-anomaly-logged");
    o.check(r.tally("fallback-after-sink-anomaly") <= anomalies, || "fallback without logged anomaly".into());
    o
}

fn semicomplete_fuzz(jobs: usize) -> Outcome {
    let mut o = Outcome::default();
    let r = sweep(&mut o, TheoremId::Thm6Fuzz, 7, 3, 2500, 6, jobs);
    let passing = r.instances_passing_precondition;
    o.check(passing >= 1000, || format!("only {passing} instances without a monochromatic triangle"));
    o.check(r.tally("good-vertex") == passing, || "an instance has no good vertex".into());
    let fig2 = named_instance("fig2-tournament").unwrap();
    o.check(good_vertex_semicomplete(&fig2).unwrap().is_none(), || "fig2-tournament has a good vertex".into());
    o
}

fn bipartite_fuzz(jobs: usize) -> Outcome {
    let mut o = Outcome::default();
    let r = sweep(&mut o, TheoremId::Thm7iFuzz, 4, 3, 2500, 7, jobs);
    let passing = r.instances_passing_precondition;
    o.check(passing >= 1000, || format!("only {passing} instances with 4- and 6-cycles PC"));
    o.check(r.tally("kernel-found") == passing, || "an instance has no kernel".into());
    let r = sweep(&mut o, TheoremId::Thm7iiFuzz, 5, 3, 1000, 8, jobs);
    o.check(r.instances_passing_precondition == 1000, || format!("(ii) passing {}", r.instances_passing_precondition));
    o.check(r.tally("kernel-found") == 1000, || "(ii) an instance has no kernel".into());
    let r = sweep(&mut o, TheoremId::Lemma2Fuzz, 4, 3, 2500, 9, jobs);
    o.check(r.instances_passing_precondition >= 1000, || "distance sample too small".into());
    let r = sweep(&mut o, TheoremId::Lemma1Fuzz, 4, 3, 1000, 10, jobs);
    o.check(r.instances_passing_precondition == 1000, || "walk parity sample too small".into());
    o
}

fn reductions(jobs: usize) -> Outcome {
    let mut o = Outcome::default();
    let mut agree = [0u64; 2];
    for i in 0..500u64 {
        let s = instance_seed(11, i);
        let n = 1 + (s % 5) as usize;
        let m = 1 + (i % 3) as u32;
        let d = generate(&GeneratorKind::RandomDigraph { n, arc_prob: 0.4, m: 1 }, s).unwrap();
        let h = PlainDigraph::from_colored(&d);
        let has = !kernels_naive(&h).is_empty();
        let pc = reduction_kernel_to_pathkernel(&h, m, PC).unwrap();
        let rb = reduction_kernel_to_pathkernel(&h, m, RB).unwrap();
        let pc_has = has_pcp_kernel_naive(&pc.d_prime, PC);
        let rb_has = has_pcp_kernel_naive(&rb.d_prime, RB);
        o.check(has == pc_has && has == rb_has, || format!("instance {i}: {has} {pc_has} {rb_has}"));
        agree[has as usize] += 1;
    }
    let _ = writeln!(o.payload, "oracle: without kernel {} with kernel {}", agree[0], agree[1]);
    sweep(&mut o, TheoremId::ReductionIff, 5, 3, 500, 12, jobs);
    o
}

fn kernel_oracle(_: usize) -> Outcome {
    let mut o = Outcome::default();
    let mut applicable = [0u64; 4];
    for i in 0..1000u64 {
        let s = instance_seed(13, i);
        let n = 1 + (s % 12) as usize;
        let p = 0.05 + (s >> 8) as f64 % 30.0 / 100.0;
        let h = PlainDigraph::from_colored(&generate(&GeneratorKind::RandomDigraph { n, arc_prob: p, m: 1 }, s).unwrap());
        let all = kernels_naive(&h);
        let found = find_kernel(&h);
        o.check(found.is_some() == !all.is_empty(), || format!("instance {i}: existence differs"));
        if let Some(k) = &found {
            o.check(all.contains(&k.members), || format!("instance {i}: not a kernel"));
        }
        let Ok(pre) = precondition_checks(&h) else {
            o.failures.push(format!("instance {i}: cycle budget exceeded"));
            continue;
        };
        let acyclic = !pre.has_odd_cycle && !pre.has_even_cycle;
        if acyclic {
            applicable[0] += 1;
            o.check(all.len() == 1, || format!("instance {i}: acyclic with {} kernels", all.len()));
        }
        if !pre.has_odd_cycle {
            applicable[1] += 1;
            o.check(!all.is_empty(), || format!("instance {i}: no odd cycle but no kernel"));
        }
        if !pre.has_even_cycle {
            applicable[2] += 1;
            o.check(all.len() <= 1, || format!("instance {i}: no even cycle but {} kernels", all.len()));
        }
        if pre.every_cycle_has_symmetrical_arc {
            applicable[3] += 1;
            o.check(!all.is_empty(), || format!("instance {i}: symmetric arcs but no kernel"));
        }
        let _ = writeln!(o.payload, "{i} {:?}", found.map(|k| k.members));
    }
    o.check(applicable.iter().all(|&a| a > 0), || format!("a property never applied: {applicable:?}"));
    let _ = writeln!(o.payload, "applicable {applicable:?}");
    o
}

fn conjecture_fuzz(jobs: usize) -> Outcome {
    let mut o = Outcome::default();
    let p = FuzzParams {
        kind: GeneratorKind::RandomDigraph { n: 6, arc_prob: 0.3, m: 3 },
        samples: 10_000,
        seed: 2024,
        jobs,
        inject: Vec::new(),
    };
    let r = fuzz_conjecture(&p).unwrap();
    o.check(r.instances_examined == 10_000, || "wrong sample count".into());
    o.check(r.tally("budget-exceeded") == 0, || "budget exceeded".into());
    o.check(r.recheck().unwrap(), || "a counterexample does not re-verify".into());
    for c in &r.counterexamples {
        let d = pcpk::graph::parse(&c.acd).unwrap();
        o.check(!has_pcp_kernel_naive(&d, PC), || format!("counterexample {} has a kernel", c.index));
    }
    o.check(r.counterexamples.is_empty(), || format!("{} counterexamples", r.counterexamples.len()));
    o.report(&r);
    o
}

fn main() {
    let criteria = [
        Criterion { id: 1, title: "named instances have no PCP-kernel; fig3-d6 closure", limit: Duration::from_secs(4), run: named_instances },
        Criterion { id: 2, title: "all colorings of C3..C8 with up to 3 colors", limit: Duration::from_secs(60), run: cycles_exhaustive },
        Criterion { id: 3, title: "unicyclic digraphs with a PC cycle", limit: Duration::from_secs(120), run: unicyclic_fuzz },
        Criterion { id: 4, title: "semi-complete digraphs without monochromatic triangles", limit: Duration::from_secs(120), run: semicomplete_fuzz },
        Criterion { id: 5, title: "bipartite tournaments", limit: Duration::from_secs(180), run: bipartite_fuzz },
        Criterion { id: 6, title: "kernel iff PC-kernel iff rainbow kernel of the gadget", limit: Duration::from_secs(120), run: reductions },
        Criterion { id: 7, title: "kernel search against subset enumeration", limit: Duration::from_secs(60), run: kernel_oracle },
        Criterion { id: 8, title: "conjecture fuzzing", limit: Duration::from_secs(300), run: conjecture_fuzz },
    ];
    let jobs = std::thread::available_parallelism().map_or(2, |n| n.get()).max(2);
    let mut failed = 0;
    let mut nondeterministic = Vec::new();
    for c in &criteria {
        let t = Instant::now();
        let first = (c.run)(jobs);
        let dt = t.elapsed();
        let first_ok = first.failures.is_empty();
        let mut failures = first.failures;
        if dt > c.limit {
            failures.push(format!("took {dt:.2?}, limit {:?}", c.limit));
        }
        let second = (c.run)(1);
        if second.payload != first.payload || second.failures.is_empty() != first_ok {
            nondeterministic.push(c.id);
        }
        let verdict = if failures.is_empty() { "PASS" } else { "FAIL" };
        println!("criterion {}: {verdict} {} ({dt:.2?})", c.id, c.title);
        for f in failures.iter().take(5) {
            println!("    {f}");
        }
        failed += usize::from(!failures.is_empty());
    }
    if nondeterministic.is_empty() {
        println!("criterion 9: PASS reruns with the same seeds give byte-identical output");
    } else {
        println!("criterion 9: FAIL output changed on rerun for criteria {nondeterministic:?}");
        failed += 1;
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
