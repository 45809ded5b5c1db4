//! Coloring-condition checkers, theorem sweeps and conjecture fuzzing.
//!
//! Runs are reproducible: instance `i` of a run with base seed `s` is built
//! from a seed derived from `(s, i)` alone, results are collected in index
//! order, and the structured report leaves out wall time.

mod checks;
mod properties;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::construct::ConstructError;
use crate::graph::cycles::CycleError;
use crate::reach::ReachError;
use crate::graph::{generate, parse, serialize, ColoredDigraph, GeneratorKind, GraphError, ParseError};

pub use checks::{all_cycles_properly_colored, has_monochromatic_triangle, k_cycles_properly_colored, ConditionCheck};
pub use properties::{evaluate, Eval, Property};

/// Largest order the conjecture fuzzer accepts.
pub const FUZZ_MAX_N: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabError {
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("unknown property `{0}`")]
    UnknownProperty(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Construct(#[from] ConstructError),
}

impl From<CycleError> for LabError {
    fn from(e: CycleError) -> Self {
        LabError::Construct(e.into())
    }
}

impl From<ReachError> for LabError {
    fn from(e: ReachError) -> Self {
        LabError::Construct(e.into())
    }
}

impl LabError {
    pub fn is_budget(&self) -> bool {
        matches!(self, LabError::Construct(ConstructError::BudgetExceeded(_)))
    }
}

/// A digraph on which a property failed, serialized as `.acd` text.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub index: u64,
    pub property: String,
    pub acd: String,
    pub certificate: Option<String>,
}

impl Counterexample {
    /// Re-parses the digraph and re-runs the property; `true` if it still fails.
    pub fn recheck(&self) -> Result<bool, LabError> {
        let d = parse(&self.acd)?;
        let p: Property = self.property.parse()?;
        Ok(evaluate(p, &d)?.fails)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub family: String,
    pub params: BTreeMap<String, String>,
    pub seed: u64,
    pub instances_examined: u64,
    pub instances_passing_precondition: u64,
    pub tallies: BTreeMap<String, u64>,
    pub counterexamples: Vec<Counterexample>,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl CheckReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Line format; wall time goes in a trailing comment.
    pub fn render_lines(&self) -> String {
        let mut s = String::new();
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let _ = writeln!(s, "report {} seed={} {}", self.family, self.seed, params.join(" "));
        let _ = writeln!(s, "examined {}", self.instances_examined);
        let _ = writeln!(s, "passing-precondition {}", self.instances_passing_precondition);
        for (k, v) in &self.tallies {
            let _ = writeln!(s, "tally {k} {v}");
        }
        let _ = writeln!(s, "counterexamples {}", self.counterexamples.len());
        for c in &self.counterexamples {
            let _ = writeln!(s, "counterexample {} {}", c.index, c.property);
            for l in c.acd.lines() {
                let _ = writeln!(s, "  {l}");
            }
        }
        let _ = writeln!(s, "# wall-time {:.3}s", self.wall_time.as_secs_f64());
        s
    }

    pub fn tally(&self, key: &str) -> u64 {
        self.tallies.get(key).copied().unwrap_or(0)
    }

    /// Every counterexample still fails when re-run from its serialization.
    pub fn recheck(&self) -> Result<bool, LabError> {
        for c in &self.counterexamples {
            if !c.recheck()? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Per-instance seed: SplitMix64 finalizer over the base seed and index.
pub fn instance_seed(base: u64, index: u64) -> u64 {
    let mut z = base ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

struct Run {
    family: String,
    params: BTreeMap<String, String>,
    seed: u64,
    jobs: usize,
}

impl Run {
    /// Evaluates `count` instances built by `make(index, seed)` in parallel
    /// and folds them in index order.
    fn execute<F>(self, count: u64, make: F) -> Result<CheckReport, LabError>
    where
        F: Fn(u64, u64) -> Result<(ColoredDigraph, Property), LabError> + Sync,
    {
        let start = Instant::now();
        let seed = self.seed;
        let one = |i: u64| -> Result<(ColoredDigraph, Property, Result<Eval, LabError>), LabError> {
            let (d, p) = make(i, instance_seed(seed, i))?;
            let e = evaluate(p, &d);
            Ok((d, p, e))
        };
        let results: Vec<_> = if self.jobs == 1 {
            (0..count).map(one).collect()
        } else {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(self.jobs)
                .build()
                .map_err(|e| LabError::BadParameter(e.to_string()))?;
            pool.install(|| (0..count).into_par_iter().map(one).collect())
        };

        let mut report = CheckReport {
            family: self.family,
            params: self.params,
            seed,
            instances_examined: 0,
            instances_passing_precondition: 0,
            tallies: BTreeMap::new(),
            counterexamples: Vec::new(),
            wall_time: Duration::ZERO,
        };
        for (i, r) in results.into_iter().enumerate() {
            let (d, p, e) = r?;
            report.instances_examined += 1;
            let e = match e {
                Ok(e) => e,
                Err(err) if err.is_budget() => {
                    *report.tallies.entry("budget-exceeded".into()).or_default() += 1;
                    continue;
                }
                Err(err) => return Err(err),
            };
            if e.applicable {
                report.instances_passing_precondition += 1;
            }
            for t in e.tallies {
                *report.tallies.entry(t).or_default() += 1;
            }
            if e.fails {
                report.counterexamples.push(Counterexample {
                    index: i as u64,
                    property: p.to_string(),
                    acd: serialize(&d),
                    certificate: e.certificate,
                });
            }
        }
        report.wall_time = start.elapsed();
        Ok(report)
    }
}

/// Conjecture fuzzing parameters.
#[derive(Debug, Clone)]
pub struct FuzzParams {
    pub kind: GeneratorKind,
    pub samples: u64,
    pub seed: u64,
    /// Worker threads; `0` lets the pool decide, `1` runs inline.
    pub jobs: usize,
    /// Digraphs examined before the generated ones, as indices `0..`.
    pub inject: Vec<ColoredDigraph>,
}

fn kind_order(k: &GeneratorKind) -> usize {
    match k {
        GeneratorKind::RandomDigraph { n, .. }
        | GeneratorKind::RandomTournament { n, .. }
        | GeneratorKind::RandomSemiComplete { n, .. }
        | GeneratorKind::RandomUnicyclic { n, .. } => *n,
        GeneratorKind::RandomBipartiteTournament { nx, ny, .. } => nx + ny,
        GeneratorKind::ColoredCycle { colors } => colors.len(),
    }
}

fn kind_params(k: &GeneratorKind) -> BTreeMap<String, String> {
    let v = serde_json::to_value(k).expect("kind serializes");
    v.as_object()
        .expect("tagged enum")
        .iter()
        .map(|(k, v)| (k.clone(), v.to_string().trim_matches('"').to_string()))
        .collect()
}

/// Generates digraphs, keeps those whose cycles are all properly colored,
/// and solves each survivor. A survivor without a PCP-kernel becomes a
/// counterexample.
pub fn fuzz_conjecture(p: &FuzzParams) -> Result<CheckReport, LabError> {
    let n = kind_order(&p.kind);
    if n > FUZZ_MAX_N {
        return Err(LabError::BadParameter(format!("n = {n} exceeds {FUZZ_MAX_N}")));
    }
    generate(&p.kind, 0)?;
    let mut params = kind_params(&p.kind);
    params.insert("samples".into(), p.samples.to_string());
    params.insert("injected".into(), p.inject.len().to_string());
    params.insert("two-cycles".into(), "counted".into());
    let run = Run { family: "conjecture".into(), params, seed: p.seed, jobs: p.jobs };
    let injected = p.inject.len() as u64;
    run.execute(injected + p.samples, |i, s| {
        let d = if i < injected { p.inject[i as usize].clone() } else { generate(&p.kind, s)? };
        Ok((d, Property::Conjecture))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TheoremId {
    Thm4Exhaustive,
    Thm5Fuzz,
    Thm6Fuzz,
    Thm7iFuzz,
    Thm7iiFuzz,
    Lemma1Fuzz,
    Lemma2Fuzz,
    Obs1Fuzz,
    ReductionIff,
}

impl TheoremId {
    pub const ALL: [TheoremId; 9] = [
        TheoremId::Thm4Exhaustive,
        TheoremId::Thm5Fuzz,
        TheoremId::Thm6Fuzz,
        TheoremId::Thm7iFuzz,
        TheoremId::Thm7iiFuzz,
        TheoremId::Lemma1Fuzz,
        TheoremId::Lemma2Fuzz,
        TheoremId::Obs1Fuzz,
        TheoremId::ReductionIff,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TheoremId::Thm4Exhaustive => "thm4-exhaustive",
            TheoremId::Thm5Fuzz => "thm5-fuzz",
            TheoremId::Thm6Fuzz => "thm6-fuzz",
            TheoremId::Thm7iFuzz => "thm7i-fuzz",
            TheoremId::Thm7iiFuzz => "thm7ii-fuzz",
            TheoremId::Lemma1Fuzz => "lemma1-fuzz",
            TheoremId::Lemma2Fuzz => "lemma2-fuzz",
            TheoremId::Obs1Fuzz => "obs1-fuzz",
            TheoremId::ReductionIff => "reduction-iff",
        }
    }
}

impl FromStr for TheoremId {
    type Err = LabError;

    fn from_str(s: &str) -> Result<Self, LabError> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| LabError::BadParameter(format!("unknown theorem id `{s}`")))
    }
}

/// Sweep parameters. For `thm4-exhaustive`, `n` and `m` are exact and
/// `samples` is ignored; elsewhere `n` bounds the order (per side for
/// bipartite tournaments) and colors are drawn from `1..=m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepParams {
    pub n: usize,
    pub m: u32,
    pub samples: u64,
    pub seed: u64,
    pub jobs: usize,
}

/// Runs the property suite behind `id` and tallies the outcome.
pub fn sweep_theorem(id: TheoremId, p: &SweepParams) -> Result<CheckReport, LabError> {
    let bad = |m: &str| Err(LabError::BadParameter(m.to_string()));
    if p.m == 0 {
        return bad("m must be >= 1");
    }
    let mut params = BTreeMap::new();
    params.insert("n".to_string(), p.n.to_string());
    params.insert("m".to_string(), p.m.to_string());
    let (n, m) = (p.n, p.m);
    let run = |params: BTreeMap<String, String>| Run { family: id.name().into(), params, seed: p.seed, jobs: p.jobs };

    if id == TheoremId::Thm4Exhaustive {
        if !(2..=8).contains(&n) || m > 3 {
            return bad("thm4-exhaustive needs 2 <= n <= 8 and m <= 3");
        }
        let total = (m as u64).pow(n as u32);
        return run(params).execute(total, |i, _| {
            let mut code = i;
            let colors = (0..n)
                .map(|_| {
                    let c = (code % m as u64) as u32 + 1;
                    code /= m as u64;
                    c
                })
                .collect();
            Ok((generate(&GeneratorKind::ColoredCycle { colors }, 0)?, Property::Thm4))
        });
    }

    if n == 0 || n > FUZZ_MAX_N {
        return bad("n must be in 1..=10");
    }
    params.insert("samples".to_string(), p.samples.to_string());
    let sample = move |s: u64| -> (ChaCha8Rng, u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        let g = rng.random();
        (rng, g)
    };
    match id {
        TheoremId::Thm4Exhaustive => unreachable!("handled above"),
        TheoremId::Thm5Fuzz => {
            if n < 2 || m < 2 {
                return bad("thm5-fuzz needs n >= 2 and m >= 2");
            }
            run(params).execute(p.samples, |_, s| {
                let (mut rng, g) = sample(s);
                let k = rng.random_range(2..=n);
                let kind = GeneratorKind::RandomUnicyclic { n: k, m, arc_prob: 0.4, pc_cycle: true };
                Ok((generate(&kind, g)?, Property::Thm5))
            })
        }
        TheoremId::Thm6Fuzz => run(params).execute(p.samples, |_, s| {
            let (mut rng, g) = sample(s);
            let k = rng.random_range(1..=n);
            let kind = GeneratorKind::RandomSemiComplete { n: k, m, double_prob: 0.25 };
            Ok((generate(&kind, g)?, Property::Thm6))
        }),
        TheoremId::Thm7iFuzz | TheoremId::Lemma1Fuzz | TheoremId::Lemma2Fuzz => {
            let prop = match id {
                TheoremId::Thm7iFuzz => Property::Thm7i,
                TheoremId::Lemma1Fuzz => Property::Lemma1,
                _ => Property::Lemma2,
            };
            run(params).execute(p.samples, move |_, s| {
                let (mut rng, g) = sample(s);
                let nx = rng.random_range(1..=n);
                let ny = rng.random_range(1..=n);
                let kind = GeneratorKind::RandomBipartiteTournament { nx, ny, m };
                Ok((generate(&kind, g)?, prop))
            })
        }
        TheoremId::Thm7iiFuzz => run(params).execute(p.samples, |_, s| {
            let (mut rng, g) = sample(s);
            let ny = rng.random_range(1..=n);
            let kind = GeneratorKind::RandomBipartiteTournament { nx: 2, ny, m };
            Ok((generate(&kind, g)?, Property::Thm7ii))
        }),
        TheoremId::Obs1Fuzz => run(params).execute(p.samples, |_, s| {
            let (mut rng, g) = sample(s);
            let k = rng.random_range(1..=n);
            let kind = GeneratorKind::RandomDigraph { n: k, arc_prob: 0.35, m: 1 };
            Ok((generate(&kind, g)?, Property::Obs1))
        }),
        TheoremId::ReductionIff => run(params).execute(p.samples, |i, s| {
            let (mut rng, g) = sample(s);
            let k = rng.random_range(1..=n);
            let kind = GeneratorKind::RandomDigraph { n: k, arc_prob: 0.4, m: 1 };
            let colors = 1 + (i % m as u64) as u32;
            Ok((generate(&kind, g)?, Property::ReductionIff { m: colors }))
        }),
    }
}
