//! Per-instance properties checked by sweeps and fuzzing.
//!
//! Each property is a pure function of one digraph (plus the parameters in
//! its name), so any reported failure can be re-run from the serialized
//! digraph alone.

use std::fmt;
use std::str::FromStr;

use super::checks::{all_cycles_properly_colored, has_monochromatic_triangle, k_cycles_properly_colored};
use super::LabError;
use crate::construct::{
    good_vertex_semicomplete, pcp_kernel_bipartite_traced, pcp_kernel_of_cycle, pcp_kernel_of_unicyclic,
    pcp_kernel_semicomplete, reduction_kernel_to_pathkernel, solve_pcp, solve_pcp_exact, ConstructError,
};
use crate::graph::{bipartite_partition, is_cycle, ColoredDigraph};
use crate::kernel::{find_kernel, PlainDigraph};
use crate::reach::{self, PathMode};

const PC: PathMode = PathMode::ProperlyColored;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Property {
    /// All cycles properly colored implies a PCP-kernel.
    Conjecture,
    /// Single cycles: kernel iff not monochromatic odd; constructor agrees.
    Thm4,
    /// Unicyclic with properly colored cycle: constructor verifies.
    Thm5,
    /// Semi-complete without monochromatic triangle: a good vertex exists.
    Thm6,
    /// Bipartite tournament with all 4- and 6-cycles properly colored: kernel exists.
    Thm7i,
    /// Bipartite tournament with a side of size at most 2: constructor agrees with exact.
    Thm7ii,
    /// Bipartite tournament: along witness paths, `u_i ~ u_j` iff `j - i` is odd.
    Lemma1,
    /// Short-cycle bipartite tournament: one-way pairs are at distance at most 2.
    Lemma2,
    /// One color: dispatcher and plain kernel search agree on members.
    Obs1,
    /// Colors ignored: kernel of the input iff kernel of the gadget, both modes.
    ReductionIff { m: u32 },
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Property::Conjecture => f.write_str("conjecture"),
            Property::Thm4 => f.write_str("thm4"),
            Property::Thm5 => f.write_str("thm5"),
            Property::Thm6 => f.write_str("thm6"),
            Property::Thm7i => f.write_str("thm7i"),
            Property::Thm7ii => f.write_str("thm7ii"),
            Property::Lemma1 => f.write_str("lemma1"),
            Property::Lemma2 => f.write_str("lemma2"),
            Property::Obs1 => f.write_str("obs1"),
            Property::ReductionIff { m } => write!(f, "reduction-iff:m={m}"),
        }
    }
}

impl FromStr for Property {
    type Err = LabError;

    fn from_str(s: &str) -> Result<Self, LabError> {
        Ok(match s {
            "conjecture" => Property::Conjecture,
            "thm4" => Property::Thm4,
            "thm5" => Property::Thm5,
            "thm6" => Property::Thm6,
            "thm7i" => Property::Thm7i,
            "thm7ii" => Property::Thm7ii,
            "lemma1" => Property::Lemma1,
            "lemma2" => Property::Lemma2,
            "obs1" => Property::Obs1,
            _ => {
                let m = s
                    .strip_prefix("reduction-iff:m=")
                    .and_then(|m| m.parse().ok())
                    .ok_or_else(|| LabError::UnknownProperty(s.to_string()))?;
                Property::ReductionIff { m }
            }
        })
    }
}

/// Outcome of one property evaluation.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Eval {
    /// The instance meets the property's precondition.
    pub applicable: bool,
    pub fails: bool,
    pub tallies: Vec<String>,
    /// Rendered certificate related to the failure, if any.
    pub certificate: Option<String>,
}

impl Eval {
    fn skip(reason: &str) -> Self {
        Eval { tallies: vec![reason.to_string()], ..Eval::default() }
    }

    fn applicable() -> Self {
        Eval { applicable: true, ..Eval::default() }
    }

    fn tally(&mut self, t: impl Into<String>) {
        self.tallies.push(t.into());
    }

    fn fail(&mut self, why: impl Into<String>) {
        self.fails = true;
        self.tallies.push(format!("violation:{}", why.into()));
    }
}

fn fell_back(log: &[String]) -> bool {
    log.iter().any(|l| l.contains("failed verification"))
}

pub fn evaluate(p: Property, d: &ColoredDigraph) -> Result<Eval, LabError> {
    match p {
        Property::Conjecture => conjecture(d),
        Property::Thm4 => thm4(d),
        Property::Thm5 => thm5(d),
        Property::Thm6 => thm6(d),
        Property::Thm7i => thm7i(d),
        Property::Thm7ii => thm7ii(d),
        Property::Lemma1 => lemma1(d),
        Property::Lemma2 => lemma2(d),
        Property::Obs1 => obs1(d),
        Property::ReductionIff { m } => reduction_iff(d, m),
    }
}

fn conjecture(d: &ColoredDigraph) -> Result<Eval, LabError> {
    if !all_cycles_properly_colored(d).holds {
        return Ok(Eval::skip("precondition-failed"));
    }
    let mut e = Eval::applicable();
    let out = solve_pcp(d, PC)?;
    e.tally(format!("route:{}", out.route.name()));
    if out.certificate.is_some() {
        e.tally("kernel-found");
    } else {
        e.fail("no-kernel");
    }
    Ok(e)
}

fn thm4(d: &ColoredDigraph) -> Result<Eval, LabError> {
    if !is_cycle(d) {
        return Ok(Eval::skip("not-a-cycle"));
    }
    let mut e = Eval::applicable();
    let n = d.n();
    let mono_odd = d.m() <= 1 && n % 2 == 1;
    let exact = solve_pcp_exact(d, PC)?;
    let cons = pcp_kernel_of_cycle(d)?;
    if exact.is_some() {
        e.tally("kernel-exists");
    }
    if exact.is_some() == mono_odd {
        e.fail("existence-vs-statement");
    }
    if cons.is_some() != exact.is_some() {
        e.fail("constructor-vs-exact");
    }
    if let Some(c) = &cons {
        if fell_back(&c.log) {
            e.fail("constructor-fallback");
            e.certificate = Some(c.render(d));
        } else if !c.recheck(d)? {
            e.fail("constructor-unverified");
        } else {
            e.tally("constructor-verified");
        }
    }
    Ok(e)
}

fn thm5(d: &ColoredDigraph) -> Result<Eval, LabError> {
    let cons = match pcp_kernel_of_unicyclic(d) {
        Ok(c) => c,
        Err(ConstructError::NotUnicyclic) => return Ok(Eval::skip("not-unicyclic")),
        Err(ConstructError::CycleNotProperlyColored) => return Ok(Eval::skip("cycle-not-pc")),
        Err(err) => return Err(err.into()),
    };
    let mut e = Eval::applicable();
    if fell_back(&cons.log) {
        e.fail("constructor-fallback");
    } else if !cons.recheck(d)? {
        e.fail("constructor-unverified");
    } else {
        e.tally("constructor-verified");
    }
    if solve_pcp_exact(d, PC)?.is_none() {
        e.fail("exact-found-none");
    }
    let out = solve_pcp(d, PC)?;
    e.tally(format!("route:{}", out.route.name()));
    let anomaly = out.log.iter().any(|l| l.contains("no sink"));
    if anomaly {
        e.tally("sink-anomaly-logged");
    }
    if fell_back(&out.log) {
        if anomaly {
            e.tally("fallback-after-sink-anomaly");
        } else {
            e.fail("dispatcher-fallback");
        }
    }
    if out.certificate.is_none() {
        e.fail("dispatcher-found-none");
    }
    Ok(e)
}

fn thm6(d: &ColoredDigraph) -> Result<Eval, LabError> {
    if has_monochromatic_triangle(d).is_some() {
        return Ok(Eval::skip("monochromatic-triangle"));
    }
    let good = match good_vertex_semicomplete(d) {
        Ok(g) => g,
        Err(ConstructError::NotSemiComplete) => return Ok(Eval::skip("not-semi-complete")),
        Err(err) => return Err(err.into()),
    };
    let mut e = Eval::applicable();
    match good {
        Some(_) => e.tally("good-vertex"),
        None => e.fail("no-good-vertex"),
    }
    let cons = pcp_kernel_semicomplete(d)?;
    let exact = solve_pcp_exact(d, PC)?;
    if cons.is_some() != exact.is_some() {
        e.fail("constructor-vs-exact");
    }
    Ok(e)
}

fn thm7i(d: &ColoredDigraph) -> Result<Eval, LabError> {
    if bipartite_partition(d).is_none() {
        return Ok(Eval::skip("not-bipartite-tournament"));
    }
    if !k_cycles_properly_colored(d, &[4, 6])?.holds {
        return Ok(Eval::skip("precondition-failed"));
    }
    let mut e = Eval::applicable();
    match solve_pcp_exact(d, PC)? {
        Some(_) => e.tally("kernel-found"),
        None => e.fail("no-kernel"),
    }
    let out = solve_pcp(d, PC)?;
    e.tally(format!("route:{}", out.route.name()));
    if out.certificate.is_none() {
        e.fail("dispatcher-found-none");
    }
    Ok(e)
}

fn thm7ii(d: &ColoredDigraph) -> Result<Eval, LabError> {
    let Some(p) = bipartite_partition(d) else {
        return Ok(Eval::skip("not-bipartite-tournament"));
    };
    if p.x.len().min(p.y.len()) > 2 {
        return Ok(Eval::skip("precondition-failed"));
    }
    let mut e = Eval::applicable();
    let (cert, trace) = pcp_kernel_bipartite_traced(d, &p)?;
    e.tally(format!("condition:{}", trace.condition));
    if !trace.branch.is_empty() {
        e.tally(format!("branch:{}", trace.branch));
    }
    let exact = solve_pcp_exact(d, PC)?;
    if cert.is_some() != exact.is_some() {
        e.fail("constructor-vs-exact");
    }
    if trace.fallback {
        e.fail(format!("fallback:{}", trace.branch));
    }
    match &cert {
        Some(c) if !c.recheck(d)? => e.fail("constructor-unverified"),
        Some(_) => e.tally("kernel-found"),
        None => e.tally("no-kernel"),
    }
    Ok(e)
}

fn lemma1(d: &ColoredDigraph) -> Result<Eval, LabError> {
    if bipartite_partition(d).is_none() {
        return Ok(Eval::skip("not-bipartite-tournament"));
    }
    let mut e = Eval::applicable();
    let c = reach::closure(d, PC)?;
    let mut checked = 0;
    for (u, v) in c.arcs() {
        let w = &c.witness(u, v).expect("witness").vertices;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if d.adjacent(w[i], w[j]) != ((j - i) % 2 == 1) {
                    e.fail("parity");
                    return Ok(e);
                }
            }
        }
        checked += 1;
    }
    e.tally(format!("witnesses:{}", if checked == 0 { "none" } else { "some" }));
    Ok(e)
}

fn lemma2(d: &ColoredDigraph) -> Result<Eval, LabError> {
    if bipartite_partition(d).is_none() {
        return Ok(Eval::skip("not-bipartite-tournament"));
    }
    if !k_cycles_properly_colored(d, &[4, 6])?.holds {
        return Ok(Eval::skip("precondition-failed"));
    }
    let mut e = Eval::applicable();
    let c = reach::closure(d, PC)?;
    for (u, v) in c.arcs() {
        if c.has_arc(v, u) {
            continue;
        }
        e.tally("one-way-pair");
        match reach::distance(d, u, v)? {
            Some(k) if k <= 2 => {}
            _ => {
                e.fail("distance");
                return Ok(e);
            }
        }
    }
    Ok(e)
}

fn obs1(d: &ColoredDigraph) -> Result<Eval, LabError> {
    if d.m() > 1 {
        return Ok(Eval::skip("not-monochromatic"));
    }
    let mut e = Eval::applicable();
    let k = find_kernel(&PlainDigraph::from_colored(d)).map(|k| k.members);
    let s = solve_pcp(d, PC)?.certificate.map(|c| c.members);
    if k != s {
        e.fail("members-differ");
    }
    e.tally(if k.is_some() { "kernel-found" } else { "no-kernel" });
    Ok(e)
}

fn reduction_iff(d: &ColoredDigraph, m: u32) -> Result<Eval, LabError> {
    if d.n() == 0 {
        return Ok(Eval::skip("empty"));
    }
    let mut e = Eval::applicable();
    let h = PlainDigraph::from_colored(d);
    let has = find_kernel(&h).is_some();
    let pc = reduction_kernel_to_pathkernel(&h, m, PC)?;
    let rb = reduction_kernel_to_pathkernel(&h, m, PathMode::Rainbow)?;
    let pc_has = solve_pcp_exact(&pc.d_prime, PC)?.is_some();
    let rb_has = solve_pcp_exact(&rb.d_prime, PathMode::Rainbow)?.is_some();
    if has != pc_has || has != rb_has {
        e.fail("iff");
    }
    e.tally(if has { "kernel" } else { "no-kernel" });
    Ok(e)
}
