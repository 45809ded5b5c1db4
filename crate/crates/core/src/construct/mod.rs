//! PCP-kernels: certificates, verification, the closure-based exact solver,
//! class-specific constructors and the dispatcher that picks among them.
//!
//! A PCP-kernel of `D` is a vertex set `S` such that no member reaches another
//! member by a properly colored path, and every outside vertex reaches `S` by
//! one. The same notions exist for rainbow paths; every function taking a
//! [`PathMode`] works in both.

mod bipartite;
mod certificate;
mod classes;
mod reduce;

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::graph::cycles::CycleError;
use crate::graph::structure::condensation;
use crate::graph::{classify, cycles::out_lists, ColoredDigraph, Vertex};
use crate::kernel::{find_kernel, kernel_of_acyclic, KernelError, KernelSet, PlainDigraph};
use crate::reach::{self, ClosureDigraph, PathMode, PcPath, ReachError, DEFAULT_BUDGET};

pub use bipartite::{pcp_kernel_bipartite, pcp_kernel_bipartite_traced, BipartiteTrace};
pub use certificate::{check_claim, parse_certificate, CertificateClaim, CertificateParseError, ClaimVerdict};
pub use classes::{
    good_vertex_semicomplete, pcp_kernel_of_cycle, pcp_kernel_of_unicyclic, pcp_kernel_semicomplete,
};
pub use reduce::{contract_contractible, reduction_kernel_to_pathkernel, Contraction, Reduction, ReductionOutput};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("vertex {0} out of range")]
    VertexOutOfRange(Vertex),
    #[error("path search exceeded its budget of {0} steps")]
    BudgetExceeded(u64),
    #[error("digraph is not a single directed cycle")]
    NotACycle,
    #[error("digraph does not have exactly one cycle")]
    NotUnicyclic,
    #[error("the unique cycle is not properly colored")]
    CycleNotProperlyColored,
    #[error("digraph is not semi-complete")]
    NotSemiComplete,
    #[error("digraph is not a bipartite tournament with the given partition")]
    NotBipartiteTournament,
    #[error("neither the short-cycle condition nor the small-side condition holds")]
    NoApplicableCondition,
    #[error("the reduction needs a nonempty digraph")]
    EmptyDigraph,
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl From<ReachError> for ConstructError {
    fn from(e: ReachError) -> Self {
        match e {
            ReachError::BudgetExceeded(b) => ConstructError::BudgetExceeded(b),
            ReachError::VertexOutOfRange(v) => ConstructError::VertexOutOfRange(v),
            ReachError::SameVertex(v) => ConstructError::Internal(format!("path query from {v} to itself")),
        }
    }
}

impl From<CycleError> for ConstructError {
    fn from(e: CycleError) -> Self {
        match e {
            CycleError::BudgetExceeded(b) => ConstructError::BudgetExceeded(b),
        }
    }
}

impl From<KernelError> for ConstructError {
    fn from(e: KernelError) -> Self {
        match e {
            KernelError::Cycles(c) => c.into(),
            other => ConstructError::Internal(other.to_string()),
        }
    }
}

/// Which procedure produced a certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    /// Checked as given, no construction.
    Given,
    Acyclic,
    Monochromatic,
    ProperlyConnected,
    ProperColoring,
    Cycle,
    Unicyclic,
    SemiComplete,
    Bipartite,
    Exact,
}

impl Route {
    pub fn name(self) -> &'static str {
        match self {
            Route::Given => "given",
            Route::Acyclic => "acyclic",
            Route::Monochromatic => "monochromatic",
            Route::ProperlyConnected => "properly-connected",
            Route::ProperColoring => "proper-coloring",
            Route::Cycle => "cycle",
            Route::Unicyclic => "unicyclic",
            Route::SemiComplete => "semi-complete",
            Route::Bipartite => "bipartite",
            Route::Exact => "exact",
        }
    }
}

/// A verified PCP-kernel (or rainbow-path kernel) with its evidence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PcpKernelCertificate {
    pub mode: PathMode,
    pub members: BTreeSet<Vertex>,
    /// One path per outside vertex, ending in `members`.
    pub absorption: BTreeMap<Vertex, PcPath>,
    /// Every ordered member pair `(u, v)` for which a search found no path.
    pub independence: Vec<(Vertex, Vertex)>,
    pub route: Route,
    /// Notes from the constructor: fallbacks, anomalies, reductions applied.
    pub log: Vec<String>,
}

impl PcpKernelCertificate {
    pub fn member_labels(&self, d: &ColoredDigraph) -> Vec<String> {
        self.members.iter().map(|&v| d.label(v).to_string()).collect()
    }

    /// Re-checks every path and re-runs the independence searches.
    pub fn recheck(&self, d: &ColoredDigraph) -> Result<bool, ConstructError> {
        for (&v, p) in &self.absorption {
            if p.mode != self.mode
                || p.validate(d).is_err()
                || p.start() != v
                || !self.members.contains(&p.end())
            {
                return Ok(false);
            }
        }
        let outside = d.vertices().filter(|v| !self.members.contains(v)).count();
        if outside != self.absorption.len() {
            return Ok(false);
        }
        let pairs = self.members.len() * self.members.len().saturating_sub(1);
        if self.independence.len() != pairs {
            return Ok(false);
        }
        Ok(verify_pcp_kernel(d, &self.members, self.mode)?.is_some())
    }

    fn with_route(mut self, route: Route, log: Vec<String>) -> Self {
        self.route = route;
        self.log = log;
        self
    }
}

/// Checks both kernel conditions for `s` under `mode` path semantics.
pub fn verify_pcp_kernel(
    d: &ColoredDigraph,
    s: &BTreeSet<Vertex>,
    mode: PathMode,
) -> Result<Option<PcpKernelCertificate>, ConstructError> {
    if let Some(&v) = s.iter().find(|&&v| v >= d.n()) {
        return Err(ConstructError::VertexOutOfRange(v));
    }
    let n = d.n();
    let mut independence = Vec::new();
    for &u in s {
        let mut others = vec![false; n];
        for &w in s {
            others[w] = w != u;
        }
        if s.len() > 1
            && reach::pc_path_to_set(d, u, &others, mode, None, DEFAULT_BUDGET)?.is_some()
        {
            return Ok(None);
        }
        independence.extend(s.iter().filter(|&&w| w != u).map(|&w| (u, w)));
    }
    let mut target = vec![false; n];
    for &w in s {
        target[w] = true;
    }
    let mut absorption = BTreeMap::new();
    for v in d.vertices().filter(|v| !s.contains(v)) {
        if s.is_empty() {
            return Ok(None);
        }
        match reach::pc_path_to_set(d, v, &target, mode, None, DEFAULT_BUDGET)? {
            Some(p) => {
                absorption.insert(v, p);
            }
            None => return Ok(None),
        }
    }
    Ok(Some(PcpKernelCertificate {
        mode,
        members: s.clone(),
        absorption,
        independence,
        route: Route::Given,
        log: Vec::new(),
    }))
}

/// Turns a kernel of the closure into a certificate, using the closure's
/// stored witnesses.
fn lift_closure_kernel(c: &ClosureDigraph, k: &KernelSet, route: Route) -> PcpKernelCertificate {
    let absorption = k
        .absorption
        .iter()
        .map(|(&v, &s)| (v, c.witness(v, s).expect("closure arc has a witness").clone()))
        .collect();
    let independence = k
        .members
        .iter()
        .flat_map(|&u| k.members.iter().filter(move |&&w| w != u).map(move |&w| (u, w)))
        .collect();
    PcpKernelCertificate {
        mode: c.mode(),
        members: k.members.clone(),
        absorption,
        independence,
        route,
        log: Vec::new(),
    }
}

/// Exact decision: builds the closure, searches it for a kernel, and lifts
/// the result. `None` iff the digraph has no kernel by `mode` paths.
pub fn solve_pcp_exact(
    d: &ColoredDigraph,
    mode: PathMode,
) -> Result<Option<PcpKernelCertificate>, ConstructError> {
    let c = reach::closure(d, mode)?;
    Ok(find_kernel(&c.to_plain()).map(|k| lift_closure_kernel(&c, &k, Route::Exact)))
}

/// Result of [`solve_pcp`]: the certificate, if any, and the route that
/// decided it. The log survives a negative answer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolveOutcome {
    pub certificate: Option<PcpKernelCertificate>,
    pub route: Route,
    pub log: Vec<String>,
}

impl SolveOutcome {
    fn found(mut cert: PcpKernelCertificate, route: Route, mut log: Vec<String>) -> Self {
        log.append(&mut cert.log);
        let cert = cert.with_route(route, log.clone());
        SolveOutcome { certificate: Some(cert), route, log }
    }

    fn none(route: Route, log: Vec<String>) -> Self {
        SolveOutcome { certificate: None, route, log }
    }
}

fn set_of(v: impl IntoIterator<Item = Vertex>) -> BTreeSet<Vertex> {
    v.into_iter().collect()
}

/// Dispatcher. Tries, in order: acyclic; monochromatic; properly connected;
/// proper arc-coloring; single cycle; unicyclic with a properly colored
/// cycle; semi-complete without a monochromatic triangle; bipartite
/// tournament. Anything else, or any fast path whose output fails
/// verification, goes to [`solve_pcp_exact`].
///
/// Class constructors apply to properly colored paths only; in rainbow mode
/// only the acyclic and monochromatic paths are taken.
pub fn solve_pcp(d: &ColoredDigraph, mode: PathMode) -> Result<SolveOutcome, ConstructError> {
    let mut log = Vec::new();
    let out = out_lists(d);
    let tags = classify(d);

    if tags.acyclic {
        let c = reach::closure(d, mode)?;
        let k = kernel_of_acyclic(&c.to_plain())?;
        return Ok(SolveOutcome::found(lift_closure_kernel(&c, &k, Route::Acyclic), Route::Acyclic, log));
    }
    if tags.monochromatic {
        // Every path with two arcs repeats its color, so paths are single arcs.
        return Ok(match find_kernel(&PlainDigraph::from_colored(d)) {
            Some(k) => match verify_pcp_kernel(d, &k.members, mode)? {
                Some(cert) => SolveOutcome::found(cert, Route::Monochromatic, log),
                None => return Err(ConstructError::Internal("monochromatic kernel failed".into())),
            },
            None => SolveOutcome::none(Route::Monochromatic, log),
        });
    }
    if mode == PathMode::Rainbow {
        return exact_outcome(d, mode, log);
    }

    if tags.properly_connected == Some(true) {
        if let Some(cert) = verify_pcp_kernel(d, &set_of([0]), mode)? {
            return Ok(SolveOutcome::found(cert, Route::ProperlyConnected, log));
        }
        log.push("properly-connected singleton failed verification".into());
    }

    if tags.properly_arc_colored {
        let comps = condensation(&out);
        let mut comp_of = vec![0; d.n()];
        for (i, c) in comps.iter().enumerate() {
            for &v in c {
                comp_of[v] = i;
            }
        }
        let mut reps = BTreeSet::new();
        for (i, c) in comps.iter().enumerate() {
            let terminal = c.iter().all(|&v| out[v].iter().all(|&w| comp_of[w] == i));
            if terminal {
                reps.insert(c[0]);
                if c.len() > 1 && comps.len() > 1 {
                    log.push(format!(
                        "note: terminal strong component {{{}}} has no sink; using its least vertex {}",
                        c.iter().map(|&v| d.label(v)).collect::<Vec<_>>().join(","),
                        d.label(c[0])
                    ));
                }
            }
        }
        if let Some(cert) = verify_pcp_kernel(d, &reps, mode)? {
            return Ok(SolveOutcome::found(cert, Route::ProperColoring, log));
        }
        log.push("proper-coloring construction failed verification; using exact solver".into());
        return exact_outcome(d, mode, log);
    }

    if tags.is_cycle {
        return Ok(match pcp_kernel_of_cycle(d)? {
            Some(cert) => SolveOutcome::found(cert, Route::Cycle, log),
            None => SolveOutcome::none(Route::Cycle, log),
        });
    }

    if tags.unicyclic {
        match pcp_kernel_of_unicyclic(d) {
            Ok(cert) => return Ok(SolveOutcome::found(cert, Route::Unicyclic, log)),
            Err(ConstructError::CycleNotProperlyColored) => {}
            Err(e) => return Err(e),
        }
    }

    if tags.semi_complete && crate::lab::has_monochromatic_triangle(d).is_none() {
        return Ok(match pcp_kernel_semicomplete(d)? {
            Some(cert) => SolveOutcome::found(cert, Route::SemiComplete, log),
            None => SolveOutcome::none(Route::SemiComplete, log),
        });
    }

    if let Some(p) = &tags.bipartite {
        match pcp_kernel_bipartite_traced(d, p) {
            Ok((cert, trace)) => {
                log.extend(trace.log.iter().cloned());
                return Ok(match cert {
                    Some(cert) => SolveOutcome::found(cert, Route::Bipartite, log),
                    None => SolveOutcome::none(Route::Bipartite, log),
                });
            }
            Err(ConstructError::NoApplicableCondition) => {
                log.push("bipartite tournament outside both conditions; using exact solver".into());
            }
            Err(e) => return Err(e),
        }
    }

    exact_outcome(d, mode, log)
}

fn exact_outcome(d: &ColoredDigraph, mode: PathMode, log: Vec<String>) -> Result<SolveOutcome, ConstructError> {
    Ok(match solve_pcp_exact(d, mode)? {
        Some(cert) => SolveOutcome::found(cert, Route::Exact, log),
        None => SolveOutcome::none(Route::Exact, log),
    })
}

/// Verifies `s` and tags it with `route`; on failure logs `what` and runs
/// the exact solver.
fn verified_or_exact(
    d: &ColoredDigraph,
    s: &BTreeSet<Vertex>,
    what: &str,
    route: Route,
    log: &mut Vec<String>,
) -> Result<Option<PcpKernelCertificate>, ConstructError> {
    if let Some(mut cert) = verify_pcp_kernel(d, s, PathMode::ProperlyColored)? {
        cert.route = route;
        return Ok(Some(cert));
    }
    let names: Vec<&str> = s.iter().map(|&v| d.label(v)).collect();
    log.push(format!("{what}: {{{}}} failed verification; falling back to exact solver", names.join(",")));
    solve_pcp_exact(d, PathMode::ProperlyColored)
}
