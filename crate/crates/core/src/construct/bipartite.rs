//! Bipartite tournaments.
//!
//! Dispatch:
//! - one color: `X` or `Y` is tried;
//! - a side of size 1: the digraph is acyclic;
//! - a side of size 2: sources on the large side are stripped and
//!   contractible vertices removed, then a case analysis on the two small-side
//!   vertices names a candidate set;
//! - every 4- and 6-cycle properly colored: existence is guaranteed and the
//!   exact solver finds the kernel.
//!
//! Every candidate is verified. A failed candidate is logged and replaced by
//! the exact solver's answer.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::reduce::{contract_alive, lift_steps, Reduction};
use super::{lift_closure_kernel, solve_pcp_exact, verify_pcp_kernel, ConstructError, PcpKernelCertificate, Route};
use crate::graph::cycles::out_lists;
use crate::graph::structure::is_acyclic;
use crate::graph::{BipartitePartition, Color, ColoredDigraph, Vertex};
use crate::kernel::kernel_of_acyclic;
use crate::reach::{self, PathMode, DEFAULT_BUDGET};

const PC: PathMode = PathMode::ProperlyColored;

/// Intermediate values of [`pcp_kernel_bipartite_traced`]. Vertex ids are
/// those of the input digraph; colors are input colors.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct BipartiteTrace {
    /// `monochromatic`, `small-side-1`, `small-side-2` or `short-cycles-pc`.
    pub condition: String,
    pub steps: Vec<Reduction>,
    /// The two small-side vertices in the roles the case analysis gave them.
    pub x: Vec<Vertex>,
    /// Name of the branch that produced the candidate, e.g. `case1:final`.
    pub branch: String,
    /// Named vertex sets: `Y0`, `Y1`, `Y2`, `S'`, `R`, `Q`, `Q'`, `Y'`,
    /// `Y''`, `Y*`, `Y**`, and the color classes `Y'a`, `Y''a`, `Y'b`,
    /// `Y''b`, `Y'g`, `Y''g`, `Y'ab`, `Y'ag`, `Y''ba`, `Y''bg`.
    pub sets: BTreeMap<String, Vec<Vertex>>,
    pub alpha: Option<Color>,
    pub beta: Option<Color>,
    /// Candidate before lifting back through `steps`.
    pub candidate: Vec<Vertex>,
    /// Candidate is a kernel of the reduced digraph.
    pub reduced_verified: Option<bool>,
    /// The constructed set failed and the exact solver answered instead.
    pub fallback: bool,
    pub log: Vec<String>,
}

/// [`pcp_kernel_bipartite_traced`] without the trace.
pub fn pcp_kernel_bipartite(
    d: &ColoredDigraph,
    partition: &BipartitePartition,
) -> Result<Option<PcpKernelCertificate>, ConstructError> {
    pcp_kernel_bipartite_traced(d, partition).map(|(c, _)| c)
}

pub fn pcp_kernel_bipartite_traced(
    d: &ColoredDigraph,
    partition: &BipartitePartition,
) -> Result<(Option<PcpKernelCertificate>, BipartiteTrace), ConstructError> {
    if !partition.is_bipartite_tournament_of(d) {
        return Err(ConstructError::NotBipartiteTournament);
    }
    let mut trace = BipartiteTrace::default();

    if d.m() <= 1 {
        trace.condition = "monochromatic".into();
        for side in [&partition.x, &partition.y] {
            let s: BTreeSet<Vertex> = side.iter().copied().collect();
            if let Some(cert) = verify_pcp_kernel(d, &s, PC)? {
                trace.candidate = side.clone();
                return Ok((Some(finish(cert, &trace)), trace));
            }
        }
        trace.fallback = true;
        trace.log.push("neither side is a kernel; using exact solver".into());
        let cert = solve_pcp_exact(d, PC)?;
        return Ok((cert.map(|c| finish(c, &trace)), trace));
    }

    let p = if partition.x.len() <= partition.y.len() { partition.clone() } else { partition.swapped() };
    match p.x.len() {
        1 => {
            trace.condition = "small-side-1".into();
            let c = reach::closure(d, PC)?;
            let k = kernel_of_acyclic(&c.to_plain())?;
            trace.candidate = k.members.iter().copied().collect();
            let cert = lift_closure_kernel(&c, &k, Route::Bipartite);
            Ok((Some(finish(cert, &trace)), trace))
        }
        2 => small_side_two(d, &p, trace),
        _ => {
            if crate::lab::k_cycles_properly_colored(d, &[4, 6])?.holds {
                trace.condition = "short-cycles-pc".into();
                let cert = solve_pcp_exact(d, PC)?;
                if cert.is_none() {
                    trace.log.push("short-cycle condition holds but no kernel exists".into());
                }
                Ok((cert.map(|c| finish(c, &trace)), trace))
            } else {
                Err(ConstructError::NoApplicableCondition)
            }
        }
    }
}

fn finish(mut cert: PcpKernelCertificate, trace: &BipartiteTrace) -> PcpKernelCertificate {
    cert.route = Route::Bipartite;
    cert.log = trace.log.clone();
    cert
}

fn small_side_two(
    d: &ColoredDigraph,
    p: &BipartitePartition,
    mut trace: BipartiteTrace,
) -> Result<(Option<PcpKernelCertificate>, BipartiteTrace), ConstructError> {
    trace.condition = "small-side-2".into();
    let n = d.n();
    let mut alive = vec![true; n];
    loop {
        let mut changed = false;
        while let Some(&y) = p
            .y
            .iter()
            .find(|&&y| alive[y] && d.in_arcs(y).iter().all(|&(w, _)| !alive[w]))
        {
            alive[y] = false;
            trace.steps.push(Reduction::StripSource { vertex: y });
            trace.log.push(format!("stripped source {}", d.label(y)));
            changed = true;
        }
        for step in contract_alive(d, &mut alive) {
            if let Reduction::Contract { removed, twin } = step {
                trace.log.push(format!("contracted {} into {}", d.label(removed), d.label(twin)));
            }
            trace.steps.push(step);
            changed = true;
        }
        if !changed {
            break;
        }
    }

    let keep: Vec<Vertex> = (0..n).filter(|&v| alive[v]).collect();
    let r = d.induced(&keep);
    let mut index = vec![usize::MAX; n];
    for (i, &v) in keep.iter().enumerate() {
        index[v] = i;
    }
    let xs: Vec<Vertex> = p.x.iter().filter(|&&v| alive[v]).map(|&v| index[v]).collect();
    let ys: Vec<Vertex> = p.y.iter().filter(|&&v| alive[v]).map(|&v| index[v]).collect();

    let candidate: BTreeSet<Vertex> = if is_acyclic(&out_lists(&r)) {
        trace.branch = "reduced-acyclic".into();
        let c = reach::closure(&r, PC)?;
        kernel_of_acyclic(&c.to_plain())?.members
    } else {
        let mut a = Analysis { r: &r, sets: BTreeMap::new() };
        let (branch, set, roles, alpha, beta) = a.run(xs[0], xs[1], &ys)?;
        trace.branch = branch;
        trace.x = roles.iter().map(|&v| keep[v]).collect();
        trace.alpha = alpha.map(|(u, v)| d.color(keep[u], keep[v]).expect("arc"));
        trace.beta = beta.map(|(u, v)| d.color(keep[u], keep[v]).expect("arc"));
        trace.sets = a
            .sets
            .into_iter()
            .map(|(k, v)| (k, v.into_iter().map(|x| keep[x]).collect()))
            .collect();
        set
    };
    trace.reduced_verified = Some(verify_pcp_kernel(&r, &candidate, PC)?.is_some());
    trace.candidate = candidate.iter().map(|&v| keep[v]).collect();

    let lifted = lift_steps(d, &trace.steps, alive, trace.candidate.iter().copied().collect())?;
    if let Some(cert) = verify_pcp_kernel(d, &lifted, PC)? {
        return Ok((Some(finish(cert, &trace)), trace));
    }
    trace.fallback = true;
    trace.log.push(format!("branch {} failed verification; using exact solver", trace.branch));
    let cert = solve_pcp_exact(d, PC)?;
    Ok((cert.map(|c| finish(c, &trace)), trace))
}

type Outcome = (String, BTreeSet<Vertex>, Vec<Vertex>, Option<(Vertex, Vertex)>, Option<(Vertex, Vertex)>);

/// Case analysis on a reduced bipartite tournament with small side `{x1, x2}`,
/// no source on the large side and no contractible pair. Colors α and β are
/// reported as an arc carrying them.
struct Analysis<'a> {
    r: &'a ColoredDigraph,
    sets: BTreeMap<String, Vec<Vertex>>,
}

fn union(parts: &[&[Vertex]]) -> BTreeSet<Vertex> {
    parts.iter().flat_map(|p| p.iter().copied()).collect()
}

impl Analysis<'_> {
    fn record(&mut self, name: &str, v: &[Vertex]) {
        self.sets.insert(name.to_string(), v.to_vec());
    }

    // Members `y` of `set` whose arc colors on `s -> y -> t` satisfy `f`.
    fn cls(&self, set: &[Vertex], s: Vertex, t: Vertex, f: &dyn Fn(Color, Color) -> bool) -> Vec<Vertex> {
        set.iter().copied().filter(|&y| f(self.c(s, y), self.c(y, t))).collect()
    }

    fn c(&self, u: Vertex, v: Vertex) -> Color {
        self.r.color(u, v).expect("arc present")
    }

    fn reaches(&self, u: Vertex, set: &[Vertex]) -> Result<bool, ConstructError> {
        let mut t = vec![false; self.r.n()];
        for &s in set {
            t[s] = s != u;
        }
        if !t.iter().any(|&b| b) {
            return Ok(false);
        }
        Ok(reach::pc_path_to_set(self.r, u, &t, PC, None, DEFAULT_BUDGET)?.is_some())
    }

    fn pc(&self, u: Vertex, v: Vertex) -> Result<bool, ConstructError> {
        self.reaches(u, &[v])
    }

    fn run(&mut self, x1: Vertex, x2: Vertex, ys: &[Vertex]) -> Result<Outcome, ConstructError> {
        let r = self.r;
        let y0: Vec<Vertex> = ys.iter().copied().filter(|&y| r.has_arc(x1, y) && r.has_arc(x2, y)).collect();
        self.record("Y0", &y0);
        if y0.is_empty() {
            self.case_two(x1, x2, ys)
        } else {
            self.case_one(x1, x2, ys, y0)
        }
    }

    fn case_one(&mut self, x1: Vertex, x2: Vertex, ys: &[Vertex], y0: Vec<Vertex>) -> Result<Outcome, ConstructError> {
        let r = self.r;
        let mut y1 = Vec::new();
        let mut y2 = Vec::new();
        for &y in ys.iter().filter(|y| !y0.contains(y)) {
            if self.reaches(y, &y0)? {
                y1.push(y);
            } else {
                y2.push(y);
            }
        }
        self.record("Y1", &y1);
        self.record("Y2", &y2);
        let roles = vec![x1, x2];
        let done = |b: &str, s: BTreeSet<Vertex>, roles: &Vec<Vertex>| -> Result<Outcome, ConstructError> {
            Ok((format!("case1:{b}"), s, roles.clone(), None, None))
        };
        if y2.is_empty() {
            return done("Y2-empty", union(&[&y0]), &roles);
        }

        let mut s1: Vec<Vertex> = Vec::new();
        for &y in &y2 {
            let mut free = true;
            for &s in &s1 {
                if self.pc(y, s)? || self.pc(s, y)? {
                    free = false;
                    break;
                }
            }
            if free {
                s1.push(y);
            }
        }
        self.record("S'", &s1);
        if s1.len() == y2.len() {
            return done("S'=Y2", union(&[&y0, &s1]), &roles);
        }

        let mut rset = Vec::new();
        for &y in y2.iter().filter(|y| !s1.contains(y)) {
            if !self.reaches(y, &s1)? {
                rset.push(y);
            }
        }
        self.record("R", &rset);
        if rset.is_empty() {
            return done("R-empty", union(&[&y0, &s1]), &roles);
        }
        let rv = rset[0];

        // A properly colored (s', x, r)-path of length two fixes the role of x.
        let mut via = None;
        'find: for &s in &s1 {
            for &x in &[x1, x2] {
                if r.has_arc(s, x) && r.has_arc(x, rv) && self.c(s, x) != self.c(x, rv) {
                    via = Some(x);
                    break 'find;
                }
            }
        }
        let Some(x) = via else {
            return done("long-path", union(&[&y0, &[rv]]), &roles);
        };
        let roles = if x == x1 { vec![x1, x2] } else { vec![x2, x1] };

        let q: Vec<Vertex> = y2.iter().copied().filter(|&y| y != rv && r.has_arc(x, y)).collect();
        self.record("Q", &q);
        if q.is_empty() {
            return done("Q-empty", union(&[&y0, &[rv]]), &roles);
        }
        for &qv in &q {
            if self.pc(rv, qv)? {
                return done("r-reaches-Q", union(&[&y0, &[qv]]), &roles);
            }
        }
        let mut q1 = Vec::new();
        for &qv in &q {
            if !self.pc(qv, rv)? {
                q1.push(qv);
            }
        }
        self.record("Q'", &q1);
        done("final", union(&[&y0, &q1, &[rv]]), &roles)
    }

    fn case_two(&mut self, x1: Vertex, x2: Vertex, ys: &[Vertex]) -> Result<Outcome, ConstructError> {
        let r = self.r;
        let split = |a: Vertex, b: Vertex| -> Vec<Vertex> {
            ys.iter().copied().filter(|&y| r.has_arc(a, y) && r.has_arc(y, b)).collect()
        };
        let (mut a, mut b) = (x1, x2);
        let mut yp = split(a, b);
        let mut ypp = split(b, a);
        let star = |a: Vertex, b: Vertex, set: &[Vertex]| -> Vec<Vertex> {
            set.iter().copied().filter(|&y| self.c(a, y) != self.c(y, b)).collect()
        };
        let mut ys1 = star(a, b, &yp);
        let mut ys2 = star(b, a, &ypp);
        let out = |branch: &str, s: BTreeSet<Vertex>, a: Vertex, b: Vertex, al, be| -> Outcome {
            (format!("case2:{branch}"), s, vec![a, b], al, be)
        };
        if ys1.is_empty() && ys2.is_empty() {
            self.record("Y'", &yp);
            self.record("Y''", &ypp);
            return Ok(out("no-pc-path-between-x", BTreeSet::from([a, b]), a, b, None, None));
        }
        if ys1.is_empty() {
            std::mem::swap(&mut a, &mut b);
            std::mem::swap(&mut yp, &mut ypp);
            std::mem::swap(&mut ys1, &mut ys2);
        }
        self.record("Y'", &yp);
        self.record("Y''", &ypp);
        self.record("Y*", &ys1);
        self.record("Y**", &ys2);

        let alphas: BTreeSet<Color> = ys1.iter().map(|&y| self.c(a, y)).collect();
        if alphas.len() > 1 {
            return Ok(out("two-alpha", BTreeSet::from([b]), a, b, None, None));
        }
        let alpha = *alphas.iter().next().expect("Y* nonempty");
        let alpha_arc = Some((a, ys1[0]));
        let ypa = self.cls(&yp, a, b, &|p, q| p == alpha && q == alpha);
        let yppa = self.cls(&ypp, b, a, &|p, q| p == alpha && q == alpha);
        self.record("Y'a", &ypa);
        self.record("Y''a", &yppa);

        if ys2.is_empty() {
            let (br, s) = if yppa.is_empty() {
                ("no-Y**:Y''a-empty", BTreeSet::from([b]))
            } else if ypa.is_empty() {
                ("no-Y**:Y'a-empty", union(&[&yppa]))
            } else {
                ("no-Y**", union(&[&ypa, &yppa]))
            };
            return Ok(out(br, s, a, b, alpha_arc, None));
        }

        let betas: BTreeSet<Color> = ys2.iter().map(|&y| self.c(b, y)).collect();
        if betas.len() > 1 {
            return Ok(out("two-beta", BTreeSet::from([a]), a, b, alpha_arc, None));
        }
        let beta = *betas.iter().next().expect("Y** nonempty");
        let beta_arc = Some((b, ys2[0]));
        let other = |c: Color| c != alpha && c != beta;

        let ypb = self.cls(&yp, a, b, &|p, q| p == beta && q == beta);
        let yppb = self.cls(&ypp, b, a, &|p, q| p == beta && q == beta);
        let ypg = self.cls(&yp, a, b, &|p, q| p == q && other(p));
        let yppg = self.cls(&ypp, b, a, &|p, q| p == q && other(p));
        let ypab = self.cls(&yp, a, b, &|p, q| p == alpha && q == beta && alpha != beta);
        let ypag = self.cls(&yp, a, b, &|p, q| p == alpha && other(q));
        let yppba = self.cls(&ypp, b, a, &|p, q| p == beta && q == alpha && alpha != beta);
        let yppbg = self.cls(&ypp, b, a, &|p, q| p == beta && other(q));
        for (k, v) in [
            ("Y'b", &ypb),
            ("Y''b", &yppb),
            ("Y'g", &ypg),
            ("Y''g", &yppg),
            ("Y'ab", &ypab),
            ("Y'ag", &ypag),
            ("Y''ba", &yppba),
            ("Y''bg", &yppbg),
        ] {
            self.record(k, v);
        }

        let (br, s) = if alpha == beta {
            if yppa.is_empty() {
                ("a=b:Y''a-empty", BTreeSet::from([b]))
            } else {
                ("a=b", union(&[&ypa, &yppa]))
            }
        } else {
            match (yppa.is_empty(), yppba.is_empty()) {
                (true, true) => ("a!=b:Y''a,Y''ba-empty", BTreeSet::from([b])),
                (false, false) => ("a!=b:Y''a,Y''ba", union(&[&yppa, &yppba])),
                (false, true) if ypa.is_empty() => ("a!=b:Y''a", union(&[&yppa])),
                (false, true) => ("a!=b:Y'a,Y''a", union(&[&ypa, &yppa])),
                (true, false) => match (ypb.is_empty(), ypab.is_empty()) {
                    (true, true) => ("a!=b:Y''ba", union(&[&yppba])),
                    (true, false) => ("a!=b:Y'ab,Y''ba", union(&[&ypab, &yppba])),
                    (false, false) => ("a!=b:Y'b,Y'ab", union(&[&ypb, &ypab])),
                    (false, true) if yppb.is_empty() => ("a!=b:Y'b", union(&[&ypb])),
                    (false, true) => ("a!=b:Y'b,Y''b", union(&[&ypb, &yppb])),
                },
            }
        };
        Ok(out(br, s, a, b, alpha_arc, beta_arc))
    }
}
