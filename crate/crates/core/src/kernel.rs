//! Kernels of plain (uncolored) digraphs.
//!
//! A kernel is an independent set `S` such that every vertex outside `S` has
//! an arc into `S`. Deciding existence is NP-complete, so [`find_kernel`] is
//! an exact branch-and-bound search.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::ops::ControlFlow;

use serde::Serialize;
use thiserror::Error;

use crate::graph::cycles::{for_each_cycle, CycleError, CYCLE_BUDGET};
use crate::graph::structure::{condensation, is_acyclic, topological_order};
use crate::graph::{ColoredDigraph, Vertex};

/// Largest order accepted by [`all_kernels`].
pub const ALL_KERNELS_MAX_N: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("loop arc at vertex {0}")]
    LoopArc(Vertex),
    #[error("duplicate arc {0} -> {1}")]
    DuplicateArc(Vertex, Vertex),
    #[error("vertex {0} out of range")]
    VertexOutOfRange(Vertex),
    #[error("kernel enumeration refuses n = {0} (limit {ALL_KERNELS_MAX_N})")]
    TooLarge(usize),
    #[error("digraph has a cycle")]
    NotAcyclic,
    #[error(transparent)]
    Cycles(#[from] CycleError),
}

/// Simple loopless digraph without colors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlainDigraph {
    out: Vec<Vec<Vertex>>,
    inc: Vec<Vec<Vertex>>,
    arcs: BTreeSet<(Vertex, Vertex)>,
}

impl PlainDigraph {
    pub fn new(n: usize, arcs: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self, KernelError> {
        let mut set = BTreeSet::new();
        for (u, v) in arcs {
            if u >= n {
                return Err(KernelError::VertexOutOfRange(u));
            }
            if v >= n {
                return Err(KernelError::VertexOutOfRange(v));
            }
            if u == v {
                return Err(KernelError::LoopArc(u));
            }
            if !set.insert((u, v)) {
                return Err(KernelError::DuplicateArc(u, v));
            }
        }
        let mut out = vec![Vec::new(); n];
        let mut inc = vec![Vec::new(); n];
        for &(u, v) in &set {
            out[u].push(v);
            inc[v].push(u);
        }
        for l in &mut inc {
            l.sort_unstable();
        }
        Ok(PlainDigraph { out, inc, arcs: set })
    }

    /// Forgets the colors of `d`.
    pub fn from_colored(d: &ColoredDigraph) -> Self {
        Self::new(d.n(), d.arcs().map(|a| (a.tail, a.head))).expect("valid digraph")
    }

    pub fn n(&self) -> usize {
        self.out.len()
    }

    pub fn has_arc(&self, u: Vertex, v: Vertex) -> bool {
        self.arcs.contains(&(u, v))
    }

    pub fn out_neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.out[v]
    }

    pub fn in_neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.inc[v]
    }

    pub fn out_lists(&self) -> &[Vec<Vertex>] {
        &self.out
    }

    pub fn arcs(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.arcs.iter().copied()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    /// Every arc colored `1`, vertices labelled `v<i>`.
    pub fn to_colored(&self) -> ColoredDigraph {
        ColoredDigraph::validate(self.n(), None, self.arcs().map(|(u, v)| (u, v, 1)))
            .expect("valid digraph")
    }
}

/// A verified kernel: members plus one absorbing arc per outside vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KernelSet {
    pub members: BTreeSet<Vertex>,
    /// Outside vertex -> the member it has an arc to (least such member).
    pub absorption: BTreeMap<Vertex, Vertex>,
}

impl KernelSet {
    /// Certifies `members` as a kernel of `h`, or `None` if it is not one.
    pub fn certify(h: &PlainDigraph, members: BTreeSet<Vertex>) -> Option<Self> {
        let n = h.n();
        let mut inside = vec![false; n];
        for &v in &members {
            if v >= n {
                return None;
            }
            inside[v] = true;
        }
        for &v in &members {
            if h.out[v].iter().any(|&w| inside[w]) {
                return None;
            }
        }
        let mut absorption = BTreeMap::new();
        for v in (0..n).filter(|&v| !inside[v]) {
            let s = *h.out[v].iter().find(|&&w| inside[w])?;
            absorption.insert(v, s);
        }
        Some(KernelSet { members, absorption })
    }

    /// `K: {..}` followed by one `abs <v> -> <s>` line per outside vertex.
    pub fn render(&self, label: impl Fn(Vertex) -> String) -> String {
        let names: Vec<String> = self.members.iter().map(|&v| label(v)).collect();
        let mut s = format!("K: {{{}}}\n", names.join(","));
        for (&v, &t) in &self.absorption {
            let _ = writeln!(s, "abs {} -> {}", label(v), label(t));
        }
        s
    }
}

/// Whether `s` is independent and absorbing in `h`.
pub fn is_kernel(h: &PlainDigraph, s: &BTreeSet<Vertex>) -> Result<bool, KernelError> {
    if let Some(&v) = s.iter().find(|&&v| v >= h.n()) {
        return Err(KernelError::VertexOutOfRange(v));
    }
    Ok(KernelSet::certify(h, s.clone()).is_some())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Slot {
    Open,
    In,
    Out,
}

/// Include/exclude search with unit propagation:
/// - an included vertex forces all its neighbors out;
/// - an excluded vertex whose out-neighbors are all excluded is a dead end;
/// - an excluded vertex with one open out-neighbor and none included forces it in;
/// - an open vertex whose out-neighbors are all excluded is forced in.
struct Brancher<'a> {
    h: &'a PlainDigraph,
    order: Vec<Vertex>,
}

impl Brancher<'_> {
    fn include(&self, slots: &mut [Slot], v: Vertex) -> bool {
        match slots[v] {
            Slot::In => return true,
            Slot::Out => return false,
            Slot::Open => {}
        }
        slots[v] = Slot::In;
        for &w in self.h.out[v].iter().chain(&self.h.inc[v]) {
            match slots[w] {
                Slot::In => return false,
                Slot::Open => slots[w] = Slot::Out,
                Slot::Out => {}
            }
        }
        true
    }

    fn propagate(&self, slots: &mut [Slot]) -> bool {
        loop {
            let mut changed = false;
            for v in 0..slots.len() {
                if slots[v] == Slot::In {
                    continue;
                }
                let mut open = None;
                let mut open_count = 0;
                let mut absorbed = false;
                for &w in &self.h.out[v] {
                    match slots[w] {
                        Slot::In => {
                            absorbed = true;
                            break;
                        }
                        Slot::Open => {
                            open_count += 1;
                            open = Some(w);
                        }
                        Slot::Out => {}
                    }
                }
                if absorbed {
                    continue;
                }
                match (slots[v], open_count) {
                    (Slot::Out, 0) => return false,
                    (Slot::Out, 1) => {
                        if !self.include(slots, open.expect("one open")) {
                            return false;
                        }
                        changed = true;
                    }
                    (Slot::Open, 0) => {
                        if !self.include(slots, v) {
                            return false;
                        }
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn search<F>(&self, mut slots: Vec<Slot>, found: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[Slot]) -> ControlFlow<()>,
    {
        if !self.propagate(&mut slots) {
            return ControlFlow::Continue(());
        }
        let Some(&v) = self.order.iter().find(|&&v| slots[v] == Slot::Open) else {
            return found(&slots);
        };
        let mut with = slots.clone();
        if self.include(&mut with, v) {
            self.search(with, found)?;
        }
        slots[v] = Slot::Out;
        self.search(slots, found)
    }
}

/// Vertices by descending out-degree, ties by index.
pub fn default_branch_order(h: &PlainDigraph) -> Vec<Vertex> {
    let mut order: Vec<Vertex> = (0..h.n()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(h.out[v].len()), v));
    order
}

/// Some kernel of `h`, or `None` if it has none. Deterministic: the first
/// kernel met under [`default_branch_order`], trying inclusion first.
pub fn find_kernel(h: &PlainDigraph) -> Option<KernelSet> {
    find_kernel_with_order(h, default_branch_order(h))
}

/// [`find_kernel`] under an explicit branching order (a permutation of the vertices).
pub fn find_kernel_with_order(h: &PlainDigraph, order: Vec<Vertex>) -> Option<KernelSet> {
    let b = Brancher { h, order };
    let mut result = None;
    let _ = b.search(vec![Slot::Open; h.n()], &mut |slots| {
        result = Some(members_of(slots));
        ControlFlow::Break(())
    });
    result.map(|m| KernelSet::certify(h, m).expect("search yields kernels"))
}

/// Every kernel of `h`, sorted by member list.
pub fn all_kernels(h: &PlainDigraph) -> Result<Vec<KernelSet>, KernelError> {
    if h.n() > ALL_KERNELS_MAX_N {
        return Err(KernelError::TooLarge(h.n()));
    }
    let b = Brancher { h, order: default_branch_order(h) };
    let mut all: Vec<BTreeSet<Vertex>> = Vec::new();
    let _ = b.search(vec![Slot::Open; h.n()], &mut |slots| {
        all.push(members_of(slots));
        ControlFlow::Continue(())
    });
    all.sort();
    Ok(all.into_iter().map(|m| KernelSet::certify(h, m).expect("search yields kernels")).collect())
}

fn members_of(slots: &[Slot]) -> BTreeSet<Vertex> {
    (0..slots.len()).filter(|&v| slots[v] == Slot::In).collect()
}

/// The unique kernel of an acyclic digraph: repeatedly take every current
/// sink, then delete the sinks and their in-neighbors.
pub fn kernel_of_acyclic(h: &PlainDigraph) -> Result<KernelSet, KernelError> {
    if !is_acyclic(&h.out) {
        return Err(KernelError::NotAcyclic);
    }
    let n = h.n();
    let mut alive = vec![true; n];
    let mut members = BTreeSet::new();
    let mut remaining = n;
    while remaining > 0 {
        let sinks: Vec<Vertex> = (0..n)
            .filter(|&v| alive[v] && h.out[v].iter().all(|&w| !alive[w]))
            .collect();
        for &s in &sinks {
            members.insert(s);
        }
        for &s in &sinks {
            if alive[s] {
                alive[s] = false;
                remaining -= 1;
            }
            for &p in &h.inc[s] {
                if alive[p] {
                    alive[p] = false;
                    remaining -= 1;
                }
            }
        }
    }
    Ok(KernelSet::certify(h, members).expect("acyclic sink peeling yields a kernel"))
}

/// Structural facts behind the classical kernel-existence conditions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Preconditions {
    pub has_odd_cycle: bool,
    pub has_even_cycle: bool,
    pub every_cycle_has_symmetrical_arc: bool,
    pub every_odd_cycle_has_crossing_consecutive: bool,
    pub every_odd_cycle_has_two_chords_adjacent_heads: bool,
}

/// Computes [`Preconditions`].
///
/// Odd cycles: a strong digraph has an odd cycle iff its underlying graph is
/// not bipartite. Symmetrical arcs: every cycle has one iff the arcs whose
/// reverse is absent form an acyclic digraph. The even-cycle and odd-cycle
/// chord conditions enumerate cycles under [`CYCLE_BUDGET`].
pub fn precondition_checks(h: &PlainDigraph) -> Result<Preconditions, KernelError> {
    let has_odd_cycle = has_odd_cycle(h);

    let asym: Vec<Vec<Vertex>> = (0..h.n())
        .map(|u| h.out[u].iter().copied().filter(|&v| !h.has_arc(v, u)).collect())
        .collect();
    let every_cycle_has_symmetrical_arc = is_acyclic(&asym);

    let mut has_even_cycle = false;
    let mut crossing = true;
    let mut chords = true;
    for_each_cycle(&h.out, None, CYCLE_BUDGET, |c| {
        if c.len() % 2 == 0 {
            has_even_cycle = true;
        } else {
            crossing &= has_crossing_consecutive(h, c);
            chords &= has_two_chords_adjacent_heads(h, c);
        }
        ControlFlow::Continue(())
    })?;

    Ok(Preconditions {
        has_odd_cycle,
        has_even_cycle,
        every_cycle_has_symmetrical_arc,
        every_odd_cycle_has_crossing_consecutive: crossing,
        every_odd_cycle_has_two_chords_adjacent_heads: chords,
    })
}

fn has_odd_cycle(h: &PlainDigraph) -> bool {
    let n = h.n();
    let mut side = vec![u8::MAX; n];
    for comp in condensation(&h.out) {
        if comp.len() < 2 {
            continue;
        }
        let mut inside = vec![false; n];
        for &v in &comp {
            inside[v] = true;
        }
        side[comp[0]] = 0;
        let mut stack = vec![comp[0]];
        while let Some(v) = stack.pop() {
            for &w in h.out[v].iter().chain(&h.inc[v]) {
                if !inside[w] {
                    continue;
                }
                if side[w] == u8::MAX {
                    side[w] = 1 - side[v];
                    stack.push(w);
                } else if side[w] == side[v] {
                    return true;
                }
            }
        }
    }
    false
}

/// For the cycle `(u0 .. u(k-1))`: arcs `u_i u_{i+2}` and `u_{i+1} u_{i+3}`
/// both present for some `i` (indices mod k).
pub fn has_crossing_consecutive(h: &PlainDigraph, cycle: &[Vertex]) -> bool {
    let k = cycle.len();
    (0..k).any(|i| {
        h.has_arc(cycle[i], cycle[(i + 2) % k]) && h.has_arc(cycle[(i + 1) % k], cycle[(i + 3) % k])
    })
}

/// Two chords (arcs between cycle vertices that are not cycle arcs) whose
/// heads are consecutive on the cycle.
pub fn has_two_chords_adjacent_heads(h: &PlainDigraph, cycle: &[Vertex]) -> bool {
    let k = cycle.len();
    let mut pos = BTreeMap::new();
    for (i, &v) in cycle.iter().enumerate() {
        pos.insert(v, i);
    }
    // head position -> has an incoming chord
    let mut chord_head = vec![false; k];
    for (i, &u) in cycle.iter().enumerate() {
        for &w in &h.out[u] {
            if let Some(&j) = pos.get(&w) {
                if j != (i + 1) % k {
                    chord_head[j] = true;
                }
            }
        }
    }
    (0..k).any(|j| chord_head[j] && chord_head[(j + 1) % k])
}

/// Topological order of an acyclic plain digraph.
pub fn acyclic_order(h: &PlainDigraph) -> Option<Vec<Vertex>> {
    topological_order(&h.out)
}
