//! Properly colored and rainbow path search, and the closure digraph.
//!
//! Path search is exhaustive backtracking over vertex-simple paths. Before and
//! during the search, every extension is checked against a walk-level bound:
//! if no properly colored *walk* leads from the current state to the target,
//! no path does either. Rainbow paths are properly colored, so the same bound
//! prunes rainbow searches.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{ColoredDigraph, Color, RawArc, Vertex};
use crate::kernel::PlainDigraph;

/// Extension steps allowed per path query.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PathMode {
    /// Consecutive arcs differ in color.
    ProperlyColored,
    /// All arcs differ in color.
    Rainbow,
}

impl PathMode {
    pub fn name(self) -> &'static str {
        match self {
            PathMode::ProperlyColored => "pc",
            PathMode::Rainbow => "rainbow",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum ReachError {
    #[error("source and target are the same vertex {0}")]
    SameVertex(Vertex),
    #[error("vertex {0} out of range")]
    VertexOutOfRange(Vertex),
    #[error("path search exceeded its budget of {0} extension steps")]
    BudgetExceeded(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathDefect {
    #[error("a path needs at least one arc")]
    TooShort,
    #[error("{0} colors for {1} arcs")]
    ColorCount(usize, usize),
    #[error("vertex {0} repeats")]
    RepeatedVertex(Vertex),
    #[error("no arc {0} -> {1}")]
    MissingArc(Vertex, Vertex),
    #[error("arc {0} -> {1} has a different color")]
    WrongColor(Vertex, Vertex),
    #[error("arcs {0} and {1} share a color")]
    ColorClash(usize, usize),
}

/// A properly colored (or rainbow) path `v0 -> .. -> vk`, `k >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PcPath {
    pub vertices: Vec<Vertex>,
    pub colors: Vec<Color>,
    pub mode: PathMode,
}

impl PcPath {
    pub fn start(&self) -> Vertex {
        self.vertices[0]
    }

    pub fn end(&self) -> Vertex {
        *self.vertices.last().expect("nonempty path")
    }

    /// Number of arcs.
    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// Checks every invariant of the certificate against `d`.
    pub fn validate(&self, d: &ColoredDigraph) -> Result<(), PathDefect> {
        let k = self.colors.len();
        if self.vertices.len() < 2 {
            return Err(PathDefect::TooShort);
        }
        if self.vertices.len() != k + 1 {
            return Err(PathDefect::ColorCount(k, self.vertices.len().saturating_sub(1)));
        }
        let mut seen = vec![false; d.n()];
        for &v in &self.vertices {
            if v >= d.n() {
                return Err(PathDefect::MissingArc(v, v));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(PathDefect::RepeatedVertex(v));
            }
        }
        for (i, w) in self.vertices.windows(2).enumerate() {
            match d.color(w[0], w[1]) {
                None => return Err(PathDefect::MissingArc(w[0], w[1])),
                Some(c) if c != self.colors[i] => return Err(PathDefect::WrongColor(w[0], w[1])),
                _ => {}
            }
        }
        match self.mode {
            PathMode::ProperlyColored => {
                for i in 1..k {
                    if self.colors[i] == self.colors[i - 1] {
                        return Err(PathDefect::ColorClash(i - 1, i));
                    }
                }
            }
            PathMode::Rainbow => {
                for i in 0..k {
                    for j in i + 1..k {
                        if self.colors[i] == self.colors[j] {
                            return Err(PathDefect::ColorClash(i, j));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Vertex labels separated by spaces.
    pub fn display(&self, d: &ColoredDigraph) -> String {
        let labels: Vec<&str> = self.vertices.iter().map(|&v| d.label(v)).collect();
        labels.join(" ")
    }
}

/// Per-vertex summary of the colors on which a properly colored walk can
/// leave the vertex and still reach the target set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Exits {
    None,
    One(Color),
    Many,
}

impl Exits {
    fn add(&mut self, c: Color) -> bool {
        let next = match *self {
            Exits::None => Exits::One(c),
            Exits::One(x) if x == c => return false,
            Exits::One(_) => Exits::Many,
            Exits::Many => return false,
        };
        *self = next;
        true
    }

    // Some exit differs from the arrival color (`0` = no arrival arc).
    fn allows(self, arrived: Color) -> bool {
        match self {
            Exits::None => false,
            Exits::One(c) => c != arrived,
            Exits::Many => true,
        }
    }
}

/// Walk-level reachability of a target set, computed backwards.
struct WalkBound {
    target: Vec<bool>,
    exits: Vec<Exits>,
    // Color-blind distance to the target set.
    dist: Vec<usize>,
}

impl WalkBound {
    fn new(d: &ColoredDigraph, target: Vec<bool>) -> Self {
        let n = d.n();
        let mut exits = vec![Exits::None; n];
        let mut work: Vec<Vertex> = Vec::new();
        // Arriving at `x` by color `c`: can a PC walk continue to the target?
        let good = |exits: &[Exits], x: Vertex, c: Color| target[x] || exits[x].allows(c);
        for t in (0..n).filter(|&t| target[t]) {
            for &(p, c) in d.in_arcs(t) {
                if exits[p].add(c) {
                    work.push(p);
                }
            }
        }
        while let Some(w) = work.pop() {
            for &(p, c) in d.in_arcs(w) {
                if good(&exits, w, c) && exits[p].add(c) {
                    work.push(p);
                }
            }
        }

        let mut dist = vec![usize::MAX; n];
        let mut queue = std::collections::VecDeque::new();
        for t in 0..n {
            if target[t] {
                dist[t] = 0;
                queue.push_back(t);
            }
        }
        while let Some(w) = queue.pop_front() {
            for &(p, _) in d.in_arcs(w) {
                if dist[p] == usize::MAX {
                    dist[p] = dist[w] + 1;
                    queue.push_back(p);
                }
            }
        }
        WalkBound { target, exits, dist }
    }

    fn good(&self, x: Vertex, arrived: Color) -> bool {
        self.target[x] || self.exits[x].allows(arrived)
    }
}

struct Search<'a> {
    d: &'a ColoredDigraph,
    mode: PathMode,
    bound: &'a WalkBound,
    max_len: usize,
    budget: u64,
    steps: u64,
    visited: Vec<bool>,
    used: Vec<bool>,
    verts: Vec<Vertex>,
    colors: Vec<Color>,
}

impl Search<'_> {
    fn extend(&mut self, w: Vertex, arrived: Color) -> Result<bool, ReachError> {
        let d = self.d;
        for &(x, c) in d.out_arcs(w) {
            if self.visited[x] {
                continue;
            }
            match self.mode {
                PathMode::ProperlyColored if c == arrived => continue,
                PathMode::Rainbow if self.used[c as usize] => continue,
                _ => {}
            }
            if (self.colors.len() + 1).saturating_add(self.bound.dist[x]) > self.max_len {
                continue;
            }
            self.steps += 1;
            if self.steps > self.budget {
                return Err(ReachError::BudgetExceeded(self.budget));
            }
            if self.bound.target[x] {
                self.verts.push(x);
                self.colors.push(c);
                return Ok(true);
            }
            if !self.bound.good(x, c) {
                continue;
            }
            self.visited[x] = true;
            self.used[c as usize] = true;
            self.verts.push(x);
            self.colors.push(c);
            if self.extend(x, c)? {
                return Ok(true);
            }
            self.verts.pop();
            self.colors.pop();
            self.used[c as usize] = false;
            self.visited[x] = false;
        }
        Ok(false)
    }
}

fn check_vertex(d: &ColoredDigraph, v: Vertex) -> Result<(), ReachError> {
    if v >= d.n() {
        Err(ReachError::VertexOutOfRange(v))
    } else {
        Ok(())
    }
}

/// First path (in ascending-head backtracking order) from `u` to any vertex
/// flagged in `target`, of at most `max_len` arcs.
pub fn pc_path_to_set(
    d: &ColoredDigraph,
    u: Vertex,
    target: &[bool],
    mode: PathMode,
    max_len: Option<usize>,
    budget: u64,
) -> Result<Option<PcPath>, ReachError> {
    check_vertex(d, u)?;
    if target[u] {
        return Err(ReachError::SameVertex(u));
    }
    let bound = WalkBound::new(d, target.to_vec());
    search_with(d, u, &bound, mode, max_len, budget)
}

fn search_with(
    d: &ColoredDigraph,
    u: Vertex,
    bound: &WalkBound,
    mode: PathMode,
    max_len: Option<usize>,
    budget: u64,
) -> Result<Option<PcPath>, ReachError> {
    if !bound.good(u, 0) {
        return Ok(None);
    }
    let mut s = Search {
        d,
        mode,
        bound,
        max_len: max_len.unwrap_or(usize::MAX),
        budget,
        steps: 0,
        visited: vec![false; d.n()],
        used: vec![false; d.m() as usize + 1],
        verts: vec![u],
        colors: Vec::new(),
    };
    s.visited[u] = true;
    Ok(s.extend(u, 0)?.then_some(PcPath { vertices: s.verts, colors: s.colors, mode }))
}

/// A properly colored (or rainbow) `(u, v)`-path of at most `max_len` arcs,
/// if one exists, using [`DEFAULT_BUDGET`].
pub fn pc_path_exists(
    d: &ColoredDigraph,
    u: Vertex,
    v: Vertex,
    mode: PathMode,
    max_len: Option<usize>,
) -> Result<Option<PcPath>, ReachError> {
    pc_path_exists_with_budget(d, u, v, mode, max_len, DEFAULT_BUDGET)
}

pub fn pc_path_exists_with_budget(
    d: &ColoredDigraph,
    u: Vertex,
    v: Vertex,
    mode: PathMode,
    max_len: Option<usize>,
    budget: u64,
) -> Result<Option<PcPath>, ReachError> {
    check_vertex(d, u)?;
    check_vertex(d, v)?;
    if u == v {
        return Err(ReachError::SameVertex(u));
    }
    let mut target = vec![false; d.n()];
    target[v] = true;
    pc_path_to_set(d, u, &target, mode, max_len, budget)
}

/// Whether a properly colored walk leads from `u` to `v`. Forward search over
/// `(vertex, arrival color)` states.
pub fn pc_walk_reachable(d: &ColoredDigraph, u: Vertex, v: Vertex) -> Result<bool, ReachError> {
    check_vertex(d, u)?;
    check_vertex(d, v)?;
    if u == v {
        return Err(ReachError::SameVertex(u));
    }
    let stride = d.m() as usize + 1;
    let mut seen = vec![false; d.n() * stride];
    let mut queue = std::collections::VecDeque::from([(u, 0 as Color)]);
    seen[u * stride] = true;
    while let Some((w, arrived)) = queue.pop_front() {
        for &(x, c) in d.out_arcs(w) {
            if c == arrived {
                continue;
            }
            if x == v {
                return Ok(true);
            }
            let idx = x * stride + c as usize;
            if !seen[idx] {
                seen[idx] = true;
                queue.push_back((x, c));
            }
        }
    }
    Ok(false)
}

/// Length of a shortest color-blind `(u, v)`-path.
pub fn distance(d: &ColoredDigraph, u: Vertex, v: Vertex) -> Result<Option<usize>, ReachError> {
    check_vertex(d, u)?;
    check_vertex(d, v)?;
    if u == v {
        return Err(ReachError::SameVertex(u));
    }
    let out = crate::graph::cycles::out_lists(d);
    let dist = crate::graph::structure::bfs_distances(&out, u);
    Ok((dist[v] != usize::MAX).then_some(dist[v]))
}

/// The closure: an arc `(u, v)` for every properly colored (or rainbow)
/// `(u, v)`-path in the source digraph, each with one witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureDigraph {
    n: usize,
    mode: PathMode,
    witness: BTreeMap<(Vertex, Vertex), PcPath>,
}

// Below this order the per-source queries run sequentially.
const PARALLEL_MIN_N: usize = 12;

/// Builds the closure with [`DEFAULT_BUDGET`] per pair query.
pub fn closure(d: &ColoredDigraph, mode: PathMode) -> Result<ClosureDigraph, ReachError> {
    closure_with_budget(d, mode, DEFAULT_BUDGET)
}

type WitnessEntry = ((Vertex, Vertex), PcPath);

pub fn closure_with_budget(
    d: &ColoredDigraph,
    mode: PathMode,
    budget: u64,
) -> Result<ClosureDigraph, ReachError> {
    let n = d.n();
    // One backward bound per target, shared by all sources.
    let bounds: Vec<WalkBound> = (0..n)
        .map(|v| {
            let mut t = vec![false; n];
            t[v] = true;
            WalkBound::new(d, t)
        })
        .collect();
    let from = |u: Vertex| -> Result<Vec<WitnessEntry>, ReachError> {
        let mut found = Vec::new();
        for (v, bound) in bounds.iter().enumerate() {
            if v == u {
                continue;
            }
            if let Some(p) = search_with(d, u, bound, mode, None, budget)? {
                found.push(((u, v), p));
            }
        }
        Ok(found)
    };
    let rows: Vec<Result<_, ReachError>> = if n >= PARALLEL_MIN_N {
        (0..n).into_par_iter().map(from).collect()
    } else {
        (0..n).map(from).collect()
    };
    let mut witness = BTreeMap::new();
    for row in rows {
        witness.extend(row?);
    }
    Ok(ClosureDigraph { n, mode, witness })
}

impl ClosureDigraph {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> PathMode {
        self.mode
    }

    pub fn has_arc(&self, u: Vertex, v: Vertex) -> bool {
        self.witness.contains_key(&(u, v))
    }

    pub fn witness(&self, u: Vertex, v: Vertex) -> Option<&PcPath> {
        self.witness.get(&(u, v))
    }

    /// Arcs in lexicographic order.
    pub fn arcs(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.witness.keys().copied()
    }

    pub fn arc_count(&self) -> usize {
        self.witness.len()
    }

    pub fn to_plain(&self) -> PlainDigraph {
        PlainDigraph::new(self.n, self.arcs()).expect("closure is simple and loopless")
    }

    /// The closure as a colored digraph with every arc colored `1`, carrying
    /// the labels of `source`.
    pub fn to_colored(&self, source: &ColoredDigraph) -> ColoredDigraph {
        let raw: Vec<RawArc> = self.arcs().map(|(tail, head)| RawArc { tail, head, color: 1 }).collect();
        ColoredDigraph::validate(self.n, Some(source.labels().to_vec()), raw)
            .expect("closure is a valid digraph")
    }

    /// Sidecar witness file: `w <u> <v> : <v0> <v1> .. <vk>` per arc.
    pub fn witness_lines(&self, source: &ColoredDigraph) -> String {
        let mut s = String::new();
        for (&(u, v), p) in &self.witness {
            let _ = writeln!(s, "w {} {} : {}", source.label(u), source.label(v), p.display(source));
        }
        s
    }
}
