//! Arc-colored digraphs.
//!
//! A [`ColoredDigraph`] is a finite simple digraph carrying one color per arc.
//! Colors are opaque positive integers compacted to `1..=m`; the only thing
//! any algorithm in this crate asks of two colors is whether they are equal.

mod acd;
mod classify;
pub mod cycles;
mod generate;
mod instances;
pub mod structure;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

pub use acd::{parse, serialize, to_dot, ParseError, DOT_PALETTE};
pub use classify::{
    bipartite_partition, classify, is_cycle, is_properly_arc_colored, is_semi_complete,
    is_tournament, unique_cycle, ClassTags,
};
pub use generate::{generate, GeneratorKind};
pub use instances::{family_instance, named_instance, ConnectPolicy, Family, NAMED_INSTANCES};

/// Vertex index, `0..n`.
pub type Vertex = usize;

/// Arc color. Always `>= 1` inside a validated digraph.
pub type Color = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("loop arc at vertex {0}")]
    LoopArc(Vertex),
    #[error("duplicate arc {0} -> {1}")]
    DuplicateArc(Vertex, Vertex),
    #[error("arc colors must be positive integers")]
    NonPositiveColor,
    #[error("vertex {0} out of range")]
    VertexOutOfRange(Vertex),
    #[error("duplicate vertex label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown instance `{0}`")]
    UnknownInstance(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),
}

/// A raw arc as supplied by a caller, before validation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RawArc {
    pub tail: Vertex,
    pub head: Vertex,
    pub color: i64,
}

impl From<(Vertex, Vertex, i64)> for RawArc {
    fn from((tail, head, color): (Vertex, Vertex, i64)) -> Self {
        RawArc { tail, head, color }
    }
}

/// An arc of a validated digraph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arc {
    pub tail: Vertex,
    pub head: Vertex,
    pub color: Color,
}

/// Simple digraph with one color per arc. Immutable once built.
#[derive(Clone, PartialEq, Eq)]
pub struct ColoredDigraph {
    labels: Vec<String>,
    arcs: BTreeMap<(Vertex, Vertex), Color>,
    out: Vec<Vec<(Vertex, Color)>>,
    inc: Vec<Vec<(Vertex, Color)>>,
    m: Color,
}

impl fmt::Debug for ColoredDigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ColoredDigraph")
            .field("n", &self.n())
            .field("m", &self.m)
            .field("arcs", &self.arcs().map(|a| (a.tail, a.head, a.color)).collect::<Vec<_>>())
            .finish()
    }
}

pub(crate) fn default_label(v: Vertex) -> String {
    format!("v{v}")
}

impl ColoredDigraph {
    /// Validates a raw arc list. Vertices without labels are named `v<i>`.
    ///
    /// Colors are compacted to `1..=m` in ascending order of their raw value,
    /// so two arcs share a color afterwards iff they shared one before.
    pub fn validate<I, A>(n: usize, labels: Option<Vec<String>>, raw: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = A>,
        A: Into<RawArc>,
    {
        let labels = match labels {
            Some(l) => {
                if l.len() != n {
                    return Err(GraphError::BadParameter(format!(
                        "{} labels for {} vertices",
                        l.len(),
                        n
                    )));
                }
                let mut seen = BTreeSet::new();
                for s in &l {
                    if !seen.insert(s.as_str()) {
                        return Err(GraphError::DuplicateLabel(s.clone()));
                    }
                }
                l
            }
            None => (0..n).map(default_label).collect(),
        };

        let mut arcs: BTreeMap<(Vertex, Vertex), i64> = BTreeMap::new();
        for a in raw {
            let a = a.into();
            if a.tail >= n {
                return Err(GraphError::VertexOutOfRange(a.tail));
            }
            if a.head >= n {
                return Err(GraphError::VertexOutOfRange(a.head));
            }
            if a.tail == a.head {
                return Err(GraphError::LoopArc(a.tail));
            }
            if a.color <= 0 {
                return Err(GraphError::NonPositiveColor);
            }
            if arcs.insert((a.tail, a.head), a.color).is_some() {
                return Err(GraphError::DuplicateArc(a.tail, a.head));
            }
        }

        let palette: BTreeSet<i64> = arcs.values().copied().collect();
        let rank: BTreeMap<i64, Color> =
            palette.iter().enumerate().map(|(i, &c)| (c, i as Color + 1)).collect();
        let arcs: BTreeMap<(Vertex, Vertex), Color> =
            arcs.into_iter().map(|(k, c)| (k, rank[&c])).collect();

        Ok(Self::from_parts(labels, arcs, palette.len() as Color))
    }

    fn from_parts(labels: Vec<String>, arcs: BTreeMap<(Vertex, Vertex), Color>, m: Color) -> Self {
        let n = labels.len();
        let mut out = vec![Vec::new(); n];
        let mut inc = vec![Vec::new(); n];
        // BTreeMap order gives out-lists sorted by head.
        for (&(u, v), &c) in &arcs {
            out[u].push((v, c));
            inc[v].push((u, c));
        }
        for l in &mut inc {
            l.sort_unstable();
        }
        ColoredDigraph { labels, arcs, out, inc, m }
    }

    /// Digraph with no arcs.
    pub fn empty(n: usize) -> Self {
        Self::from_parts((0..n).map(default_label).collect(), BTreeMap::new(), 0)
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    /// Number of distinct colors in use.
    pub fn m(&self) -> Color {
        self.m
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn label(&self, v: Vertex) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<Vertex> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn color(&self, u: Vertex, v: Vertex) -> Option<Color> {
        self.arcs.get(&(u, v)).copied()
    }

    pub fn has_arc(&self, u: Vertex, v: Vertex) -> bool {
        self.arcs.contains_key(&(u, v))
    }

    /// `u -> v` or `v -> u`.
    pub fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.has_arc(u, v) || self.has_arc(v, u)
    }

    /// Out-arcs of `v` as `(head, color)`, ascending by head.
    pub fn out_arcs(&self, v: Vertex) -> &[(Vertex, Color)] {
        &self.out[v]
    }

    /// In-arcs of `v` as `(tail, color)`, ascending by tail.
    pub fn in_arcs(&self, v: Vertex) -> &[(Vertex, Color)] {
        &self.inc[v]
    }

    pub fn out_degree(&self, v: Vertex) -> usize {
        self.out[v].len()
    }

    pub fn in_degree(&self, v: Vertex) -> usize {
        self.inc[v].len()
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n()
    }

    /// All arcs in lexicographic `(tail, head)` order.
    pub fn arcs(&self) -> impl Iterator<Item = Arc> + '_ {
        self.arcs.iter().map(|(&(tail, head), &color)| Arc { tail, head, color })
    }

    /// Returns a copy with different vertex labels.
    pub fn with_labels(&self, labels: Vec<String>) -> Result<Self, GraphError> {
        Self::validate(self.n(), Some(labels), self.raw_arcs())
    }

    pub(crate) fn raw_arcs(&self) -> Vec<RawArc> {
        self.arcs()
            .map(|a| RawArc { tail: a.tail, head: a.head, color: a.color as i64 })
            .collect()
    }

    /// Sub-digraph induced by `keep` (ascending), with the vertices renumbered
    /// `0..keep.len()` in that order. Colors are recompacted.
    pub fn induced(&self, keep: &[Vertex]) -> Self {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let labels = keep.iter().map(|&v| self.labels[v].clone()).collect();
        let raw: Vec<RawArc> = self
            .arcs()
            .filter(|a| index[a.tail] != usize::MAX && index[a.head] != usize::MAX)
            .map(|a| RawArc { tail: index[a.tail], head: index[a.head], color: a.color as i64 })
            .collect();
        Self::validate(keep.len(), Some(labels), raw).expect("induced subgraph of a valid digraph")
    }

    /// Copy with vertices reordered so that labels ascend; the canonical form
    /// written by [`serialize`].
    pub fn canonical(&self) -> Self {
        let mut order: Vec<Vertex> = self.vertices().collect();
        order.sort_by(|&a, &b| self.labels[a].cmp(&self.labels[b]));
        self.induced(&order)
    }

    /// Same digraph with every arc recolored `1`.
    pub fn monochromatic(&self) -> Self {
        let raw: Vec<RawArc> =
            self.arcs().map(|a| RawArc { tail: a.tail, head: a.head, color: 1 }).collect();
        Self::validate(self.n(), Some(self.labels.clone()), raw).expect("recoloring keeps validity")
    }
}

/// A two-sided vertex partition of a bipartite tournament.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartitePartition {
    pub x: Vec<Vertex>,
    pub y: Vec<Vertex>,
}

impl BipartitePartition {
    /// Checks that `self` partitions `d` as a bipartite tournament: every arc
    /// crosses and every cross pair carries exactly one arc.
    pub fn is_bipartite_tournament_of(&self, d: &ColoredDigraph) -> bool {
        let n = d.n();
        let mut side = vec![0u8; n];
        for &v in &self.x {
            if v >= n || side[v] != 0 {
                return false;
            }
            side[v] = 1;
        }
        for &v in &self.y {
            if v >= n || side[v] != 0 {
                return false;
            }
            side[v] = 2;
        }
        if side.contains(&0) || self.x.is_empty() || self.y.is_empty() {
            return false;
        }
        if d.arcs().any(|a| side[a.tail] == side[a.head]) {
            return false;
        }
        self.x
            .iter()
            .all(|&x| self.y.iter().all(|&y| d.has_arc(x, y) != d.has_arc(y, x)))
    }

    pub fn swapped(&self) -> Self {
        BipartitePartition { x: self.y.clone(), y: self.x.clone() }
    }
}
