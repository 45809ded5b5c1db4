//! Vertex reductions that preserve PCP-kernel existence, and the gadget that
//! turns plain-kernel instances into PCP-kernel instances.

use std::collections::BTreeSet;

use serde::Serialize;

use super::ConstructError;
use crate::graph::{ColoredDigraph, RawArc, Vertex};
use crate::kernel::PlainDigraph;
use crate::reach::{self, PathMode, DEFAULT_BUDGET};

const PC: PathMode = PathMode::ProperlyColored;

/// One vertex deletion, in original vertex ids.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "op", rename_all = "kebab-case")]
pub enum Reduction {
    /// A vertex with no in-arcs.
    StripSource { vertex: Vertex },
    /// `removed` had the same colored in- and out-neighborhoods as `twin`.
    Contract { removed: Vertex, twin: Vertex },
}

/// Result of [`contract_contractible`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Contraction {
    pub reduced: ColoredDigraph,
    /// `kept[i]` is the original vertex behind reduced vertex `i`.
    pub kept: Vec<Vertex>,
    pub steps: Vec<Reduction>,
}

impl Contraction {
    /// Original ids of removed vertices, in removal order.
    pub fn removed(&self) -> Vec<Vertex> {
        self.steps
            .iter()
            .map(|s| match *s {
                Reduction::StripSource { vertex } => vertex,
                Reduction::Contract { removed, .. } => removed,
            })
            .collect()
    }

    /// Lifts a kernel of the reduced digraph (reduced ids) to one of `d`.
    pub fn lift(&self, d: &ColoredDigraph, s: &BTreeSet<Vertex>) -> Result<BTreeSet<Vertex>, ConstructError> {
        let orig: BTreeSet<Vertex> = s.iter().map(|&v| self.kept[v]).collect();
        let mut alive = vec![false; d.n()];
        for &v in &self.kept {
            alive[v] = true;
        }
        lift_steps(d, &self.steps, alive, orig)
    }
}

fn same_neighborhoods(d: &ColoredDigraph, alive: &[bool], a: Vertex, b: Vertex) -> bool {
    let live = |l: &[(Vertex, u32)]| -> Vec<(Vertex, u32)> {
        l.iter().copied().filter(|&(w, _)| alive[w]).collect()
    };
    live(d.out_arcs(a)) == live(d.out_arcs(b)) && live(d.in_arcs(a)) == live(d.in_arcs(b))
}

/// Removes contractible vertices among `alive` until none remain: for the
/// least pair `v1 < v2` with equal colored neighborhoods, `v2` goes.
pub(crate) fn contract_alive(d: &ColoredDigraph, alive: &mut [bool]) -> Vec<Reduction> {
    let mut steps = Vec::new();
    loop {
        let live: Vec<Vertex> = (0..d.n()).filter(|&v| alive[v]).collect();
        let pair = live.iter().enumerate().find_map(|(i, &a)| {
            live[i + 1..].iter().find(|&&b| same_neighborhoods(d, alive, a, b)).map(|&b| (a, b))
        });
        match pair {
            Some((twin, removed)) => {
                alive[removed] = false;
                steps.push(Reduction::Contract { removed, twin });
            }
            None => return steps,
        }
    }
}

/// Undoes `steps` in reverse, growing a kernel `s` of the digraph induced by
/// `alive` into one of the digraph before the steps.
///
/// - a stripped source joins when it has no properly colored path to `s`;
/// - a contracted vertex `v2` with twin `v1` joins when `v1` is in `s` and
///   no properly colored `(v2, v1)`-path exists.
pub(crate) fn lift_steps(
    d: &ColoredDigraph,
    steps: &[Reduction],
    mut alive: Vec<bool>,
    mut s: BTreeSet<Vertex>,
) -> Result<BTreeSet<Vertex>, ConstructError> {
    for step in steps.iter().rev() {
        let back = match *step {
            Reduction::StripSource { vertex } => vertex,
            Reduction::Contract { removed, .. } => removed,
        };
        alive[back] = true;
        let keep: Vec<Vertex> = (0..d.n()).filter(|&v| alive[v]).collect();
        let mut index = vec![usize::MAX; d.n()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let stage = d.induced(&keep);
        let join = match *step {
            Reduction::StripSource { vertex } => {
                let mut target = vec![false; keep.len()];
                for &m in &s {
                    target[index[m]] = true;
                }
                s.is_empty()
                    || reach::pc_path_to_set(&stage, index[vertex], &target, PC, None, DEFAULT_BUDGET)?
                        .is_none()
            }
            Reduction::Contract { removed, twin } => {
                s.contains(&twin)
                    && reach::pc_path_exists(&stage, index[removed], index[twin], PC, None)?.is_none()
            }
        };
        if join {
            s.insert(back);
        }
    }
    Ok(s)
}

/// Removes one vertex of each contractible pair until no pair remains.
pub fn contract_contractible(d: &ColoredDigraph) -> Contraction {
    let mut alive = vec![true; d.n()];
    let steps = contract_alive(d, &mut alive);
    let kept: Vec<Vertex> = (0..d.n()).filter(|&v| alive[v]).collect();
    Contraction { reduced: d.induced(&kept), kept, steps }
}

/// Output of [`reduction_kernel_to_pathkernel`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionOutput {
    pub d_prime: ColoredDigraph,
    /// Vertices of the added set, labelled `x1, x2, ..`.
    pub new_vertices: Vec<Vertex>,
    /// `mapping[v]` is the image in `d_prime` of vertex `v` of the input.
    pub mapping: Vec<Vertex>,
}

/// Hardness gadget: adds `ceil(m / n)` new vertices with arcs to every input
/// vertex. Input arcs get color 1; the new arcs take colors `1..=m`
/// cyclically, so all `m` colors occur. The input has a kernel iff the output
/// has a kernel by properly colored paths iff it has one by rainbow paths;
/// `mode` only records which of the two the caller means to test.
pub fn reduction_kernel_to_pathkernel(
    h: &PlainDigraph,
    m: u32,
    mode: PathMode,
) -> Result<ReductionOutput, ConstructError> {
    let _ = mode;
    let n = h.n();
    if n == 0 {
        return Err(ConstructError::EmptyDigraph);
    }
    if m == 0 {
        return Err(ConstructError::BadParameter("m must be >= 1".into()));
    }
    let k = (m as usize).div_ceil(n);
    let mut labels: Vec<String> = (0..n).map(|v| format!("v{v}")).collect();
    labels.extend((1..=k).map(|i| format!("x{i}")));
    let mut raw: Vec<RawArc> = h.arcs().map(|(tail, head)| RawArc { tail, head, color: 1 }).collect();
    let mut next = 0u32;
    for x in n..n + k {
        for v in 0..n {
            raw.push(RawArc { tail: x, head: v, color: (next % m + 1) as i64 });
            next += 1;
        }
    }
    let d_prime = ColoredDigraph::validate(n + k, Some(labels), raw).map_err(|e| ConstructError::Internal(e.to_string()))?;
    Ok(ReductionOutput { d_prime, new_vertices: (n..n + k).collect(), mapping: (0..n).collect() })
}
