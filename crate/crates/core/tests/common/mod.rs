//! Brute-force oracles shared by the integration tests. They only read arc
//! colors from the digraph and share no search code with the library.

#![allow(dead_code)]

use std::collections::BTreeSet;

use pcpk::graph::ColoredDigraph;
use pcpk::kernel::PlainDigraph;
use pcpk::reach::PathMode;

/// Dense color matrix; `0` means no arc.
pub fn matrix(d: &ColoredDigraph) -> Vec<Vec<u32>> {
    let n = d.n();
    (0..n).map(|u| (0..n).map(|v| d.color(u, v).unwrap_or(0)).collect()).collect()
}

fn plain_matrix(h: &PlainDigraph) -> Vec<Vec<bool>> {
    let n = h.n();
    (0..n).map(|u| (0..n).map(|v| h.has_arc(u, v)).collect()).collect()
}

/// Every simple path starting at `s` with at least one arc, as
/// `(vertices, colors)`, regardless of coloring.
pub fn simple_paths(d: &ColoredDigraph, s: usize) -> Vec<(Vec<usize>, Vec<u32>)> {
    let a = matrix(d);
    let mut out = Vec::new();
    let mut verts = vec![s];
    let mut cols = Vec::new();
    fn rec(a: &[Vec<u32>], verts: &mut Vec<usize>, cols: &mut Vec<u32>, out: &mut Vec<(Vec<usize>, Vec<u32>)>) {
        let x = *verts.last().unwrap();
        for y in 0..a.len() {
            if a[x][y] != 0 && !verts.contains(&y) {
                verts.push(y);
                cols.push(a[x][y]);
                out.push((verts.clone(), cols.clone()));
                rec(a, verts, cols, out);
                verts.pop();
                cols.pop();
            }
        }
    }
    rec(&a, &mut verts, &mut cols, &mut out);
    out
}

pub fn colors_ok(cols: &[u32], mode: PathMode) -> bool {
    match mode {
        PathMode::ProperlyColored => cols.windows(2).all(|w| w[0] != w[1]),
        PathMode::Rainbow => cols.iter().collect::<BTreeSet<_>>().len() == cols.len(),
    }
}

/// `reach[u][v]` iff some simple `(u, v)`-path of the given mode exists.
pub fn closure_naive(d: &ColoredDigraph, mode: PathMode) -> Vec<Vec<bool>> {
    let n = d.n();
    let mut r = vec![vec![false; n]; n];
    for (u, row) in r.iter_mut().enumerate() {
        for (verts, cols) in simple_paths(d, u) {
            if colors_ok(&cols, mode) {
                row[*verts.last().unwrap()] = true;
            }
        }
    }
    r
}

/// Shortest PC path length from `u` to `v`, by enumeration.
pub fn pc_distance_naive(d: &ColoredDigraph, u: usize, v: usize) -> Option<usize> {
    simple_paths(d, u)
        .into_iter()
        .filter(|(vs, cs)| *vs.last().unwrap() == v && colors_ok(cs, PathMode::ProperlyColored))
        .map(|(_, cs)| cs.len())
        .min()
}

fn members(mask: u32, n: usize) -> BTreeSet<usize> {
    (0..n).filter(|&i| mask >> i & 1 == 1).collect()
}

/// Kernels of the relation `adj` by testing all `2^n` subsets.
pub fn kernels_of_relation(adj: &[Vec<bool>]) -> Vec<BTreeSet<usize>> {
    let n = adj.len();
    assert!(n < 25, "oracle is exponential");
    let mut found = Vec::new();
    for mask in 0u32..(1u32 << n) {
        let s = members(mask, n);
        let independent = s.iter().all(|&a| s.iter().all(|&b| a == b || !adj[a][b]));
        let absorbing = (0..n).all(|v| s.contains(&v) || s.iter().any(|&t| adj[v][t]));
        if independent && absorbing {
            found.push(s);
        }
    }
    found
}

pub fn kernels_naive(h: &PlainDigraph) -> Vec<BTreeSet<usize>> {
    kernels_of_relation(&plain_matrix(h))
}

pub fn is_kernel_naive(h: &PlainDigraph, s: &BTreeSet<usize>) -> bool {
    let a = plain_matrix(h);
    let n = a.len();
    s.iter().all(|&x| s.iter().all(|&y| x == y || !a[x][y]))
        && (0..n).all(|v| s.contains(&v) || s.iter().any(|&t| a[v][t]))
}

/// All PCP-kernels (or rainbow path kernels) straight from the definition.
pub fn pcp_kernels_naive(d: &ColoredDigraph, mode: PathMode) -> Vec<BTreeSet<usize>> {
    kernels_of_relation(&closure_naive(d, mode))
}

pub fn has_pcp_kernel_naive(d: &ColoredDigraph, mode: PathMode) -> bool {
    !pcp_kernels_naive(d, mode).is_empty()
}

pub fn is_pcp_kernel_naive(d: &ColoredDigraph, s: &BTreeSet<usize>, mode: PathMode) -> bool {
    let r = closure_naive(d, mode);
    let n = d.n();
    !s.is_empty()
        && s.iter().all(|&x| s.iter().all(|&y| x == y || !r[x][y]))
        && (0..n).all(|v| s.contains(&v) || s.iter().any(|&t| r[v][t]))
}

/// Every simple cycle as a vertex list rotated to start at its least vertex.
pub fn cycles_naive(d: &ColoredDigraph) -> BTreeSet<Vec<usize>> {
    let a = matrix(d);
    let mut out = BTreeSet::new();
    for s in d.vertices() {
        for (verts, _) in simple_paths(d, s) {
            let last = *verts.last().unwrap();
            if a[last][s] != 0 && verts.iter().all(|&v| v >= s) {
                out.insert(verts);
            }
        }
    }
    out
}

pub fn cycle_colors(d: &ColoredDigraph, c: &[usize]) -> Vec<u32> {
    (0..c.len()).map(|i| d.color(c[i], c[(i + 1) % c.len()]).unwrap()).collect()
}

/// Whether the closed cycle has two consecutive arcs of one color.
pub fn cycle_is_pc(d: &ColoredDigraph, c: &[usize]) -> bool {
    let cs = cycle_colors(d, c);
    let k = cs.len();
    (0..k).all(|i| cs[i] != cs[(i + 1) % k])
}

/// Random colored digraph from a tiny LCG, independent of the library
/// generators.
pub fn lcg_digraph(seed: u64, n: usize, density_pct: u64, m: u32) -> ColoredDigraph {
    let mut x = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    let mut next = || {
        x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        x >> 33
    };
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && next() % 100 < density_pct {
                arcs.push((u, v, (next() % m as u64) as i64 + 1));
            }
        }
    }
    ColoredDigraph::validate(n, None, arcs).unwrap()
}

pub fn plain_lcg(seed: u64, n: usize, density_pct: u64) -> PlainDigraph {
    PlainDigraph::from_colored(&lcg_digraph(seed, n, density_pct, 1))
}

pub fn set_of<const K: usize>(v: [usize; K]) -> BTreeSet<usize> {
    v.into_iter().collect()
}
