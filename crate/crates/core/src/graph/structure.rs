//! Color-blind structure: strong components, condensation order, acyclicity.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

/// Strong components of the digraph given by out-lists, in a topological order
/// of the condensation (arcs only go from earlier to later components). Ties
/// are broken by the least vertex of each component, so the order is
/// deterministic. Vertices inside a component are ascending.
pub fn condensation(out: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = out.len();
    let comp_of = tarjan(out);
    let k = comp_of.iter().copied().max().map_or(0, |c| c + 1);
    let mut comps: Vec<Vec<usize>> = vec![Vec::new(); k];
    for v in 0..n {
        comps[comp_of[v]].push(v);
    }

    let mut indeg = vec![0usize; k];
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); k];
    for u in 0..n {
        for &v in &out[u] {
            let (a, b) = (comp_of[u], comp_of[v]);
            if a != b {
                succ[a].push(b);
                indeg[b] += 1;
            }
        }
    }
    let mut heap: BinaryHeap<Reverse<(usize, usize)>> = (0..k)
        .filter(|&c| indeg[c] == 0)
        .map(|c| Reverse((comps[c][0], c)))
        .collect();
    let mut order = Vec::with_capacity(k);
    while let Some(Reverse((_, c))) = heap.pop() {
        order.push(std::mem::take(&mut comps[c]));
        for &s in &succ[c] {
            indeg[s] -= 1;
            if indeg[s] == 0 {
                heap.push(Reverse((comps[s][0], s)));
            }
        }
    }
    order
}

// Iterative Tarjan; returns a component id per vertex.
fn tarjan(out: &[Vec<usize>]) -> Vec<usize> {
    let n = out.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comp = vec![usize::MAX; n];
    let mut next_index = 0;
    let mut next_comp = 0;

    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&(v, i)) = call.last() {
            if i < out[v].len() {
                let w = out[v][i];
                call.last_mut().expect("nonempty").1 += 1;
                if index[w] == usize::MAX {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    loop {
                        let w = stack.pop().expect("tarjan stack");
                        on_stack[w] = false;
                        comp[w] = next_comp;
                        if w == v {
                            break;
                        }
                    }
                    next_comp += 1;
                }
            }
        }
    }
    comp
}

/// A topological order, least available vertex first, or `None` on a cycle.
pub fn topological_order(out: &[Vec<usize>]) -> Option<Vec<usize>> {
    let n = out.len();
    let mut indeg = vec![0usize; n];
    for l in out {
        for &v in l {
            indeg[v] += 1;
        }
    }
    let mut heap: BinaryHeap<Reverse<usize>> =
        (0..n).filter(|&v| indeg[v] == 0).map(Reverse).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(Reverse(v)) = heap.pop() {
        order.push(v);
        for &w in &out[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                heap.push(Reverse(w));
            }
        }
    }
    (order.len() == n).then_some(order)
}

pub fn is_acyclic(out: &[Vec<usize>]) -> bool {
    topological_order(out).is_some()
}

/// BFS distances from `s` (in arcs); `usize::MAX` where unreachable.
pub fn bfs_distances(out: &[Vec<usize>], s: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; out.len()];
    dist[s] = 0;
    let mut q = VecDeque::from([s]);
    while let Some(v) = q.pop_front() {
        for &w in &out[v] {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                q.push_back(w);
            }
        }
    }
    dist
}
