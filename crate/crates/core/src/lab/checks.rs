//! Coloring conditions on cycles.

use std::collections::VecDeque;
use std::ops::ControlFlow;

use serde::Serialize;

use crate::graph::cycles::{for_each_cycle, out_lists, CycleError, CYCLE_BUDGET};
use crate::graph::{ColoredDigraph, Vertex};

/// Whether a condition holds, with a witness cycle when it does not.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionCheck {
    pub holds: bool,
    pub witness: Option<Vec<Vertex>>,
}

impl ConditionCheck {
    fn holds() -> Self {
        ConditionCheck { holds: true, witness: None }
    }

    fn fails(witness: Vec<Vertex>) -> Self {
        ConditionCheck { holds: false, witness: Some(witness) }
    }
}

/// Whether every cycle of `d` is properly colored, including the pair that
/// closes the cycle. Polynomial: a cycle fails exactly when it contains a
/// 2-cycle of one color, or a same-colored 2-path `u -> v -> w` completed by
/// a `(w, u)`-path avoiding `v`. The witness cycle starts at `v`.
pub fn all_cycles_properly_colored(d: &ColoredDigraph) -> ConditionCheck {
    let n = d.n();
    for u in 0..n {
        for &(v, c) in d.out_arcs(u) {
            if v > u && d.color(v, u) == Some(c) {
                return ConditionCheck::fails(vec![u, v]);
            }
        }
    }
    for v in 0..n {
        for &(u, cin) in d.in_arcs(v) {
            for &(w, cout) in d.out_arcs(v) {
                if w == u || cin != cout {
                    continue;
                }
                if let Some(path) = bfs_path_avoiding(d, w, u, v) {
                    let mut cycle = vec![v];
                    cycle.extend(path);
                    return ConditionCheck::fails(cycle);
                }
            }
        }
    }
    ConditionCheck::holds()
}

// Shortest (s, t)-path that avoids `skip`, ascending neighbor order.
fn bfs_path_avoiding(d: &ColoredDigraph, s: Vertex, t: Vertex, skip: Vertex) -> Option<Vec<Vertex>> {
    let mut prev = vec![usize::MAX; d.n()];
    prev[s] = s;
    let mut q = VecDeque::from([s]);
    while let Some(x) = q.pop_front() {
        if x == t {
            let mut path = vec![t];
            let mut y = t;
            while y != s {
                y = prev[y];
                path.push(y);
            }
            path.reverse();
            return Some(path);
        }
        for &(y, _) in d.out_arcs(x) {
            if y != skip && prev[y] == usize::MAX {
                prev[y] = x;
                q.push_back(y);
            }
        }
    }
    None
}

/// Whether every cycle whose length is in `ks` is properly colored. Cycles
/// are enumerated under the shared cycle budget.
pub fn k_cycles_properly_colored(d: &ColoredDigraph, ks: &[usize]) -> Result<ConditionCheck, CycleError> {
    let Some(&max) = ks.iter().max() else {
        return Ok(ConditionCheck::holds());
    };
    let mut witness = None;
    for_each_cycle(&out_lists(d), Some(max), CYCLE_BUDGET, |c| {
        let k = c.len();
        if ks.contains(&k) {
            let col = |i: usize| d.color(c[i], c[(i + 1) % k]).expect("cycle arc");
            if (0..k).any(|i| col(i) == col((i + 1) % k)) {
                witness = Some(c.to_vec());
                return ControlFlow::Break(());
            }
        }
        ControlFlow::Continue(())
    })?;
    Ok(match witness {
        Some(w) => ConditionCheck::fails(w),
        None => ConditionCheck::holds(),
    })
}

/// A directed 3-cycle in one color, least vertex first.
pub fn has_monochromatic_triangle(d: &ColoredDigraph) -> Option<[Vertex; 3]> {
    for u in d.vertices() {
        for &(v, c) in d.out_arcs(u) {
            if v < u {
                continue;
            }
            for &(w, c2) in d.out_arcs(v) {
                if w > u && c2 == c && d.color(w, u) == Some(c) {
                    return Some([u, v, w]);
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, named_instance, GeneratorKind};

    fn cycle(colors: &[u32]) -> ColoredDigraph {
        generate(&GeneratorKind::ColoredCycle { colors: colors.to_vec() }, 0).unwrap()
    }

    #[test]
    fn figure1_left_witness() {
        let d = named_instance("fig1-left").unwrap();
        let r = all_cycles_properly_colored(&d);
        assert!(!r.holds);
        let w: Vec<&str> = r.witness.unwrap().iter().map(|&v| d.label(v)).collect();
        assert_eq!(w, ["v1", "v2", "v3", "v5", "v6"]);
    }

    #[test]
    fn two_cycles_and_acyclic() {
        assert!(all_cycles_properly_colored(&cycle(&[1, 2])).holds);
        assert!(!all_cycles_properly_colored(&cycle(&[1, 1])).holds);
        let path = ColoredDigraph::validate(3, None, [(0, 1, 1), (1, 2, 1)]).unwrap();
        assert!(all_cycles_properly_colored(&path).holds);
        assert!(has_monochromatic_triangle(&path).is_none());
    }

    #[test]
    fn short_cycles() {
        let d = named_instance("fig3-d6").unwrap();
        assert!(!k_cycles_properly_colored(&d, &[4, 6]).unwrap().holds);
        assert!(k_cycles_properly_colored(&cycle(&[1, 2, 1, 2]), &[4, 6]).unwrap().holds);
        assert!(k_cycles_properly_colored(&cycle(&[1, 1, 1]), &[4, 6]).unwrap().holds);
    }

    #[test]
    fn triangles() {
        let d = named_instance("fig2-tournament").unwrap();
        let t = has_monochromatic_triangle(&d).unwrap();
        let labels: Vec<&str> = t.iter().map(|&v| d.label(v)).collect();
        assert_eq!(labels, ["v2", "v3", "v4"]);
        assert!(has_monochromatic_triangle(&cycle(&[1, 2, 1])).is_none());
    }
}
