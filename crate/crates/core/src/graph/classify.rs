use serde::Serialize;

use super::cycles::out_lists;
use super::structure::{condensation, is_acyclic};
use super::{BipartitePartition, ColoredDigraph, Vertex};
use crate::reach::{self, PathMode};

/// Structural class flags. Every flag is recomputed from the digraph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassTags {
    pub acyclic: bool,
    pub unicyclic: bool,
    pub is_cycle: bool,
    pub tournament: bool,
    pub semi_complete: bool,
    #[serde(skip)]
    pub bipartite: Option<BipartitePartition>,
    pub bipartite_tournament: bool,
    pub monochromatic: bool,
    pub properly_arc_colored: bool,
    /// `None` when the path search budget ran out before deciding.
    pub properly_connected: Option<bool>,
}

pub fn classify(d: &ColoredDigraph) -> ClassTags {
    let out = out_lists(d);
    let bipartite = bipartite_partition(d);
    ClassTags {
        acyclic: is_acyclic(&out),
        unicyclic: unique_cycle(d).is_some(),
        is_cycle: is_cycle(d),
        tournament: is_tournament(d),
        semi_complete: is_semi_complete(d),
        bipartite_tournament: bipartite.is_some(),
        bipartite,
        monochromatic: d.m() <= 1,
        properly_arc_colored: is_properly_arc_colored(d),
        properly_connected: properly_connected(d),
    }
}

/// The single directed cycle of a unicyclic digraph, starting at its least
/// vertex and following the arcs. `None` unless the digraph has exactly one
/// cycle.
///
/// A digraph has exactly one cycle iff exactly one strong component is
/// nontrivial and that component has as many arcs as vertices.
pub fn unique_cycle(d: &ColoredDigraph) -> Option<Vec<Vertex>> {
    let comps = condensation(&out_lists(d));
    let mut nontrivial = comps.iter().filter(|c| c.len() > 1);
    let comp = nontrivial.next()?;
    if nontrivial.next().is_some() {
        return None;
    }
    let mut inside = vec![false; d.n()];
    for &v in comp {
        inside[v] = true;
    }
    let internal: usize =
        comp.iter().map(|&v| d.out_arcs(v).iter().filter(|&&(w, _)| inside[w]).count()).sum();
    if internal != comp.len() {
        return None;
    }
    let mut cycle = vec![comp[0]];
    loop {
        let last = *cycle.last().expect("nonempty");
        let next = d.out_arcs(last).iter().find(|&&(w, _)| inside[w]).expect("strong").0;
        if next == comp[0] {
            break;
        }
        cycle.push(next);
    }
    Some(cycle)
}

pub fn is_cycle(d: &ColoredDigraph) -> bool {
    d.n() >= 2
        && d.arc_count() == d.n()
        && unique_cycle(d).is_some_and(|c| c.len() == d.n())
}

pub fn is_tournament(d: &ColoredDigraph) -> bool {
    pairs(d.n()).all(|(u, v)| d.has_arc(u, v) != d.has_arc(v, u))
}

pub fn is_semi_complete(d: &ColoredDigraph) -> bool {
    pairs(d.n()).all(|(u, v)| d.adjacent(u, v))
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |u| (u + 1..n).map(move |v| (u, v)))
}

/// Every 2-path `u -> v -> w` (including `w = u`) changes color.
pub fn is_properly_arc_colored(d: &ColoredDigraph) -> bool {
    d.vertices().all(|v| {
        d.in_arcs(v)
            .iter()
            .all(|&(_, cin)| d.out_arcs(v).iter().all(|&(_, cout)| cin != cout))
    })
}

fn properly_connected(d: &ColoredDigraph) -> Option<bool> {
    for u in d.vertices() {
        for v in d.vertices() {
            if u == v {
                continue;
            }
            match reach::pc_path_exists(d, u, v, PathMode::ProperlyColored, None) {
                Ok(Some(_)) => {}
                Ok(None) => return Some(false),
                Err(_) => return None,
            }
        }
    }
    Some(true)
}

/// The bipartite-tournament partition of `d`, if `d` is one. X is the side
/// containing vertex 0.
pub fn bipartite_partition(d: &ColoredDigraph) -> Option<BipartitePartition> {
    let n = d.n();
    if n < 2 {
        return None;
    }
    let mut side = vec![u8::MAX; n];
    side[0] = 0;
    let mut stack = vec![0];
    while let Some(v) = stack.pop() {
        let nbrs = d.out_arcs(v).iter().chain(d.in_arcs(v)).map(|&(w, _)| w);
        for w in nbrs {
            if side[w] == u8::MAX {
                side[w] = 1 - side[v];
                stack.push(w);
            } else if side[w] == side[v] {
                return None;
            }
        }
    }
    if side.contains(&u8::MAX) {
        return None;
    }
    let p = BipartitePartition {
        x: (0..n).filter(|&v| side[v] == 0).collect(),
        y: (0..n).filter(|&v| side[v] == 1).collect(),
    };
    p.is_bipartite_tournament_of(d).then_some(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, named_instance, GeneratorKind};

    fn cycle(colors: &[u32]) -> ColoredDigraph {
        generate(&GeneratorKind::ColoredCycle { colors: colors.to_vec() }, 0).unwrap()
    }

    #[test]
    fn figure3_is_bipartite_tournament() {
        let t = classify(&named_instance("fig3-d6").unwrap());
        assert!(t.bipartite_tournament);
        assert!(!t.semi_complete);
        let p = t.bipartite.unwrap();
        assert_eq!(p.x, vec![0, 1, 2]);
        assert_eq!(p.y, vec![3, 4, 5]);
    }

    #[test]
    fn figure2_is_tournament() {
        let t = classify(&named_instance("fig2-tournament").unwrap());
        assert!(t.tournament && t.semi_complete);
        assert!(!t.acyclic);
        assert!(t.unicyclic);
    }

    #[test]
    fn alternating_four_cycle() {
        let t = classify(&cycle(&[1, 2, 1, 2]));
        assert!(t.is_cycle && t.unicyclic && t.properly_arc_colored);
        assert_eq!(t.properly_connected, Some(true));
        let t = classify(&cycle(&[1, 2, 1]));
        assert!(t.is_cycle && !t.properly_arc_colored);
    }

    #[test]
    fn two_cycle_flags() {
        let d = cycle(&[1, 2]);
        let t = classify(&d);
        assert!(t.is_cycle && t.unicyclic && !t.tournament && t.semi_complete);
        assert!(t.properly_arc_colored);
        assert!(!classify(&cycle(&[1, 1])).properly_arc_colored);
    }

    #[test]
    fn figure1_is_unicyclic() {
        let t = classify(&named_instance("fig1-left").unwrap());
        assert!(t.unicyclic && !t.is_cycle && !t.acyclic);
        assert_eq!(
            unique_cycle(&named_instance("fig1-left").unwrap()).unwrap(),
            vec![0, 1, 2, 4, 5]
        );
        let t = classify(&named_instance("fig1-right").unwrap());
        assert!(t.unicyclic);
    }
}
