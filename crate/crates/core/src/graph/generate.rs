//! Seeded random instance generators. Every generator is a pure function of
//! its parameters and seed.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{ColoredDigraph, Color, GraphError, RawArc};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GeneratorKind {
    /// Each ordered pair independently with probability `arc_prob`.
    RandomDigraph { n: usize, arc_prob: f64, m: Color },
    RandomTournament { n: usize, m: Color },
    /// A tournament in which each pair additionally carries the reverse arc
    /// with probability `double_prob`.
    RandomSemiComplete { n: usize, m: Color, double_prob: f64 },
    /// Vertices `x1..` form X, `y1..` form Y.
    RandomBipartiteTournament { nx: usize, ny: usize, m: Color },
    /// Exactly one directed cycle, of length in `2..=n`, plus acyclic attachments
    /// with density `arc_prob`. With `pc_cycle` the cycle is properly colored.
    RandomUnicyclic { n: usize, m: Color, arc_prob: f64, pc_cycle: bool },
    /// `v0 -> v1 -> .. -> v(k-1) -> v0` with `c(v_i v_{i+1}) = colors[i]`.
    ColoredCycle { colors: Vec<Color> },
}

fn bad(msg: impl Into<String>) -> GraphError {
    GraphError::BadParameter(msg.into())
}

fn check_prob(p: f64) -> Result<(), GraphError> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(bad(format!("probability {p} outside [0, 1]")))
    }
}

fn check_m(m: Color) -> Result<(), GraphError> {
    if m == 0 {
        Err(bad("m must be >= 1"))
    } else {
        Ok(())
    }
}

/// Builds one instance of `kind`. The seed is ignored by `ColoredCycle`.
pub fn generate(kind: &GeneratorKind, seed: u64) -> Result<ColoredDigraph, GraphError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let color = |rng: &mut ChaCha8Rng, m: Color| rng.random_range(1..=m) as i64;

    match kind {
        GeneratorKind::RandomDigraph { n, arc_prob, m } => {
            check_prob(*arc_prob)?;
            check_m(*m)?;
            let mut raw = Vec::new();
            for u in 0..*n {
                for v in 0..*n {
                    if u != v && rng.random_bool(*arc_prob) {
                        let c = color(&mut rng, *m);
                        raw.push(RawArc { tail: u, head: v, color: c });
                    }
                }
            }
            ColoredDigraph::validate(*n, None, raw)
        }
        GeneratorKind::RandomTournament { n, m } => {
            check_m(*m)?;
            let mut raw = Vec::new();
            for u in 0..*n {
                for v in u + 1..*n {
                    let (a, b) = if rng.random_bool(0.5) { (u, v) } else { (v, u) };
                    let c = color(&mut rng, *m);
                    raw.push(RawArc { tail: a, head: b, color: c });
                }
            }
            ColoredDigraph::validate(*n, None, raw)
        }
        GeneratorKind::RandomSemiComplete { n, m, double_prob } => {
            check_m(*m)?;
            check_prob(*double_prob)?;
            let mut raw = Vec::new();
            for u in 0..*n {
                for v in u + 1..*n {
                    let (a, b) = if rng.random_bool(0.5) { (u, v) } else { (v, u) };
                    let c = color(&mut rng, *m);
                    raw.push(RawArc { tail: a, head: b, color: c });
                    if rng.random_bool(*double_prob) {
                        let c = color(&mut rng, *m);
                        raw.push(RawArc { tail: b, head: a, color: c });
                    }
                }
            }
            ColoredDigraph::validate(*n, None, raw)
        }
        GeneratorKind::RandomBipartiteTournament { nx, ny, m } => {
            check_m(*m)?;
            if *nx == 0 || *ny == 0 {
                return Err(bad("both sides of a bipartite tournament must be nonempty"));
            }
            let labels: Vec<String> = (1..=*nx)
                .map(|i| format!("x{i}"))
                .chain((1..=*ny).map(|i| format!("y{i}")))
                .collect();
            let mut raw = Vec::new();
            for x in 0..*nx {
                for y in *nx..*nx + *ny {
                    let (a, b) = if rng.random_bool(0.5) { (x, y) } else { (y, x) };
                    let c = color(&mut rng, *m);
                    raw.push(RawArc { tail: a, head: b, color: c });
                }
            }
            ColoredDigraph::validate(nx + ny, Some(labels), raw)
        }
        GeneratorKind::RandomUnicyclic { n, m, arc_prob, pc_cycle } => {
            check_m(*m)?;
            check_prob(*arc_prob)?;
            if *n < 2 {
                return Err(bad("a unicyclic digraph needs n >= 2"));
            }
            if *pc_cycle && *m < 2 {
                return Err(bad("a properly colored cycle needs m >= 2"));
            }
            let mut len = rng.random_range(2..=*n);
            if *pc_cycle && *m == 2 && len % 2 == 1 {
                len -= 1;
            }
            let mut verts: Vec<usize> = (0..*n).collect();
            verts.shuffle(&mut rng);
            let cycle = &verts[..len];
            let colors = if *pc_cycle {
                proper_cycle_colors(&mut rng, len, *m)
            } else {
                (0..len).map(|_| rng.random_range(1..=*m)).collect()
            };
            let mut raw: Vec<RawArc> = (0..len)
                .map(|i| RawArc {
                    tail: cycle[i],
                    head: cycle[(i + 1) % len],
                    color: colors[i] as i64,
                })
                .collect();

            // Topological layout: the cycle is one node among the other vertices,
            // and arcs only run forward, so no second cycle can form.
            let rest = &verts[len..];
            let slot = rng.random_range(0..=rest.len());
            let mut layout: Vec<Vec<usize>> = rest.iter().map(|&v| vec![v]).collect();
            layout.insert(slot, cycle.to_vec());
            for i in 0..layout.len() {
                for j in i + 1..layout.len() {
                    if !rng.random_bool(*arc_prob) {
                        continue;
                    }
                    let a = layout[i][rng.random_range(0..layout[i].len())];
                    let b = layout[j][rng.random_range(0..layout[j].len())];
                    let c = color(&mut rng, *m);
                    raw.push(RawArc { tail: a, head: b, color: c });
                }
            }
            ColoredDigraph::validate(*n, None, raw)
        }
        GeneratorKind::ColoredCycle { colors } => {
            if colors.len() < 2 {
                return Err(bad("a cycle needs at least two arcs"));
            }
            let k = colors.len();
            let raw: Vec<RawArc> = colors
                .iter()
                .enumerate()
                .map(|(i, &c)| RawArc { tail: i, head: (i + 1) % k, color: c as i64 })
                .collect();
            ColoredDigraph::validate(k, None, raw)
        }
    }
}

// Consecutive colors differ, including the wrap-around pair. Needs m >= 3 for odd length.
fn proper_cycle_colors(rng: &mut ChaCha8Rng, len: usize, m: Color) -> Vec<Color> {
    if m == 2 {
        let first = rng.random_range(1..=2);
        return (0..len).map(|i| if i % 2 == 0 { first } else { 3 - first }).collect();
    }
    loop {
        let mut cs: Vec<Color> = vec![rng.random_range(1..=m)];
        for _ in 1..len {
            let prev = *cs.last().expect("nonempty");
            let mut c = rng.random_range(1..m);
            if c >= prev {
                c += 1;
            }
            cs.push(c);
        }
        if cs[len - 1] != cs[0] {
            return cs;
        }
    }
}
