//! Fixed counterexample instances and the families stretched from them.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{ColoredDigraph, Color, GraphError, RawArc};

pub const NAMED_INSTANCES: [&str; 4] = ["fig1-left", "fig1-right", "fig2-tournament", "fig3-d6"];

type Table = (&'static [&'static str], &'static [(&'static str, &'static str, i64)]);

const FIG1_LEFT: Table = (
    &["v1", "v2", "v3", "v4", "v5", "v6"],
    &[
        ("v1", "v2", 1),
        ("v2", "v3", 1),
        ("v3", "v4", 1),
        ("v5", "v6", 1),
        ("v6", "v1", 1),
        ("v3", "v5", 2),
        ("v5", "v4", 2),
    ],
);

const FIG1_RIGHT: Table = (
    &["u1", "u2", "u3", "u4", "u5", "u6", "u7", "u8", "u9"],
    &[
        ("u1", "u2", 1),
        ("u2", "u3", 1),
        ("u3", "u4", 1),
        ("u5", "u6", 1),
        ("u6", "u7", 1),
        ("u8", "u9", 1),
        ("u9", "u1", 1),
        ("u3", "u5", 2),
        ("u5", "u4", 2),
        ("u6", "u8", 3),
        ("u8", "u7", 3),
    ],
);

const FIG2_TOURNAMENT: Table = (
    &["v1", "v2", "v3", "v4"],
    &[
        ("v1", "v2", 1),
        ("v1", "v3", 1),
        ("v1", "v4", 1),
        ("v2", "v3", 2),
        ("v3", "v4", 2),
        ("v4", "v2", 2),
    ],
);

const FIG3_D6: Table = (
    &["x1", "x2", "x3", "y1", "y2", "y3"],
    &[
        ("x1", "y1", 1),
        ("y1", "x2", 1),
        ("y2", "x1", 1),
        ("x2", "y2", 2),
        ("y2", "x3", 2),
        ("y3", "x2", 2),
        ("x3", "y3", 3),
        ("y1", "x3", 3),
        ("y3", "x1", 3),
    ],
);

fn from_table(vertices: &[&str], arcs: &[(&str, &str, i64)]) -> Result<ColoredDigraph, GraphError> {
    let pos = |l: &str| vertices.iter().position(|&v| v == l).expect("table label");
    let raw: Vec<RawArc> =
        arcs.iter().map(|&(u, v, c)| RawArc { tail: pos(u), head: pos(v), color: c }).collect();
    ColoredDigraph::validate(
        vertices.len(),
        Some(vertices.iter().map(|s| s.to_string()).collect()),
        raw,
    )
}

/// One of the fixed instances in [`NAMED_INSTANCES`].
pub fn named_instance(name: &str) -> Result<ColoredDigraph, GraphError> {
    let (v, a) = match name {
        "fig1-left" => FIG1_LEFT,
        "fig1-right" => FIG1_RIGHT,
        "fig2-tournament" => FIG2_TOURNAMENT,
        "fig3-d6" => FIG3_D6,
        _ => return Err(GraphError::UnknownInstance(name.to_string())),
    };
    from_table(v, a)
}

/// How the arcs from the attached digraph into `fig3-d6` are colored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConnectPolicy {
    Constant(Color),
    /// Colors `1, 2, .., k, 1, ..` in arc order.
    Cyclic(Color),
    /// Uniform in `1..=k`, seeded.
    Random { colors: Color, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    /// `fig1-left` with the monochromatic path `v6 v1 v2` stretched to length `n - 4`; `n >= 6` even.
    Remark1Even(usize),
    /// `fig1-right` with the path `u9 u1 u2` replaced by a monochromatic path of
    /// length `n - 7` (length 0 merges `u9` into `u2`); `n >= 7` odd.
    Remark1Odd(usize),
    /// `fig3-d6` plus `base`, with every arc from `base` to `fig3-d6` present.
    Remark4 { base: ColoredDigraph, policy: ConnectPolicy },
}

/// Builds a member of one of the counterexample families.
pub fn family_instance(family: &Family) -> Result<ColoredDigraph, GraphError> {
    match family {
        Family::Remark1Even(n) => remark1_even(*n),
        Family::Remark1Odd(n) => remark1_odd(*n),
        Family::Remark4 { base, policy } => remark4(base, policy),
    }
}

// Replaces the monochromatic path `from -> removed -> to` of a table instance
// by a monochromatic path of length `len` in the same color.
fn stretch(
    table: Table,
    from: &str,
    removed: &str,
    to: &str,
    len: usize,
    fresh: impl Fn(usize) -> String,
) -> Result<ColoredDigraph, GraphError> {
    let (tv, ta) = table;
    let color = ta.iter().find(|a| a.0 == from && a.1 == removed).expect("path arc").2;

    let mut labels: Vec<String> = tv.iter().map(|s| s.to_string()).collect();
    let mut arcs: Vec<(String, String, i64)> = ta
        .iter()
        .filter(|a| a.0 != removed && a.1 != removed)
        .map(|&(u, v, c)| (u.to_string(), v.to_string(), c))
        .collect();

    if len == 0 {
        // `from` is identified with `to`.
        labels.retain(|l| l != removed && l != from);
        for a in &mut arcs {
            if a.0 == from {
                a.0 = to.to_string();
            }
            if a.1 == from {
                a.1 = to.to_string();
            }
        }
    } else {
        // Internal vertices: the removed one keeps its name, the rest are fresh.
        let internal: Vec<String> = (0..len - 1)
            .map(|i| if i == 0 { removed.to_string() } else { fresh(i) })
            .collect();
        if internal.is_empty() {
            labels.retain(|l| l != removed);
        }
        for l in internal.iter().skip(1) {
            labels.push(l.clone());
        }
        let mut chain = vec![from.to_string()];
        chain.extend(internal);
        chain.push(to.to_string());
        for w in chain.windows(2) {
            arcs.push((w[0].clone(), w[1].clone(), color));
        }
    }

    let pos = |l: &str| labels.iter().position(|x| x == l).expect("label present");
    let raw: Vec<RawArc> =
        arcs.iter().map(|(u, v, c)| RawArc { tail: pos(u), head: pos(v), color: *c }).collect();
    ColoredDigraph::validate(labels.len(), Some(labels.clone()), raw)
}

fn remark1_even(n: usize) -> Result<ColoredDigraph, GraphError> {
    if n < 6 || !n.is_multiple_of(2) {
        return Err(GraphError::BadParameter(format!("remark1-even needs even n >= 6, got {n}")));
    }
    stretch(FIG1_LEFT, "v6", "v1", "v2", n - 4, |i| format!("v{}", 6 + i))
}

fn remark1_odd(n: usize) -> Result<ColoredDigraph, GraphError> {
    if n < 7 || n % 2 != 1 {
        return Err(GraphError::BadParameter(format!("remark1-odd needs odd n >= 7, got {n}")));
    }
    stretch(FIG1_RIGHT, "u9", "u1", "u2", n - 7, |i| format!("u{}", 9 + i))
}

fn remark4(base: &ColoredDigraph, policy: &ConnectPolicy) -> Result<ColoredDigraph, GraphError> {
    if base.n() == 0 {
        return Err(GraphError::BadParameter("remark4 needs a nonempty base digraph".into()));
    }
    let d6 = named_instance("fig3-d6")?;
    let k = d6.n();
    let mut labels: Vec<String> = d6.labels().to_vec();
    labels.extend(base.labels().iter().map(|l| format!("b{l}")));

    let mut raw: Vec<RawArc> = d6.raw_arcs();
    raw.extend(base.arcs().map(|a| RawArc {
        tail: a.tail + k,
        head: a.head + k,
        color: a.color as i64,
    }));

    let mut rng = match policy {
        ConnectPolicy::Random { seed, .. } => Some(ChaCha8Rng::seed_from_u64(*seed)),
        _ => None,
    };
    let mut i: u64 = 0;
    for b in base.vertices() {
        for t in d6.vertices() {
            let color = match policy {
                ConnectPolicy::Constant(c) if *c >= 1 => *c as i64,
                ConnectPolicy::Cyclic(c) if *c >= 1 => (i % *c as u64) as i64 + 1,
                ConnectPolicy::Random { colors, .. } if *colors >= 1 => {
                    rng.as_mut().expect("seeded").random_range(1..=*colors) as i64
                }
                _ => return Err(GraphError::BadParameter("connecting colors must be >= 1".into())),
            };
            raw.push(RawArc { tail: b + k, head: t, color });
            i += 1;
        }
    }
    ColoredDigraph::validate(labels.len(), Some(labels), raw)
}
