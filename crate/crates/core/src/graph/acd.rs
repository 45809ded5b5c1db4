//! The ACD text format and DOT export.
//!
//! ```text
//! acd 1
//! # comment
//! v <label>
//! a <src-label> <dst-label> <color>
//! ```

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use super::{ColoredDigraph, GraphError, RawArc};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: syntax error: {msg}")]
    SyntaxError { line: usize, msg: String },
    #[error("line {line}: unknown vertex label `{label}`")]
    UnknownVertexLabel { line: usize, label: String },
    #[error("invalid digraph: {0}")]
    Invalid(#[from] GraphError),
}

fn syntax(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::SyntaxError { line, msg: msg.into() }
}

/// Parses an ACD document. Vertex indices follow declaration order.
pub fn parse(text: &str) -> Result<ColoredDigraph, ParseError> {
    let mut header_seen = false;
    let mut labels: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut arcs: Vec<RawArc> = Vec::new();

    for (i, raw_line) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw_line.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = body.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        if !header_seen {
            if tokens != ["acd", "1"] {
                return Err(syntax(line, "expected header `acd 1`"));
            }
            header_seen = true;
            continue;
        }
        match tokens[0] {
            "v" => {
                if tokens.len() != 2 {
                    return Err(syntax(line, "expected `v <label>`"));
                }
                let label = tokens[1].to_string();
                if index.contains_key(&label) {
                    return Err(syntax(line, format!("vertex `{label}` declared twice")));
                }
                index.insert(label.clone(), labels.len());
                labels.push(label);
            }
            "a" => {
                if tokens.len() != 4 {
                    return Err(syntax(line, "expected `a <src> <dst> <color>`"));
                }
                let lookup = |l: &str| {
                    index.get(l).copied().ok_or_else(|| ParseError::UnknownVertexLabel {
                        line,
                        label: l.to_string(),
                    })
                };
                let tail = lookup(tokens[1])?;
                let head = lookup(tokens[2])?;
                let color: i64 = tokens[3]
                    .parse()
                    .map_err(|_| syntax(line, format!("bad color `{}`", tokens[3])))?;
                if color < 1 {
                    return Err(syntax(line, "colors are integers >= 1"));
                }
                if tail == head {
                    return Err(syntax(line, "loop arcs are not allowed"));
                }
                if arcs.iter().any(|a| a.tail == tail && a.head == head) {
                    return Err(syntax(line, "duplicate arc"));
                }
                arcs.push(RawArc { tail, head, color });
            }
            other => return Err(syntax(line, format!("unknown statement `{other}`"))),
        }
    }
    if !header_seen {
        return Err(syntax(1, "missing header `acd 1`"));
    }
    Ok(ColoredDigraph::validate(labels.len(), Some(labels), arcs)?)
}

/// Canonical ACD text: vertices by label, arcs lexicographic by label pair.
pub fn serialize(d: &ColoredDigraph) -> String {
    let c = d.canonical();
    let mut s = String::from("acd 1\n");
    for l in c.labels() {
        let _ = writeln!(s, "v {l}");
    }
    for a in c.arcs() {
        let _ = writeln!(s, "a {} {} {}", c.label(a.tail), c.label(a.head), a.color);
    }
    s
}

/// Fixed palette for DOT export; color `c` uses entry `(c - 1) % len`.
pub const DOT_PALETTE: [&str; 10] = [
    "black",
    "red",
    "blue",
    "darkgreen",
    "orange",
    "purple",
    "brown",
    "deeppink",
    "cyan4",
    "gold3",
];

/// Graphviz rendering, vertices and arcs in index order.
pub fn to_dot(d: &ColoredDigraph) -> String {
    let mut s = String::from("digraph D {\n");
    for v in d.vertices() {
        let _ = writeln!(s, "  \"{}\";", d.label(v));
    }
    for a in d.arcs() {
        let pal = DOT_PALETTE[(a.color as usize - 1) % DOT_PALETTE.len()];
        let _ = writeln!(
            s,
            "  \"{}\" -> \"{}\" [color=\"{}\", label=\"{}\"];",
            d.label(a.tail),
            d.label(a.head),
            pal,
            a.color
        );
    }
    s.push_str("}\n");
    s
}
