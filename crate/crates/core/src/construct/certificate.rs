//! Line-oriented certificate text.
//!
//! ```text
//! # comment
//! mode pc
//! route exact
//! S: {v0,v2}
//! abs v1 : v1 v2
//! abs v3 : v3 v0
//! ind v0 v2 : none
//! ind v2 v0 : none
//! ```
//!
//! `mode` defaults to `pc`; `route` is informational.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use thiserror::Error;

use super::{verify_pcp_kernel, ConstructError, PcpKernelCertificate};
use crate::graph::{ColoredDigraph, Vertex};
use crate::reach::{PathMode, PcPath};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: unknown vertex `{label}`")]
    UnknownVertex { line: usize, label: String },
    #[error("certificate has no `S:` line")]
    MissingMembers,
}

/// A parsed, not yet checked, certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateClaim {
    pub mode: PathMode,
    pub members: BTreeSet<Vertex>,
    pub paths: BTreeMap<Vertex, Vec<Vertex>>,
    pub independence: Vec<(Vertex, Vertex)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClaimVerdict {
    Valid(Box<PcpKernelCertificate>),
    Invalid(String),
}

impl PcpKernelCertificate {
    /// Text form, parseable by [`parse_certificate`].
    pub fn render(&self, d: &ColoredDigraph) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "mode {}", self.mode.name());
        let _ = writeln!(s, "route {}", self.route.name());
        let _ = writeln!(s, "S: {{{}}}", self.member_labels(d).join(","));
        for (&v, p) in &self.absorption {
            let _ = writeln!(s, "abs {} : {}", d.label(v), p.display(d));
        }
        for &(u, v) in &self.independence {
            let _ = writeln!(s, "ind {} {} : none", d.label(u), d.label(v));
        }
        for l in &self.log {
            let _ = writeln!(s, "# {l}");
        }
        s
    }
}

pub fn parse_certificate(d: &ColoredDigraph, text: &str) -> Result<CertificateClaim, CertificateParseError> {
    let mut mode = PathMode::ProperlyColored;
    let mut members = None;
    let mut paths = BTreeMap::new();
    let mut independence = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let l = raw.trim();
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        let syntax = |msg: &str| CertificateParseError::Syntax { line, msg: msg.to_string() };
        let vertex = |label: &str| {
            d.vertex_by_label(label)
                .ok_or_else(|| CertificateParseError::UnknownVertex { line, label: label.to_string() })
        };
        if let Some(rest) = l.strip_prefix("S:") {
            let inner = rest
                .trim()
                .strip_prefix('{')
                .and_then(|r| r.strip_suffix('}'))
                .ok_or_else(|| syntax("expected `S: {a,b,..}`"))?;
            let mut set = BTreeSet::new();
            for label in inner.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                set.insert(vertex(label)?);
            }
            if members.replace(set).is_some() {
                return Err(syntax("second `S:` line"));
            }
            continue;
        }
        let words: Vec<&str> = l.split_whitespace().collect();
        match words[0] {
            "mode" => {
                mode = match words.get(1) {
                    Some(&"pc") if words.len() == 2 => PathMode::ProperlyColored,
                    Some(&"rainbow") if words.len() == 2 => PathMode::Rainbow,
                    _ => return Err(syntax("expected `mode pc` or `mode rainbow`")),
                }
            }
            "route" => {}
            "abs" => {
                if words.len() < 5 || words[2] != ":" {
                    return Err(syntax("expected `abs <v> : <v> .. <s>`"));
                }
                let v = vertex(words[1])?;
                let path = words[3..].iter().map(|w| vertex(w)).collect::<Result<Vec<_>, _>>()?;
                if paths.insert(v, path).is_some() {
                    return Err(syntax("second path for the same vertex"));
                }
            }
            "ind" => {
                if words.len() != 5 || words[3] != ":" || words[4] != "none" {
                    return Err(syntax("expected `ind <u> <v> : none`"));
                }
                independence.push((vertex(words[1])?, vertex(words[2])?));
            }
            other => return Err(syntax(&format!("unknown statement `{other}`"))),
        }
    }
    let members = members.ok_or(CertificateParseError::MissingMembers)?;
    Ok(CertificateClaim { mode, members, paths, independence })
}

/// Checks a claim against `d`: every stated path must be a valid path of the
/// claimed mode from its vertex into `S`, every outside vertex needs one, the
/// independence lines must cover all ordered member pairs, and fresh searches
/// must confirm independence.
pub fn check_claim(d: &ColoredDigraph, claim: &CertificateClaim) -> Result<ClaimVerdict, ConstructError> {
    let bad = |m: String| Ok(ClaimVerdict::Invalid(m));
    let s = &claim.members;
    let mut absorption = BTreeMap::new();
    for v in d.vertices() {
        let stated = claim.paths.get(&v);
        if s.contains(&v) {
            if stated.is_some() {
                return bad(format!("member {} has an absorption path", d.label(v)));
            }
            continue;
        }
        let Some(verts) = stated else {
            return bad(format!("no absorption path for {}", d.label(v)));
        };
        if verts.first() != Some(&v) || !verts.last().is_some_and(|e| s.contains(e)) {
            return bad(format!("path for {} must start there and end in S", d.label(v)));
        }
        let mut colors = Vec::new();
        for w in verts.windows(2) {
            match d.color(w[0], w[1]) {
                Some(c) => colors.push(c),
                None => return bad(format!("no arc {} -> {}", d.label(w[0]), d.label(w[1]))),
            }
        }
        let p = PcPath { vertices: verts.clone(), colors, mode: claim.mode };
        if let Err(e) = p.validate(d) {
            return bad(format!("path for {}: {e}", d.label(v)));
        }
        absorption.insert(v, p);
    }
    let stated: BTreeSet<(Vertex, Vertex)> = claim.independence.iter().copied().collect();
    for &u in s {
        for &w in s {
            if u != w && !stated.contains(&(u, w)) {
                return bad(format!("no independence line for {} {}", d.label(u), d.label(w)));
            }
        }
    }
    match verify_pcp_kernel(d, s, claim.mode)? {
        Some(mut cert) => {
            cert.absorption = absorption;
            Ok(ClaimVerdict::Valid(Box::new(cert)))
        }
        None => bad("members are connected by a path".into()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::solve_pcp;
    use crate::graph::{generate, GeneratorKind};

    fn c4() -> ColoredDigraph {
        generate(&GeneratorKind::ColoredCycle { colors: vec![1, 1, 1, 1] }, 0).unwrap()
    }

    #[test]
    fn round_trip() {
        let d = c4();
        let cert = solve_pcp(&d, PathMode::ProperlyColored).unwrap().certificate.unwrap();
        let text = cert.render(&d);
        assert!(text.contains("S: {v0,v2}"));
        assert!(text.contains("abs v1 : v1 v2"));
        assert!(text.contains("ind v0 v2 : none"));
        let claim = parse_certificate(&d, &text).unwrap();
        assert!(matches!(check_claim(&d, &claim).unwrap(), ClaimVerdict::Valid(_)));
    }

    #[test]
    fn rejects_bad_claims() {
        let d = c4();
        let missing = "S: {v0,v2}\nabs v1 : v1 v2\nind v0 v2 : none\nind v2 v0 : none\n";
        let claim = parse_certificate(&d, missing).unwrap();
        assert!(matches!(check_claim(&d, &claim).unwrap(), ClaimVerdict::Invalid(_)));

        let connected = "S: {v0,v1}\nabs v2 : v2 v3 v0\nabs v3 : v3 v0\nind v0 v1 : none\nind v1 v0 : none\n";
        let claim = parse_certificate(&d, connected).unwrap();
        assert!(matches!(check_claim(&d, &claim).unwrap(), ClaimVerdict::Invalid(_)));

        assert_eq!(parse_certificate(&d, "abs v1 : v1 v2\n"), Err(CertificateParseError::MissingMembers));
        assert!(matches!(
            parse_certificate(&d, "S: {zz}\n"),
            Err(CertificateParseError::UnknownVertex { line: 1, .. })
        ));
        assert!(matches!(parse_certificate(&d, "bogus\n"), Err(CertificateParseError::Syntax { line: 1, .. })));
    }
}
