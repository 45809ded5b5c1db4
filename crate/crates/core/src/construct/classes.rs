//! Constructors for cycles, unicyclic digraphs and semi-complete digraphs.

use std::collections::BTreeSet;

use super::{verified_or_exact, verify_pcp_kernel, ConstructError, PcpKernelCertificate, Route};
use crate::graph::cycles::out_lists;
use crate::graph::structure::condensation;
use crate::graph::{is_cycle, is_semi_complete, unique_cycle, ColoredDigraph, Vertex};
use crate::reach::{self, PathMode, DEFAULT_BUDGET};

const PC: PathMode = PathMode::ProperlyColored;

/// Kernel of a single colored cycle; `None` exactly for a monochromatic odd
/// cycle.
///
/// With the cycle read as `v0 .. v(n-1)` from its least vertex:
/// - monochromatic even: `{v0, v2, ..}`;
/// - properly colored: `{v0}`;
/// - otherwise, for every maximal monochromatic run `v_a .. v_b` of at least
///   two arcs, the vertices `v_(b-2), v_(b-4), ..` down to `v_a`.
pub fn pcp_kernel_of_cycle(c: &ColoredDigraph) -> Result<Option<PcpKernelCertificate>, ConstructError> {
    if !is_cycle(c) {
        return Err(ConstructError::NotACycle);
    }
    let cyc = unique_cycle(c).expect("a cycle has a unique cycle");
    let n = cyc.len();
    let col: Vec<u32> = (0..n)
        .map(|i| c.color(cyc[i], cyc[(i + 1) % n]).expect("cycle arc"))
        .collect();

    let mut log = Vec::new();
    let members: BTreeSet<Vertex> = if col.iter().all(|&x| x == col[0]) {
        if n % 2 == 1 {
            return Ok(None);
        }
        (0..n).step_by(2).map(|i| cyc[i]).collect()
    } else if (0..n).all(|i| col[i] != col[(i + 1) % n]) {
        BTreeSet::from([cyc[0]])
    } else {
        // Start at the first arc of some maximal run.
        let start = (0..n).find(|&i| col[(i + n - 1) % n] != col[i]).expect("two colors");
        let mut s = BTreeSet::new();
        let mut i = 0;
        while i < n {
            let a = start + i;
            let mut len = 1;
            while i + len < n && col[(a + len) % n] == col[a % n] {
                len += 1;
            }
            let mut t = 2;
            while t <= len {
                s.insert(cyc[(a + len - t) % n]);
                t += 2;
            }
            i += len;
        }
        log.push(format!("segment construction from arc index {start}"));
        s
    };
    let mut cert = verified_or_exact(c, &members, "cycle construction", Route::Cycle, &mut log)?;
    if let Some(cert) = cert.as_mut() {
        cert.log = log;
    }
    Ok(cert)
}

/// Kernel of a unicyclic digraph whose cycle is properly colored.
///
/// Strong components are scanned from the last in topological order to the
/// first. A single vertex joins `S` when it has no properly colored path to
/// the current `S`. At the cycle component, the least cycle vertex that
/// cannot reach `S` joins; the rest of the cycle reaches it along the cycle.
pub fn pcp_kernel_of_unicyclic(d: &ColoredDigraph) -> Result<PcpKernelCertificate, ConstructError> {
    let cyc = unique_cycle(d).ok_or(ConstructError::NotUnicyclic)?;
    let k = cyc.len();
    let colors: Vec<u32> =
        (0..k).map(|i| d.color(cyc[i], cyc[(i + 1) % k]).expect("cycle arc")).collect();
    if (0..k).any(|i| colors[i] == colors[(i + 1) % k]) {
        return Err(ConstructError::CycleNotProperlyColored);
    }

    let n = d.n();
    let mut in_s = vec![false; n];
    let mut members = BTreeSet::new();
    let reaches_s = |v: Vertex, in_s: &[bool]| -> Result<bool, ConstructError> {
        if !in_s.iter().any(|&b| b) {
            return Ok(false);
        }
        Ok(reach::pc_path_to_set(d, v, in_s, PC, None, DEFAULT_BUDGET)?.is_some())
    };
    for comp in condensation(&out_lists(d)).iter().rev() {
        let mut pick = None;
        for &v in comp {
            if !reaches_s(v, &in_s)? {
                pick = Some(v);
                break;
            }
        }
        if let Some(v) = pick {
            in_s[v] = true;
            members.insert(v);
        }
    }

    let mut log = Vec::new();
    match verified_or_exact(d, &members, "unicyclic construction", Route::Unicyclic, &mut log)? {
        Some(mut cert) => {
            cert.log = log;
            Ok(cert)
        }
        None => Err(ConstructError::Internal("unicyclic digraph with a properly colored cycle has no kernel".into())),
    }
}

/// A vertex that every other vertex reaches by a properly colored path of at
/// most three arcs, least index first.
pub fn good_vertex_semicomplete(d: &ColoredDigraph) -> Result<Option<Vertex>, ConstructError> {
    if !is_semi_complete(d) {
        return Err(ConstructError::NotSemiComplete);
    }
    'outer: for v in d.vertices() {
        for u in d.vertices().filter(|&u| u != v) {
            if reach::pc_path_exists(d, u, v, PC, Some(3))?.is_none() {
                continue 'outer;
            }
        }
        return Ok(Some(v));
    }
    Ok(None)
}

/// Kernel of a semi-complete digraph. Any two vertices are adjacent, so a
/// kernel is a single vertex that everyone reaches. The good vertex is tried
/// first, then every vertex under unbounded search; the answer is exact.
pub fn pcp_kernel_semicomplete(d: &ColoredDigraph) -> Result<Option<PcpKernelCertificate>, ConstructError> {
    if let Some(v) = good_vertex_semicomplete(d)? {
        let mut cert = verify_pcp_kernel(d, &BTreeSet::from([v]), PC)?
            .ok_or_else(|| ConstructError::Internal("good vertex is not absorbing".into()))?;
        cert.route = Route::SemiComplete;
        cert.log.push(format!("good vertex {}", d.label(v)));
        return Ok(Some(cert));
    }
    for v in d.vertices() {
        if let Some(mut cert) = verify_pcp_kernel(d, &BTreeSet::from([v]), PC)? {
            cert.route = Route::SemiComplete;
            cert.log.push(format!("no good vertex; {} absorbs by longer paths", d.label(v)));
            return Ok(Some(cert));
        }
    }
    Ok(None)
}
