//! Bounded enumeration of simple directed cycles.
//!
//! Each cycle is reported once, rotated so that its least vertex comes first.

use std::ops::ControlFlow;

use thiserror::Error;

use super::ColoredDigraph;

/// Maximum number of cycles reported before an enumeration aborts.
pub const CYCLE_BUDGET: u64 = 1_000_000;

// Search steps allowed per unit of cycle budget.
const STEPS_PER_CYCLE: u64 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum CycleError {
    #[error("cycle enumeration exceeded its budget of {0} cycles")]
    BudgetExceeded(u64),
}

/// Out-neighbor lists of `d`, ascending.
pub fn out_lists(d: &ColoredDigraph) -> Vec<Vec<usize>> {
    d.vertices().map(|v| d.out_arcs(v).iter().map(|&(w, _)| w).collect()).collect()
}

/// Calls `f` on every simple cycle of length `<= max_len` (all lengths if
/// `None`). `f` may stop the enumeration early by returning `Break`.
///
/// Returns `Ok(true)` when the enumeration ran to completion.
pub fn for_each_cycle<F>(
    out: &[Vec<usize>],
    max_len: Option<usize>,
    budget: u64,
    mut f: F,
) -> Result<bool, CycleError>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let n = out.len();
    let max_len = max_len.unwrap_or(n);
    let mut inc: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (u, l) in out.iter().enumerate() {
        for &v in l {
            inc[v].push(u);
        }
    }

    let mut found = 0u64;
    let mut steps = 0u64;
    let step_cap = budget.saturating_mul(STEPS_PER_CYCLE);
    let mut on_path = vec![false; n];
    // Distance (in arcs) from each vertex back to `s` inside `{>= s}`.
    let mut back = vec![usize::MAX; n];

    for s in 0..n {
        back.iter_mut().for_each(|b| *b = usize::MAX);
        back[s] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(w) = queue.pop_front() {
            for &u in &inc[w] {
                if u > s && back[u] == usize::MAX {
                    back[u] = back[w] + 1;
                    queue.push_back(u);
                }
            }
        }

        let mut path = vec![s];
        on_path[s] = true;
        // Iterator position per stack level.
        let mut cursor = vec![0usize];
        while let Some(&top) = path.last() {
            let depth = path.len() - 1;
            let i = cursor[depth];
            if i >= out[top].len() {
                on_path[top] = false;
                path.pop();
                cursor.pop();
                continue;
            }
            cursor[depth] += 1;
            let w = out[top][i];
            steps += 1;
            if steps > step_cap {
                return Err(CycleError::BudgetExceeded(budget));
            }
            if w == s {
                if path.len() > max_len {
                    continue;
                }
                found += 1;
                if found > budget {
                    return Err(CycleError::BudgetExceeded(budget));
                }
                if f(&path).is_break() {
                    for &v in &path {
                        on_path[v] = false;
                    }
                    return Ok(false);
                }
                continue;
            }
            if w < s || on_path[w] || back[w] == usize::MAX || path.len() + back[w] > max_len {
                continue;
            }
            on_path[w] = true;
            path.push(w);
            cursor.push(0);
        }
    }
    Ok(true)
}

/// All simple cycles with length `<= max_len`, least vertex first, in
/// enumeration order.
pub fn all_cycles(
    out: &[Vec<usize>],
    max_len: Option<usize>,
    budget: u64,
) -> Result<Vec<Vec<usize>>, CycleError> {
    let mut v = Vec::new();
    for_each_cycle(out, max_len, budget, |c| {
        v.push(c.to_vec());
        ControlFlow::Continue(())
    })?;
    Ok(v)
}
