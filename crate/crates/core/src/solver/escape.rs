//! Escape searches out of a local minimum.
//!
//! Both searches run over a list of operator sequences (basic operators as
//! one-element sequences, optionally followed by macros) and stop at the
//! first *generated* state whose heuristic value is below the start's.

use std::collections::{BinaryHeap, HashSet};

use super::EscapeConfig;
use crate::error::{Error, Result};
use crate::model::{apply_sequence, Domain, OperatorId, SearchStats, State};

/// A route out of a local minimum, as indices into the searched operator
/// list, together with the improving state it reaches.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EscapeRoute {
    pub steps: Vec<usize>,
    pub end: State,
    pub h_end: u64,
}

impl EscapeRoute {
    /// The route as basic operators.
    pub fn flatten(&self, ops: &[Vec<OperatorId>]) -> Vec<OperatorId> {
        self.steps.iter().flat_map(|&i| ops[i].iter().copied()).collect()
    }
}

#[derive(Debug, Clone)]
pub struct LbfsResult {
    pub route: Option<EscapeRoute>,
    /// Whether any level lost nodes to the breadth limit. A failed call
    /// without truncation was a complete BFS to the depth limit.
    pub truncated: bool,
}

const ROOT: usize = usize::MAX;

/// Which earlier states an LBFS call refuses to generate again.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DuplicatePolicy {
    /// No duplicate detection, as in the plain level-by-level scheme.
    None,
    /// Skip successors equal to a state on their own root path.
    Path,
    /// Skip successors already generated on the level being built.
    #[default]
    Level,
    /// Skip any state generated earlier in the call.
    Call,
}

/// Level-by-level BFS from `start` keeping at most `breadth_limit` nodes
/// per level. When a level overflows, a maximum-h node is dropped, the
/// most recently generated one among ties. Each level is expanded
/// best-first.
#[allow(clippy::too_many_arguments)]
pub fn lbfs<D: Domain + ?Sized>(
    domain: &D,
    start: &State,
    h: &dyn Fn(&State) -> u64,
    breadth_limit: usize,
    depth_limit: usize,
    duplicates: DuplicatePolicy,
    ops: &[Vec<OperatorId>],
    stats: &mut SearchStats,
) -> LbfsResult {
    let h0 = h(start);
    // (parent node, operator index, state) per node; node 0 is the start.
    let mut nodes: Vec<(usize, usize, State)> = vec![(ROOT, 0, start.clone())];
    let mut seen: HashSet<State> = HashSet::new();
    if duplicates == DuplicatePolicy::Call {
        seen.insert(start.clone());
    }
    let mut open: Vec<(u64, u64, usize)> = vec![(h0, 0, 0)];
    let mut seq = 0u64;
    let mut truncated = false;

    for _ in 0..depth_limit {
        let mut next: BinaryHeap<(u64, u64, usize)> = BinaryHeap::new();
        if duplicates == DuplicatePolicy::Level {
            seen.clear();
        }
        for &(_, _, node) in &open {
            stats.expanded_nodes += 1;
            let state = nodes[node].2.clone();
            for (i, op) in ops.iter().enumerate() {
                let Some(child) = apply_sequence(domain, op, &state, stats) else {
                    continue;
                };
                let duplicate = match duplicates {
                    DuplicatePolicy::None => false,
                    DuplicatePolicy::Path => on_path(&nodes, node, &child),
                    DuplicatePolicy::Level | DuplicatePolicy::Call => seen.contains(&child),
                };
                if duplicate {
                    continue;
                }
                stats.generated_nodes += 1;
                let hc = h(&child);
                if hc < h0 {
                    nodes.push((node, i, child.clone()));
                    return LbfsResult {
                        route: Some(EscapeRoute {
                            steps: trace(&nodes, nodes.len() - 1),
                            end: child,
                            h_end: hc,
                        }),
                        truncated,
                    };
                }
                if matches!(duplicates, DuplicatePolicy::Level | DuplicatePolicy::Call) {
                    seen.insert(child.clone());
                }
                nodes.push((node, i, child));
                seq += 1;
                next.push((hc, seq, nodes.len() - 1));
                if next.len() > breadth_limit {
                    next.pop();
                    truncated = true;
                }
                stats.peak_frontier = stats.peak_frontier.max(next.len());
            }
        }
        if next.is_empty() {
            break;
        }
        open = next.into_sorted_vec();
        compact(&mut nodes, &mut open);
    }
    LbfsResult {
        route: None,
        truncated,
    }
}

fn on_path(nodes: &[(usize, usize, State)], mut id: usize, s: &State) -> bool {
    loop {
        if nodes[id].2 == *s {
            return true;
        }
        if nodes[id].0 == ROOT {
            return false;
        }
        id = nodes[id].0;
    }
}

/// Drops arena nodes no longer reachable from the open level, so memory
/// stays proportional to breadth times depth rather than to generated
/// nodes.
fn compact(nodes: &mut Vec<(usize, usize, State)>, open: &mut [(u64, u64, usize)]) {
    if nodes.len() < 4 * open.len().max(1024) {
        return;
    }
    let mut keep = vec![false; nodes.len()];
    for &(_, _, id) in open.iter() {
        let mut id = id;
        while id != ROOT && !keep[id] {
            keep[id] = true;
            id = nodes[id].0;
        }
    }
    let mut remap = vec![ROOT; nodes.len()];
    let mut kept = Vec::with_capacity(keep.iter().filter(|&&k| k).count());
    for (old, node) in std::mem::take(nodes).into_iter().enumerate() {
        if keep[old] {
            remap[old] = kept.len();
            let parent = if node.0 == ROOT { ROOT } else { remap[node.0] };
            kept.push((parent, node.1, node.2));
        }
    }
    *nodes = kept;
    for entry in open.iter_mut() {
        entry.2 = remap[entry.2];
    }
}

fn trace(nodes: &[(usize, usize, State)], mut id: usize) -> Vec<usize> {
    let mut steps = Vec::new();
    while nodes[id].0 != ROOT {
        steps.push(nodes[id].1);
        id = nodes[id].0;
    }
    steps.reverse();
    steps
}

fn exhausted(h0: u64, depth_limit: usize) -> Error {
    Error::EscapeExhausted {
        h: h0,
        depth_limit,
        problem: None,
    }
}

/// Iterative limited BFS: LBFS with breadth `k + b^exp` for exp = 1..D.
/// Stops early once an LBFS call fails without truncating, since every
/// wider call would repeat the same search.
pub fn ilb<D: Domain + ?Sized>(
    domain: &D,
    start: &State,
    h: &dyn Fn(&State) -> u64,
    cfg: &EscapeConfig,
    ops: &[Vec<OperatorId>],
    stats: &mut SearchStats,
) -> Result<EscapeRoute> {
    let k = cfg.breadth_constant.unwrap_or(domain.num_operators());
    let b = ops.len();
    for exp in 1..=cfg.depth_limit {
        let breadth = k.saturating_add(b.saturating_pow(exp.min(u32::MAX as usize) as u32));
        let result = lbfs(domain, start, h, breadth, cfg.depth_limit, cfg.duplicates, ops, stats);
        if let Some(route) = result.route {
            return Ok(route);
        }
        if !result.truncated {
            break;
        }
    }
    Err(exhausted(h(start), cfg.depth_limit))
}

/// Iterative deepening with bounds 1..D, pruning successors already on the
/// current path. Returns a shortest improving route.
pub fn id_escape<D: Domain + ?Sized>(
    domain: &D,
    start: &State,
    h: &dyn Fn(&State) -> u64,
    cfg: &EscapeConfig,
    ops: &[Vec<OperatorId>],
    stats: &mut SearchStats,
) -> Result<EscapeRoute> {
    let h0 = h(start);
    let mut path = vec![start.clone()];
    let mut steps = Vec::new();
    for bound in 1..=cfg.depth_limit {
        let mut cut = false;
        if let Some((end, h_end)) =
            dfs(domain, h, h0, bound, ops, &mut path, &mut steps, &mut cut, stats)
        {
            return Ok(EscapeRoute { steps, end, h_end });
        }
        // Nothing reached the bound, so deeper bounds cannot help.
        if !cut {
            break;
        }
    }
    Err(exhausted(h0, cfg.depth_limit))
}

#[allow(clippy::too_many_arguments)]
fn dfs<D: Domain + ?Sized>(
    domain: &D,
    h: &dyn Fn(&State) -> u64,
    h0: u64,
    bound: usize,
    ops: &[Vec<OperatorId>],
    path: &mut Vec<State>,
    steps: &mut Vec<usize>,
    cut: &mut bool,
    stats: &mut SearchStats,
) -> Option<(State, u64)> {
    stats.expanded_nodes += 1;
    let state = path.last().expect("path holds the start").clone();
    for (i, op) in ops.iter().enumerate() {
        let Some(child) = apply_sequence(domain, op, &state, stats) else {
            continue;
        };
        if path.contains(&child) {
            continue;
        }
        stats.generated_nodes += 1;
        steps.push(i);
        let hc = h(&child);
        if hc < h0 {
            return Some((child, hc));
        }
        if steps.len() < bound {
            path.push(child);
            let found = dfs(domain, h, h0, bound, ops, path, steps, cut, stats);
            path.pop();
            if found.is_some() {
                return found;
            }
        } else {
            *cut = true;
        }
        steps.pop();
    }
    None
}

/// Smallest-first breadth-first search for the nearest state with lower h,
/// used by tests and the radius check as a reference.
pub fn bfs_to_better<D: Domain + ?Sized>(
    domain: &D,
    start: &State,
    h: &dyn Fn(&State) -> u64,
    depth_limit: usize,
    ops: &[Vec<OperatorId>],
    stats: &mut SearchStats,
) -> Option<EscapeRoute> {
    lbfs(domain, start, h, usize::MAX, depth_limit, DuplicatePolicy::Call, ops, stats).route
}
