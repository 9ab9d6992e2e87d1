//! Non-learning comparison solvers: greedy best-first search and weighted A*.
//!
//! Both keep the whole search front, detect duplicate states and keep the
//! copy with the smaller path cost, and test for the goal when a node is
//! expanded. `node_budget` caps generated nodes.

use std::cmp::Ordering;
use std::collections::hash_map::Entry;
use std::collections::{BinaryHeap, HashMap};
use std::time::Instant;

use crate::error::{Error, Result};
use crate::model::{apply_operator, Domain, OperatorId, Problem, SearchStats, State};
use crate::solver::SolveOutcome;

/// Frontier entry, ordered so that the max-heap pops the best node.
#[derive(Debug, Clone)]
struct FrontierEntry {
    f: f64,
    h: u64,
    g: u64,
    seq: u64,
    node: usize,
}

impl PartialEq for FrontierEntry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for FrontierEntry {}

impl PartialOrd for FrontierEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FrontierEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        // Smaller f, then smaller g, then earlier insertion is better.
        other
            .f
            .total_cmp(&self.f)
            .then_with(|| other.h.cmp(&self.h))
            .then_with(|| other.g.cmp(&self.g))
            .then_with(|| other.seq.cmp(&self.seq))
    }
}

struct Node {
    state: State,
    parent: Option<(usize, OperatorId)>,
}

/// Expands the node with the smallest h; ties go to the smaller g.
pub fn best_first<D: Domain + ?Sized>(
    domain: &D,
    problem: &Problem,
    node_budget: u64,
) -> Result<SolveOutcome> {
    search(domain, problem, node_budget, |_, h| (h as f64, h))
}

/// Best-first on `f = (1 − w)·g + w·h`, ties broken by smaller g.
pub fn weighted_astar<D: Domain + ?Sized>(
    domain: &D,
    problem: &Problem,
    w: f64,
    node_budget: u64,
) -> Result<SolveOutcome> {
    if !(0.0..=1.0).contains(&w) {
        return Err(Error::InvalidParameter(format!("weight {w} outside [0, 1]")));
    }
    // Secondary key 0 so only g breaks f ties, as in best-first.
    search(domain, problem, node_budget, move |g, h| {
        ((1.0 - w) * g as f64 + w * h as f64, 0)
    })
}

fn search<D: Domain + ?Sized>(
    domain: &D,
    problem: &Problem,
    node_budget: u64,
    key: impl Fn(u64, u64) -> (f64, u64),
) -> Result<SolveOutcome> {
    let started = Instant::now();
    let goal = &problem.goal;
    let mut stats = SearchStats::default();
    let ops = domain.operators();
    let mut nodes = vec![Node {
        state: problem.initial.clone(),
        parent: None,
    }];
    // Best known g per state, with the node carrying it.
    let mut best: HashMap<State, (u64, usize)> = HashMap::from([(problem.initial.clone(), (0, 0))]);
    let mut open = BinaryHeap::new();
    let mut seq = 0;
    let h0 = domain.heuristic(&problem.initial, goal);
    let (f, h) = key(0, h0);
    open.push(FrontierEntry { f, h, g: 0, seq, node: 0 });

    while let Some(entry) = open.pop() {
        let state = nodes[entry.node].state.clone();
        // Lazy deletion of copies superseded by a cheaper path.
        if best.get(&state).is_some_and(|&(g, n)| g < entry.g || n != entry.node) {
            continue;
        }
        if state == *goal {
            let solution = path(&nodes, entry.node);
            stats.solution_length = solution.len() as u64;
            stats.wall_time = started.elapsed();
            return Ok(SolveOutcome {
                solution,
                stats,
                new_macros: Vec::new(),
                checkpoints: Vec::new(),
                step_offsets: Vec::new(),
            });
        }
        stats.expanded_nodes += 1;
        for &op in &ops {
            let Some(child) = apply_operator(domain, op, &state, &mut stats) else {
                continue;
            };
            let g = entry.g + 1;
            let id = nodes.len();
            match best.entry(child.clone()) {
                Entry::Occupied(mut e) => {
                    if e.get().0 <= g {
                        continue;
                    }
                    e.insert((g, id));
                }
                Entry::Vacant(e) => {
                    e.insert((g, id));
                }
            }
            if stats.generated_nodes >= node_budget {
                return Err(Error::BudgetExceeded { budget: node_budget });
            }
            stats.generated_nodes += 1;
            nodes.push(Node {
                state: child.clone(),
                parent: Some((entry.node, op)),
            });
            seq += 1;
            let (f, h) = key(g, domain.heuristic(&child, goal));
            open.push(FrontierEntry { f, h, g, seq, node: id });
        }
    }
    Err(Error::BudgetExceeded { budget: node_budget })
}

fn path(nodes: &[Node], mut id: usize) -> Vec<OperatorId> {
    let mut ops = Vec::new();
    while let Some((parent, op)) = nodes[id].parent {
        ops.push(op);
        id = parent;
    }
    ops.reverse();
    ops
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domains::{npuzzle_domain, PuzzleHeuristic};

    #[test]
    fn goal_start_is_free() {
        let d = npuzzle_domain(3, PuzzleHeuristic::Md).unwrap();
        let g = d.canonical_goal();
        let out = best_first(&d, &Problem::new(g.clone(), g), 10).unwrap();
        assert!(out.solution.is_empty());
        assert_eq!(out.stats.expanded_nodes, 0);
    }

    #[test]
    fn budget_is_enforced() {
        let d = npuzzle_domain(4, PuzzleHeuristic::Md).unwrap();
        let g = d.canonical_goal();
        let s = d.parse_state("15 14 13 12 11 10 9 8 7 6 5 4 3 2 1 _").unwrap();
        assert!(matches!(
            best_first(&d, &Problem::new(s, g), 5),
            Err(Error::BudgetExceeded { budget: 5 })
        ));
    }

    #[test]
    fn rejects_bad_weight() {
        let d = npuzzle_domain(3, PuzzleHeuristic::Md).unwrap();
        let g = d.canonical_goal();
        assert!(weighted_astar(&d, &Problem::new(g.clone(), g), 1.5, 10).is_err());
    }
}
