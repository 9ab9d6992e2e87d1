//! Simple hill-climbing over basic operators and macros, with an escape
//! search whenever the climber reaches a local minimum.

mod escape;

pub use escape::{bfs_to_better, id_escape, ilb, lbfs, DuplicatePolicy, EscapeRoute, LbfsResult};

use std::time::Instant;

use crate::error::{Error, Result};
use crate::model::{apply_sequence, Domain, Macro, MacroSet, OperatorId, Problem, Provenance, SearchStats, State};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EscapeMethod {
    /// Iterative limited BFS.
    Ilb,
    /// Loop-checked iterative deepening.
    Id,
}

impl EscapeMethod {
    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ilb" => Ok(EscapeMethod::Ilb),
            "id" => Ok(EscapeMethod::Id),
            other => Err(Error::InvalidParameter(format!("unknown escape method `{other}`"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct EscapeConfig {
    pub method: EscapeMethod,
    pub depth_limit: usize,
    /// The `k` in ILB's breadth schedule `k + b^exp`. `None` means the
    /// number of basic operators.
    pub breadth_constant: Option<usize>,
    /// Search escape routes over basic operators and macros instead of
    /// basic operators only.
    pub use_macros_in_escape: bool,
    /// Duplicate detection inside each LBFS call.
    pub duplicates: DuplicatePolicy,
}

impl Default for EscapeConfig {
    fn default() -> Self {
        EscapeConfig {
            method: EscapeMethod::Ilb,
            depth_limit: 100,
            breadth_constant: None,
            use_macros_in_escape: false,
            duplicates: DuplicatePolicy::default(),
        }
    }
}

impl EscapeConfig {
    pub fn validate(&self) -> Result<()> {
        if self.depth_limit == 0 {
            return Err(Error::InvalidParameter("depth limit must be >= 1".into()));
        }
        if self.breadth_constant == Some(0) {
            return Err(Error::InvalidParameter("breadth constant must be >= 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default)]
pub struct SolveOutcome {
    /// Basic operators only; macros are flattened.
    pub solution: Vec<OperatorId>,
    pub stats: SearchStats,
    /// Escape routes acquired in learning mode, in acquisition order.
    pub new_macros: Vec<Macro>,
    /// Heuristic value at the start and after every step or escape.
    pub checkpoints: Vec<u64>,
    /// Offset into `solution` of every state the climber stood on, one per
    /// checkpoint.
    pub step_offsets: Vec<usize>,
}

/// Runs the configured escape search from a local minimum.
pub fn find_escape_route<D: Domain + ?Sized>(
    domain: &D,
    start: &State,
    h: &dyn Fn(&State) -> u64,
    cfg: &EscapeConfig,
    ops: &[Vec<OperatorId>],
    stats: &mut SearchStats,
) -> Result<EscapeRoute> {
    match cfg.method {
        EscapeMethod::Ilb => ilb(domain, start, h, cfg, ops, stats),
        EscapeMethod::Id => id_escape(domain, start, h, cfg, ops, stats),
    }
}

/// Simple hill-climbing from `initial` to `goal`.
///
/// Each step tries the basic operators in domain order and then the macros
/// in acquisition order, taking the first that strictly lowers h. With no
/// improving candidate, an escape route is searched for and appended. In
/// learning mode each new route becomes a macro immediately, so it is
/// already a candidate for the rest of this problem.
pub fn solve_problem<D: Domain + ?Sized>(
    domain: &D,
    initial: &State,
    goal: &State,
    macros: &MacroSet,
    escape: &EscapeConfig,
    learning_mode: bool,
) -> Result<SolveOutcome> {
    escape.validate()?;
    let started = Instant::now();
    let h = |s: &State| domain.heuristic(s, goal);
    let basic: Vec<Vec<OperatorId>> = domain.operators().into_iter().map(|o| vec![o]).collect();
    let mut candidates: Vec<Vec<OperatorId>> = basic.clone();
    candidates.extend(macros.iter().map(|m| m.ops().to_vec()));

    let mut out = SolveOutcome::default();
    let mut state = initial.clone();
    let mut hs = h(&state);
    out.checkpoints.push(hs);
    out.step_offsets.push(0);

    while state != *goal {
        debug_assert!(hs > 0, "heuristic is zero away from the goal");
        out.stats.expanded_nodes += 1;
        let mut step = None;
        for ops in &candidates {
            if let Some(next) = apply_sequence(domain, ops, &state, &mut out.stats) {
                out.stats.generated_nodes += 1;
                let hn = h(&next);
                if hn < hs {
                    step = Some((ops.clone(), next, hn));
                    break;
                }
            }
        }
        if step.is_none() {
            out.stats.escapes += 1;
            let escape_ops = if escape.use_macros_in_escape {
                &candidates
            } else {
                &basic
            };
            let route = find_escape_route(domain, &state, &h, escape, escape_ops, &mut out.stats)
                .map_err(|e| attach_problem(e, initial, goal))?;
            let flat = route.flatten(escape_ops);
            if learning_mode && !candidates[basic.len()..].contains(&flat) {
                let provenance = Provenance {
                    problem_index: 0,
                    parameter: domain.parameter(),
                    state: state.clone(),
                    goal: goal.clone(),
                    h_before: hs,
                    h_after: route.h_end,
                };
                out.new_macros.push(Macro::new(flat.clone()).with_provenance(provenance));
                candidates.push(flat.clone());
            }
            step = Some((flat, route.end, route.h_end));
        }
        let (ops, next, hn) = step.expect("step or escape");
        out.solution.extend_from_slice(&ops);
        state = next;
        hs = hn;
        out.checkpoints.push(hs);
        out.step_offsets.push(out.solution.len());
    }
    out.stats.solution_length = out.solution.len() as u64;
    out.stats.wall_time = started.elapsed();
    Ok(out)
}

fn attach_problem(e: Error, initial: &State, goal: &State) -> Error {
    match e {
        Error::EscapeExhausted { h, depth_limit, .. } => Error::EscapeExhausted {
            h,
            depth_limit,
            problem: Some(Box::new(Problem::new(initial.clone(), goal.clone()))),
        },
        other => other,
    }
}

/// The soft cost bound `(|O| + B_m) · R_h` for hill-climbing with a complete
/// macro set, taking `R_h` as the initial heuristic value: each checkpoint
/// lowers h by at least one and costs at most one application per basic
/// operator plus one per macro step.
pub fn soft_operator_bound(num_operators: usize, macros: &MacroSet, h_initial: u64) -> u64 {
    (num_operators + macros.total_length()) as u64 * h_initial
}
