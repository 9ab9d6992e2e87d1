//! Offline attention filters over solution traces.

use crate::model::{apply_operator, Domain, Macro, MacroSet, OperatorId, SearchStats, State};

/// A solution path with the heuristic value of every state on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrainingTrace {
    pub states: Vec<State>,
    pub ops: Vec<OperatorId>,
    pub h_values: Vec<u64>,
}

impl TrainingTrace {
    /// Replays `ops` from `initial`. `None` if a step is undefined.
    pub fn replay<D: Domain + ?Sized>(
        domain: &D,
        initial: &State,
        goal: &State,
        ops: &[OperatorId],
    ) -> Option<TrainingTrace> {
        let mut stats = SearchStats::default();
        let mut states = vec![initial.clone()];
        for &op in ops {
            let next = apply_operator(domain, op, states.last().unwrap(), &mut stats)?;
            states.push(next);
        }
        let h_values = states.iter().map(|s| domain.heuristic(s, goal)).collect();
        Some(TrainingTrace {
            states,
            ops: ops.to_vec(),
            h_values,
        })
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FilterStrategy {
    MinToBetter,
    MinToMin,
    AnyToBetter,
}

/// Whether no basic operator strictly lowers h at `state`.
pub fn is_local_minimum<D: Domain + ?Sized>(domain: &D, state: &State, goal: &State) -> bool {
    let h = domain.heuristic(state, goal);
    domain.operators().into_iter().all(|op| {
        let mut next = state.clone();
        !domain.apply_in_place(op, &mut next) || domain.heuristic(&next, goal) >= h
    })
}

pub fn extract_macros<D: Domain + ?Sized>(
    trace: &TrainingTrace,
    strategy: FilterStrategy,
    domain: &D,
    goal: &State,
) -> Vec<Macro> {
    let minima: Vec<bool> = trace
        .states
        .iter()
        .zip(&trace.h_values)
        .map(|(s, &h)| h > 0 && is_local_minimum(domain, s, goal))
        .collect();
    extract_with_minima(&trace.ops, &trace.h_values, &minima, strategy)
}

/// The filters as the incremental learner applies them: a state counts as
/// a local minimum only where the hill-climber stood (`stops`, offsets into
/// the trace) and when neither a basic operator nor a macro of `macros`
/// lowers h there. As macros accumulate, minima thin out.
pub fn extract_macros_at_stops<D: Domain + ?Sized>(
    trace: &TrainingTrace,
    stops: &[usize],
    strategy: FilterStrategy,
    domain: &D,
    goal: &State,
    macros: &MacroSet,
) -> Vec<Macro> {
    let mut minima = vec![false; trace.states.len()];
    for &j in stops {
        let (s, h) = (&trace.states[j], trace.h_values[j]);
        let improves = |ops: &[OperatorId]| {
            let mut t = s.clone();
            ops.iter().all(|&op| domain.apply_in_place(op, &mut t)) && domain.heuristic(&t, goal) < h
        };
        minima[j] = h > 0
            && !domain.operators().into_iter().any(|op| improves(&[op]))
            && !macros.iter().any(|m| improves(m.ops()));
    }
    extract_with_minima(&trace.ops, &trace.h_values, &minima, strategy)
}

/// The filters on a heuristic sequence with precomputed local-minimum
/// flags, one per state (`ops.len() + 1` of each).
pub fn extract_with_minima(
    ops: &[OperatorId],
    h: &[u64],
    minima: &[bool],
    strategy: FilterStrategy,
) -> Vec<Macro> {
    let n = ops.len();
    let better = |j: usize| (j + 1..=n).find(|&e| h[e] < h[j]);
    let mut out = Vec::new();
    match strategy {
        FilterStrategy::MinToBetter => {
            for j in (0..n).filter(|&j| minima[j]) {
                if let Some(e) = better(j) {
                    out.push(Macro::new(ops[j..e].to_vec()));
                }
            }
        }
        FilterStrategy::MinToMin => {
            // The final state ends the last segment: the goal counts as a
            // minimum.
            let stops: Vec<usize> = (0..n).filter(|&j| minima[j]).chain([n]).collect();
            for w in stops.windows(2) {
                out.push(Macro::new(ops[w[0]..w[1]].to_vec()));
            }
        }
        FilterStrategy::AnyToBetter => {
            for j in 0..n {
                if let Some(e) = better(j).filter(|&e| e > j + 1) {
                    out.push(Macro::new(ops[j..e].to_vec()));
                }
            }
        }
    }
    out
}
