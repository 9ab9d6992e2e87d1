use super::{Domain, Macro, OperatorId, SearchStats, State};

/// Applies one basic operator, counting exactly one application whether or
/// not it is defined. `None` means the operator is undefined in `state`.
pub fn apply_operator<D: Domain + ?Sized>(
    domain: &D,
    op: OperatorId,
    state: &State,
    stats: &mut SearchStats,
) -> Option<State> {
    stats.operator_applications += 1;
    let mut next = state.clone();
    domain.apply_in_place(op, &mut next).then_some(next)
}

/// Applies `ops` left to right. Stops at the first undefined step; every
/// attempted step is counted, the failing one included.
pub fn apply_sequence<D: Domain + ?Sized>(
    domain: &D,
    ops: &[OperatorId],
    state: &State,
    stats: &mut SearchStats,
) -> Option<State> {
    let mut next = state.clone();
    for &op in ops {
        stats.operator_applications += 1;
        if !domain.apply_in_place(op, &mut next) {
            return None;
        }
    }
    Some(next)
}

pub fn apply_macro<D: Domain + ?Sized>(
    domain: &D,
    m: &Macro,
    state: &State,
    stats: &mut SearchStats,
) -> Option<State> {
    apply_sequence(domain, m.ops(), state, stats)
}
