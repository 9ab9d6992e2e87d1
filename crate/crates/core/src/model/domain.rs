use std::fmt;

use rand::RngCore;

use crate::error::Result;

/// An opaque per-domain state encoding.
///
/// Every domain in this crate fits its states into a short vector of small
/// integers (tiles, bank counts, cell contents, ring pegs, coordinates), so
/// equality and hashing are structural.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct State(Box<[u16]>);

impl State {
    pub fn new(cells: impl Into<Box<[u16]>>) -> Self {
        State(cells.into())
    }

    pub fn cells(&self) -> &[u16] {
        &self.0
    }

    pub fn cells_mut(&mut self) -> &mut [u16] {
        &mut self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl From<Vec<u16>> for State {
    fn from(v: Vec<u16>) -> Self {
        State(v.into_boxed_slice())
    }
}

impl fmt::Debug for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "State{:?}", self.0)
    }
}

/// Index into a domain's basic-operator table.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OperatorId(pub u8);

impl OperatorId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A problem domain: basic operators, a heuristic and a goal generator.
///
/// Implementations must keep the heuristic well-behaved (zero exactly at the
/// goal, positive elsewhere) and must leave the state untouched when
/// [`Domain::apply_in_place`] reports that an operator is undefined.
pub trait Domain: Send + Sync {
    fn name(&self) -> &str;

    /// The domain parameter (puzzle side, ring count, ...), if any.
    fn parameter(&self) -> Option<u32>;

    /// Printable operator names, indexed by [`OperatorId`].
    fn operator_names(&self) -> &[&'static str];

    /// Applies `op` to `state` in place. Returns `false`, leaving `state`
    /// unchanged, when the operator is undefined there.
    ///
    /// This is the uncounted primitive; search code goes through
    /// [`crate::apply_operator`] and friends so every attempt is counted.
    fn apply_in_place(&self, op: OperatorId, state: &mut State) -> bool;

    fn heuristic(&self, state: &State, goal: &State) -> u64;

    fn generate_goal(&self, rng: &mut dyn RngCore) -> State;

    /// The operator undoing `op`, for domains with declared reverses.
    fn reverse_of(&self, _op: OperatorId) -> Option<OperatorId> {
        None
    }

    /// A uniformly random state solvable to `goal`, for domains with a
    /// domain-specific test-problem generator.
    fn random_solvable(&self, _goal: &State, _rng: &mut dyn RngCore) -> Option<State> {
        None
    }

    fn parse_state(&self, text: &str) -> Result<State>;

    fn format_state(&self, state: &State) -> String;

    fn num_operators(&self) -> usize {
        self.operator_names().len()
    }

    fn operators(&self) -> Vec<OperatorId> {
        (0..self.num_operators() as u8).map(OperatorId).collect()
    }

    fn operator_name(&self, op: OperatorId) -> &'static str {
        self.operator_names()[op.index()]
    }

    fn operator_by_name(&self, name: &str) -> Option<OperatorId> {
        self.operator_names()
            .iter()
            .position(|n| *n == name)
            .map(|i| OperatorId(i as u8))
    }

    /// True when every operator name is a single character, so macros may
    /// be written as unseparated strings such as `dllur`.
    fn single_char_names(&self) -> bool {
        self.operator_names().iter().all(|n| n.chars().count() == 1)
    }
}

impl<D: Domain + ?Sized> Domain for Box<D> {
    fn name(&self) -> &str {
        (**self).name()
    }
    fn parameter(&self) -> Option<u32> {
        (**self).parameter()
    }
    fn operator_names(&self) -> &[&'static str] {
        (**self).operator_names()
    }
    fn apply_in_place(&self, op: OperatorId, state: &mut State) -> bool {
        (**self).apply_in_place(op, state)
    }
    fn heuristic(&self, state: &State, goal: &State) -> u64 {
        (**self).heuristic(state, goal)
    }
    fn generate_goal(&self, rng: &mut dyn RngCore) -> State {
        (**self).generate_goal(rng)
    }
    fn reverse_of(&self, op: OperatorId) -> Option<OperatorId> {
        (**self).reverse_of(op)
    }
    fn random_solvable(&self, goal: &State, rng: &mut dyn RngCore) -> Option<State> {
        (**self).random_solvable(goal, rng)
    }
    fn parse_state(&self, text: &str) -> Result<State> {
        (**self).parse_state(text)
    }
    fn format_state(&self, state: &State) -> String {
        (**self).format_state(state)
    }
}
