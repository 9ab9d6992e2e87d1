//! Macro-operator learning for satisficing heuristic search.
//!
//! A learner generates training problems by random walks, solves them with
//! simple hill-climbing, and records every escape route out of a local
//! minimum as a macro-operator. Once the macro set stops growing, the same
//! hill-climber uses basic operators and macros alike to solve new problems.
//!
//! Crate layout:
//! - [`model`]: states, operators, macros, the [`Domain`] trait and the
//!   counted operator-application layer every statistic is built on.
//! - [`domains`]: sliding-tile puzzles, missionaries and cannibals, stones,
//!   towers of Hanoi and a walled grid.
//! - [`solver`]: hill-climbing with ILB or iterative-deepening escape.
//! - [`learner`]: the quiescence-driven learner, its parametric variant,
//!   the random-walk problem generator and the offline attention filters.
//! - [`baselines`]: best-first search and weighted A*.
//! - [`verify`]: executable completeness, radius and bound checks for the
//!   sliding-tile puzzle.

pub mod baselines;
pub mod domains;
pub mod error;
pub mod learner;
pub mod model;
pub mod solver;
pub mod verify;

pub use error::{Error, Result};
pub use model::{
    apply_macro, apply_operator, apply_sequence, macro_from_names, Domain, Macro, MacroSet,
    OperatorId, Problem, SearchStats, State,
};
