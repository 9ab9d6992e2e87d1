//! Domain abstraction and the data model shared by every search procedure.

mod apply;
mod domain;
mod macros;
mod problem;
mod stats;

pub use apply::{apply_macro, apply_operator, apply_sequence};
pub use domain::{Domain, OperatorId, State};
pub use macros::{format_macro, macro_from_names, Macro, MacroSet, Provenance};
pub use problem::Problem;
pub use stats::SearchStats;
