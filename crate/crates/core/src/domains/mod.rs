//! Concrete domains and a name-based registry.

pub mod cannibals;
pub mod grid;
pub mod hanoi;
pub mod npuzzle;
pub mod stones;

pub use cannibals::{cannibals_domain, Cannibals};
pub use grid::{grid_domain, Grid, WallSpec};
pub use hanoi::{hanoi_domain, Hanoi};
pub use npuzzle::{
    npuzzle_domain, npuzzle_random_solvable, npuzzle_solvable, Coords, NPuzzle, PuzzleHeuristic,
};
pub use stones::{stones_domain, Stones};

use crate::error::{Error, Result};
use crate::model::Domain;

pub const DOMAIN_NAMES: [&str; 5] = ["npuzzle", "cannibals", "stones", "hanoi", "grid"];

/// Knobs that only some domains read.
#[derive(Debug, Clone)]
pub struct DomainOptions {
    pub heuristic: PuzzleHeuristic,
    pub random_goal: bool,
    /// Grid walls; the grid is square with side `param`.
    pub walls: WallSpec,
}

impl Default for DomainOptions {
    fn default() -> Self {
        DomainOptions {
            heuristic: PuzzleHeuristic::Rr,
            random_goal: false,
            walls: WallSpec::None,
        }
    }
}

pub fn build(name: &str, param: u32, opts: &DomainOptions) -> Result<Box<dyn Domain>> {
    Ok(match name {
        "npuzzle" => Box::new(
            npuzzle_domain(param as usize, opts.heuristic)?.with_random_goal(opts.random_goal),
        ),
        "cannibals" => Box::new(cannibals_domain(param)?),
        "stones" => Box::new(stones_domain(param)?),
        "hanoi" => Box::new(hanoi_domain(param)?),
        "grid" => Box::new(grid_domain(param as usize, param as usize, &opts.walls, None)?),
        other => {
            return Err(Error::InvalidParameter(format!(
                "unknown domain `{other}` (expected one of {})",
                DOMAIN_NAMES.join(", ")
            )))
        }
    })
}
