use std::ops::AddAssign;
use std::time::Duration;

/// Search counters. Operator applications are the primary cost unit: every
/// attempted basic-operator application counts, including failed ones and
/// those inside macros.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// All attempted basic-operator applications, generation included.
    pub operator_applications: u64,
    /// The share of `operator_applications` spent generating problems.
    pub generation_applications: u64,
    pub generated_nodes: u64,
    pub expanded_nodes: u64,
    pub escapes: u64,
    pub solution_length: u64,
    /// Largest frontier held by any escape search.
    pub peak_frontier: usize,
    pub wall_time: Duration,
}

impl SearchStats {
    pub fn search_applications(&self) -> u64 {
        self.operator_applications - self.generation_applications
    }
}

impl AddAssign<&SearchStats> for SearchStats {
    fn add_assign(&mut self, rhs: &SearchStats) {
        self.operator_applications += rhs.operator_applications;
        self.generation_applications += rhs.generation_applications;
        self.generated_nodes += rhs.generated_nodes;
        self.expanded_nodes += rhs.expanded_nodes;
        self.escapes += rhs.escapes;
        self.solution_length += rhs.solution_length;
        self.peak_frontier = self.peak_frontier.max(rhs.peak_frontier);
        self.wall_time += rhs.wall_time;
    }
}
