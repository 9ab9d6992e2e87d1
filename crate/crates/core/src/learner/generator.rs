use rand::seq::SliceRandom;
use rand::RngCore;

use crate::model::{Domain, Problem, SearchStats, State};

/// Random walk of `walk_length` successful steps backwards from a fresh
/// goal. Every draw counts as an operator application, including draws
/// that are undefined and get re-drawn, both in the total and in the
/// generation counter.
pub fn generate_training_problem<D: Domain + ?Sized>(
    domain: &D,
    walk_length: usize,
    rng: &mut dyn RngCore,
    stats: &mut SearchStats,
) -> Problem {
    let goal = domain.generate_goal(rng);
    let mut state = goal.clone();
    random_walk(domain, &mut state, walk_length, rng, stats);
    Problem::new(state, goal)
}

/// Walks from a fresh goal until the heuristic reaches `threshold`, giving
/// up after `max_steps` successful steps.
pub fn generate_by_threshold<D: Domain + ?Sized>(
    domain: &D,
    threshold: u64,
    max_steps: usize,
    rng: &mut dyn RngCore,
    stats: &mut SearchStats,
) -> Problem {
    let goal = domain.generate_goal(rng);
    let mut state = goal.clone();
    let mut steps = 0;
    while steps < max_steps && domain.heuristic(&state, &goal) < threshold {
        random_walk(domain, &mut state, 1, rng, stats);
        steps += 1;
    }
    Problem::new(state, goal)
}

fn random_walk<D: Domain + ?Sized>(
    domain: &D,
    state: &mut State,
    steps: usize,
    rng: &mut dyn RngCore,
    stats: &mut SearchStats,
) {
    let ops = domain.operators();
    let mut done = 0;
    while done < steps {
        let op = *ops.choose(rng).expect("domain has operators");
        stats.operator_applications += 1;
        stats.generation_applications += 1;
        if domain.apply_in_place(op, state) {
            done += 1;
        }
    }
}

/// A solvable test problem: the domain's own random generator when it has
/// one, otherwise a random walk of `walk_length` steps.
pub fn generate_test_problem<D: Domain + ?Sized>(
    domain: &D,
    walk_length: usize,
    rng: &mut dyn RngCore,
    stats: &mut SearchStats,
) -> Problem {
    let goal = domain.generate_goal(rng);
    if let Some(initial) = domain.random_solvable(&goal, rng) {
        return Problem::new(initial, goal);
    }
    let mut state = goal.clone();
    random_walk(domain, &mut state, walk_length, rng, stats);
    Problem::new(state, goal)
}
