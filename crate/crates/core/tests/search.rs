use std::collections::{HashSet, VecDeque};

use macrolearn::baselines::{best_first, weighted_astar};
use macrolearn::domains::npuzzle::canonical_goal;
use macrolearn::domains::{self, npuzzle_domain, DomainOptions, PuzzleHeuristic};
use macrolearn::solver::{
    bfs_to_better, id_escape, ilb, lbfs, solve_problem, DuplicatePolicy, EscapeConfig, EscapeMethod,
};
use macrolearn::verify::{appendix_m_corrected, check_completeness_exhaustive};
use macrolearn::{apply_sequence, Domain, Error, MacroSet, OperatorId, Problem, SearchStats, State};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn basic(d: &dyn Domain) -> Vec<Vec<OperatorId>> {
    d.operators().into_iter().map(|o| vec![o]).collect()
}

/// Plain BFS distance between two states over basic operators.
fn distance(d: &dyn Domain, from: &State, to: &State) -> usize {
    let mut seen = HashSet::from([from.clone()]);
    let mut queue = VecDeque::from([(from.clone(), 0)]);
    while let Some((s, k)) = queue.pop_front() {
        if s == *to {
            return k;
        }
        for op in d.operators() {
            let mut t = s.clone();
            if d.apply_in_place(op, &mut t) && seen.insert(t.clone()) {
                queue.push_back((t, k + 1));
            }
        }
    }
    panic!("unreachable target")
}

/// Distance to the nearest state with lower h.
fn better_distance(d: &dyn Domain, start: &State, goal: &State) -> usize {
    let h0 = d.heuristic(start, goal);
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([(start.clone(), 0)]);
    while let Some((s, k)) = queue.pop_front() {
        if k > 0 && d.heuristic(&s, goal) < h0 {
            return k;
        }
        for op in d.operators() {
            let mut t = s.clone();
            if d.apply_in_place(op, &mut t) && seen.insert(t.clone()) {
                queue.push_back((t, k + 1));
            }
        }
    }
    panic!("no better state")
}

fn scrambled(d: &dyn Domain, goal: &State, seed: u64, steps: usize) -> State {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut s = goal.clone();
    let ops = d.operators();
    let mut done = 0;
    while done < steps {
        if d.apply_in_place(ops[rng.gen_range(0..ops.len())], &mut s) {
            done += 1;
        }
    }
    s
}

fn replay_end(d: &dyn Domain, ops: &[OperatorId], s: &State) -> State {
    apply_sequence(d, ops, s, &mut SearchStats::default()).expect("route replays")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn escape_routes_replay_and_improve(seed in any::<u64>(), steps in 1usize..40) {
        let p = npuzzle_domain(3, PuzzleHeuristic::Rr).unwrap();
        let goal = canonical_goal(3);
        let s = scrambled(&p, &goal, seed, steps);
        prop_assume!(s != goal);
        let h = |x: &State| p.heuristic(x, &goal);
        let ops = basic(&p);
        let want = better_distance(&p, &s, &goal);
        let cfg = EscapeConfig::default();
        let mut stats = SearchStats::default();

        let by_id = id_escape(&p, &s, &h, &cfg, &ops, &mut stats).unwrap();
        prop_assert_eq!(by_id.steps.len(), want);
        prop_assert_eq!(&replay_end(&p, &by_id.flatten(&ops), &s), &by_id.end);
        prop_assert!(by_id.h_end < h(&s));

        let by_bfs = bfs_to_better(&p, &s, &h, 40, &ops, &mut stats).unwrap();
        prop_assert_eq!(by_bfs.steps.len(), want);

        let by_ilb = ilb(&p, &s, &h, &cfg, &ops, &mut stats).unwrap();
        prop_assert!(by_ilb.steps.len() >= want);
        prop_assert_eq!(&replay_end(&p, &by_ilb.flatten(&ops), &s), &by_ilb.end);
        prop_assert_eq!(by_ilb.h_end, h(&by_ilb.end));
        prop_assert!(by_ilb.h_end < h(&s));
    }

    #[test]
    fn narrow_lbfs_routes_are_still_valid(seed in any::<u64>(), breadth in 1usize..6) {
        let p = npuzzle_domain(4, PuzzleHeuristic::Rr).unwrap();
        let goal = canonical_goal(4);
        let s = scrambled(&p, &goal, seed, 60);
        prop_assume!(s != goal);
        let h = |x: &State| p.heuristic(x, &goal);
        let ops = basic(&p);
        for dup in [DuplicatePolicy::None, DuplicatePolicy::Path, DuplicatePolicy::Level, DuplicatePolicy::Call] {
            let r = lbfs(&p, &s, &h, breadth, 12, dup, &ops, &mut SearchStats::default());
            if let Some(route) = r.route {
                prop_assert!(route.steps.len() <= 12);
                prop_assert_eq!(&replay_end(&p, &route.flatten(&ops), &s), &route.end);
                prop_assert!(route.h_end < h(&s));
            }
        }
    }

    #[test]
    fn solutions_reach_the_goal(seed in any::<u64>()) {
        let p = npuzzle_domain(3, PuzzleHeuristic::Rr).unwrap();
        let goal = canonical_goal(3);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = p.random_solvable(&goal, &mut rng).unwrap();
        for method in [EscapeMethod::Ilb, EscapeMethod::Id] {
            let cfg = EscapeConfig { method, ..EscapeConfig::default() };
            let out = solve_problem(&p, &s, &goal, &MacroSet::new(), &cfg, true).unwrap();
            prop_assert_eq!(replay_end(&p, &out.solution, &s), goal.clone());
            prop_assert_eq!(out.stats.solution_length as usize, out.solution.len());
            prop_assert_eq!(out.stats.escapes as usize, out.new_macros.len());
            prop_assert_eq!(out.checkpoints.len(), out.step_offsets.len());
            prop_assert_eq!(*out.checkpoints.last().unwrap(), 0);
            prop_assert!(out.checkpoints.windows(2).all(|w| w[1] < w[0]));
        }
    }
}

#[test]
fn unsolvable_instance_exhausts_a_small_depth() {
    let p = npuzzle_domain(3, PuzzleHeuristic::Rr).unwrap();
    let goal = canonical_goal(3);
    let mut s = goal.clone();
    s.cells_mut().swap(0, 1);
    let cfg = EscapeConfig { depth_limit: 4, ..EscapeConfig::default() };
    let err = solve_problem(&p, &s, &goal, &MacroSet::new(), &cfg, false).unwrap_err();
    assert!(matches!(err, Error::EscapeExhausted { depth_limit: 4, .. }), "{err}");
}

#[test]
fn half_weight_astar_is_optimal() {
    let p = npuzzle_domain(3, PuzzleHeuristic::Md).unwrap();
    let goal = canonical_goal(3);
    for seed in 0..25 {
        let s = scrambled(&p, &goal, seed, 30);
        let out = weighted_astar(&p, &Problem::new(s.clone(), goal.clone()), 0.5, 5_000_000).unwrap();
        assert_eq!(out.solution.len(), distance(&p, &s, &goal), "seed {seed}");
        assert_eq!(replay_end(&p, &out.solution, &s), goal);
    }
}

#[test]
fn baselines_respect_the_node_budget() {
    let p = npuzzle_domain(4, PuzzleHeuristic::Md).unwrap();
    let goal = canonical_goal(4);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let s = p.random_solvable(&goal, &mut rng).unwrap();
    let problem = Problem::new(s, goal);
    assert!(matches!(best_first(&p, &problem, 50), Err(Error::BudgetExceeded { budget: 50 })));
    assert!(weighted_astar(&p, &problem, 1.5, 50).is_err());
    let ok = best_first(&p, &problem, 5_000_000).unwrap();
    assert_eq!(replay_end(&p, &ok.solution, &problem.initial), problem.goal);
}

#[test]
fn a_complete_macro_set_never_escapes() {
    let p = npuzzle_domain(3, PuzzleHeuristic::Rr).unwrap();
    let goal = canonical_goal(3);
    let macros = appendix_m_corrected(&p);
    assert!(check_completeness_exhaustive(&p, &goal, &macros, 200_000).unwrap().complete());
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for _ in 0..200 {
        let s = p.random_solvable(&goal, &mut rng).unwrap();
        let out = solve_problem(&p, &s, &goal, &macros, &EscapeConfig::default(), false).unwrap();
        assert_eq!(out.stats.escapes, 0);
    }
}

#[test]
fn other_domains_solve_from_random_walks() {
    for (name, param) in [("hanoi", 4), ("cannibals", 6), ("stones", 3), ("grid", 10)] {
        let d = domains::build(name, param, &DomainOptions::default()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let goal = d.generate_goal(&mut rng);
        let s = scrambled(d.as_ref(), &goal, 9, 200);
        let out = solve_problem(d.as_ref(), &s, &goal, &MacroSet::new(), &EscapeConfig::default(), true).unwrap();
        assert_eq!(replay_end(d.as_ref(), &out.solution, &s), goal, "{name}");
    }
}
