use macrolearn::domains::npuzzle::canonical_goal;
use macrolearn::domains::{npuzzle_domain, PuzzleHeuristic};
use macrolearn::learner::{extract_macros, extract_with_minima, is_local_minimum, FilterStrategy, TrainingTrace};
use macrolearn::solver::{solve_problem, EscapeConfig};
use macrolearn::{apply_sequence, Domain, MacroSet, OperatorId, SearchStats};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Segment = (usize, usize);

/// Brute-force reference: enumerate every (start, end) pair and keep the
/// ones each filter admits.
#[allow(clippy::needless_range_loop)]
fn oracle(h: &[u64], minima: &[bool], strategy: FilterStrategy) -> Vec<Segment> {
    let n = h.len() - 1;
    let first_better = |j: usize, e: usize| h[e] < h[j] && (j + 1..e).all(|k| h[k] >= h[j]);
    let mut out = Vec::new();
    match strategy {
        FilterStrategy::MinToBetter => {
            for j in 0..n {
                for e in j + 1..=n {
                    if minima[j] && first_better(j, e) {
                        out.push((j, e));
                    }
                }
            }
        }
        FilterStrategy::AnyToBetter => {
            for j in 0..n {
                for e in j + 2..=n {
                    if first_better(j, e) {
                        out.push((j, e));
                    }
                }
            }
        }
        FilterStrategy::MinToMin => {
            for j in 0..n {
                for e in j + 1..=n {
                    let ends_well = e == n || minima[e];
                    if minima[j] && ends_well && (j + 1..e).all(|k| !minima[k]) {
                        out.push((j, e));
                    }
                }
            }
        }
    }
    out
}

fn sequence() -> impl Strategy<Value = (Vec<u64>, Vec<bool>)> {
    (1usize..25).prop_flat_map(|n| {
        (
            prop::collection::vec(0u64..8, n + 1),
            prop::collection::vec(any::<bool>(), n + 1),
        )
    })
}

proptest! {
    #[test]
    fn filters_match_the_brute_force_oracle((h, mut minima) in sequence()) {
        let n = h.len() - 1;
        minima[n] = false;
        let ops: Vec<OperatorId> = (0..n).map(|i| OperatorId(i as u8)).collect();
        for strategy in [FilterStrategy::MinToBetter, FilterStrategy::MinToMin, FilterStrategy::AnyToBetter] {
            let got: Vec<Vec<OperatorId>> = extract_with_minima(&ops, &h, &minima, strategy)
                .into_iter()
                .map(|m| m.ops().to_vec())
                .collect();
            let want: Vec<Vec<OperatorId>> = oracle(&h, &minima, strategy)
                .into_iter()
                .map(|(j, e)| ops[j..e].to_vec())
                .collect();
            prop_assert_eq!(got, want, "{:?}", strategy);
        }
    }

    #[test]
    fn min_to_better_macros_escape_on_real_traces(seed in 0u64..500) {
        let p = npuzzle_domain(3, PuzzleHeuristic::Rr).unwrap();
        let goal = canonical_goal(3);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = p.random_solvable(&goal, &mut rng).unwrap();
        let out = solve_problem(&p, &s, &goal, &MacroSet::new(), &EscapeConfig::default(), true).unwrap();
        let trace = TrainingTrace::replay(&p, &s, &goal, &out.solution).unwrap();
        prop_assert_eq!(trace.h_values.len(), trace.len() + 1);
        let macros = extract_macros(&trace, FilterStrategy::MinToBetter, &p, &goal);
        let minima: Vec<bool> = trace
            .states
            .iter()
            .zip(&trace.h_values)
            .map(|(s, &h)| h > 0 && is_local_minimum(&p, s, &goal))
            .collect();
        let segments = oracle(&trace.h_values, &minima, FilterStrategy::MinToBetter);
        prop_assert_eq!(macros.len(), segments.len());
        // Each macro, replayed from its minimum, must lower h.
        for (m, (j, _)) in macros.iter().zip(segments) {
            let end = apply_sequence(&p, m.ops(), &trace.states[j], &mut SearchStats::default()).unwrap();
            prop_assert!(p.heuristic(&end, &goal) < trace.h_values[j]);
        }
    }
}
