use macrolearn::domains::{self, DomainOptions, PuzzleHeuristic, WallSpec};
use macrolearn::{apply_operator, apply_sequence, Domain, Macro, MacroSet, OperatorId, SearchStats, State};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn all_domains() -> Vec<Box<dyn Domain>> {
    let walled = DomainOptions {
        walls: WallSpec::Random { count: Some(2), seed: 11 },
        ..DomainOptions::default()
    };
    let md = DomainOptions {
        heuristic: PuzzleHeuristic::Md,
        ..DomainOptions::default()
    };
    vec![
        domains::build("npuzzle", 3, &DomainOptions::default()).unwrap(),
        domains::build("npuzzle", 4, &md).unwrap(),
        domains::build("cannibals", 5, &DomainOptions::default()).unwrap(),
        domains::build("stones", 3, &DomainOptions::default()).unwrap(),
        domains::build("hanoi", 4, &DomainOptions::default()).unwrap(),
        domains::build("grid", 8, &walled).unwrap(),
    ]
}

/// A goal and a state reached from it by `steps` random successful moves.
fn walk(domain: &dyn Domain, seed: u64, steps: usize) -> (State, State) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let goal = domain.generate_goal(&mut rng);
    let mut s = goal.clone();
    let ops = domain.operators();
    let mut done = 0;
    for _ in 0..steps * 50 {
        if done == steps {
            break;
        }
        let op = ops[rng.gen_range(0..ops.len())];
        if domain.apply_in_place(op, &mut s) {
            done += 1;
        }
    }
    (s, goal)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn failed_application_leaves_the_state_alone(seed in any::<u64>(), steps in 0usize..60) {
        for d in all_domains() {
            let (s, _) = walk(d.as_ref(), seed, steps);
            for op in d.operators() {
                let mut t = s.clone();
                if !d.apply_in_place(op, &mut t) {
                    prop_assert_eq!(&t, &s, "{} op {}", d.name(), d.operator_name(op));
                }
            }
        }
    }

    #[test]
    fn declared_reverses_undo(seed in any::<u64>(), steps in 0usize..60) {
        for d in all_domains() {
            let (s, _) = walk(d.as_ref(), seed, steps);
            for op in d.operators() {
                let Some(rev) = d.reverse_of(op) else { continue };
                let mut t = s.clone();
                if d.apply_in_place(op, &mut t) {
                    prop_assert!(d.apply_in_place(rev, &mut t));
                    prop_assert_eq!(&t, &s);
                }
            }
        }
    }

    #[test]
    fn heuristic_is_zero_exactly_at_the_goal(seed in any::<u64>(), steps in 0usize..60) {
        for d in all_domains() {
            let (s, goal) = walk(d.as_ref(), seed, steps);
            prop_assert_eq!(d.heuristic(&goal, &goal), 0);
            prop_assert_eq!(d.heuristic(&s, &goal) == 0, s == goal, "{}", d.name());
        }
    }

    #[test]
    fn every_attempt_is_counted(seed in any::<u64>(), raw in prop::collection::vec(0u8..8, 0..30)) {
        for d in all_domains() {
            let (s, _) = walk(d.as_ref(), seed, 10);
            let ops: Vec<OperatorId> = raw.iter().map(|&o| OperatorId(o % d.num_operators() as u8)).collect();

            // Reference: replay by hand, counting up to and including the
            // first undefined step.
            let mut t = s.clone();
            let mut attempts = 0u64;
            let mut ok = true;
            for &op in &ops {
                attempts += 1;
                if !d.apply_in_place(op, &mut t) {
                    ok = false;
                    break;
                }
            }
            let mut stats = SearchStats::default();
            let got = apply_sequence(d.as_ref(), &ops, &s, &mut stats);
            prop_assert_eq!(stats.operator_applications, attempts);
            prop_assert_eq!(got, ok.then_some(t));

            for &op in &ops {
                let mut one = SearchStats::default();
                apply_operator(d.as_ref(), op, &s, &mut one);
                prop_assert_eq!(one.operator_applications, 1);
            }
        }
    }

    #[test]
    fn macro_files_round_trip(raw in prop::collection::vec(prop::collection::vec(0u8..4, 1..12), 0..10)) {
        let d = domains::build("npuzzle", 3, &DomainOptions::default()).unwrap();
        let mut set = MacroSet::new();
        for m in &raw {
            set.insert(Macro::new(m.iter().map(|&o| OperatorId(o)).collect()));
        }
        let text = set.to_file_string(d.as_ref());
        let back = MacroSet::parse_file(d.as_ref(), &text).unwrap();
        let a: Vec<&[OperatorId]> = set.iter().map(|m| m.ops()).collect();
        let b: Vec<&[OperatorId]> = back.iter().map(|m| m.ops()).collect();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn problem_files_round_trip() {
    for d in all_domains() {
        let (s, goal) = walk(d.as_ref(), 3, 25);
        let p = macrolearn::Problem::new(s, goal);
        let text = p.to_file_string(d.as_ref());
        let (name, _) = macrolearn::Problem::parse_header(&text).unwrap();
        assert_eq!(name, d.name());
        assert_eq!(macrolearn::Problem::parse_file(d.as_ref(), &text).unwrap(), p);
    }
}

#[test]
fn duplicate_macros_are_not_stored_twice() {
    let d = domains::build("npuzzle", 3, &DomainOptions::default()).unwrap();
    let set = MacroSet::from_names(d.as_ref(), &["lur", "lur", "dllur"]).unwrap();
    assert_eq!(set.len(), 2);
    assert!(MacroSet::from_names(d.as_ref(), &["lxr"]).is_err());
}
