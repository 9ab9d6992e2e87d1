use std::path::PathBuf;

use clap::{Args, ValueEnum};
use macrolearn::domains::{npuzzle_domain, NPuzzle, PuzzleHeuristic};
use macrolearn::solver::{solve_problem, EscapeConfig};
use macrolearn::verify::{
    appendix_m, appendix_m_corrected, enumerate_reachable, has_improving_operator, lemma1_oracle,
    radius, run_table_vectors, theorem1_bounds,
};
use macrolearn::{Domain, MacroSet, State};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::config::{read_file, ConfigError, Knobs, RunConfig};
use crate::{CmdResult, Failure, Outcome};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Check {
    TableVectors,
    Lemma1,
    Radius,
    Completeness,
    Theorem1,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BaseSet {
    /// The hand-built set as originally listed.
    Printed,
    /// The hand-built set with its four unreliable entries replaced.
    Corrected,
    None,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub knobs: Knobs,
    /// Checks to run (default: all).
    #[arg(long, value_enum)]
    pub check: Vec<Check>,
    /// Enumerate every solvable state instead of sampling (3x3 only).
    #[arg(long)]
    pub exhaustive: bool,
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    /// Extra macros for the completeness check.
    #[arg(long)]
    pub macros: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = BaseSet::Corrected)]
    pub base_set: BaseSet,
    /// Instances for the theorem1 check.
    #[arg(long, default_value_t = 100)]
    pub instances: usize,
}

struct Line {
    name: &'static str,
    pass: bool,
    fields: Vec<(&'static str, String)>,
}

impl std::fmt::Display for Line {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "check={} status={}", self.name, if self.pass { "pass" } else { "fail" })?;
        for (k, v) in &self.fields {
            write!(f, " {k}={v}")?;
        }
        Ok(())
    }
}

fn states(puzzle: &NPuzzle, args: &VerifyArgs, seed: u64) -> Result<Vec<State>, Failure> {
    let goal = puzzle.canonical_goal();
    if args.exhaustive {
        if puzzle.side() > 3 {
            return Err(Failure::Config(ConfigError("--exhaustive needs --param 3".into())));
        }
        return Ok(enumerate_reachable(puzzle, &goal, 200_000)?);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..args.samples)
        .map(|_| puzzle.random_solvable(&goal, &mut rng).expect("puzzles sample uniformly"))
        .collect())
}

fn base_set(puzzle: &NPuzzle, which: BaseSet) -> MacroSet {
    match which {
        BaseSet::Printed => appendix_m(puzzle),
        BaseSet::Corrected => appendix_m_corrected(puzzle),
        BaseSet::None => MacroSet::new(),
    }
}

fn table_vectors() -> Line {
    let outcomes = run_table_vectors();
    let failures = outcomes.iter().filter(|o| o.failed()).count();
    let repairs = outcomes.iter().filter_map(|o| o.repair_reproduces).filter(|ok| !ok).count();
    Line {
        name: "table-vectors",
        pass: failures == 0 && repairs == 0,
        fields: vec![
            ("entries", outcomes.len().to_string()),
            ("uncertain", outcomes.iter().filter(|o| o.uncertain).count().to_string()),
            ("failures", failures.to_string()),
            ("failed_repairs", repairs.to_string()),
        ],
    }
}

fn lemma1(n: usize, args: &VerifyArgs, seed: u64) -> Result<Line, Failure> {
    let puzzle = npuzzle_domain(n, PuzzleHeuristic::Rr)?;
    let goal = puzzle.canonical_goal();
    let all = states(&puzzle, args, seed)?;
    let (qualifying, violations) = all
        .par_iter()
        .filter_map(|s| lemma1_oracle(&puzzle, s, &goal).ok().map(|op| (s, op)))
        .map(|(s, op)| {
            let mut t = s.clone();
            let lowers = puzzle.apply_in_place(op, &mut t) && puzzle.heuristic(&t, &goal) < puzzle.heuristic(s, &goal);
            (1usize, usize::from(!lowers))
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    Ok(Line {
        name: "lemma1",
        pass: violations == 0,
        fields: vec![
            ("param", n.to_string()),
            ("states", all.len().to_string()),
            ("qualifying", qualifying.to_string()),
            ("violations", violations.to_string()),
        ],
    })
}

fn radius_check(cfg: &RunConfig, n: usize, args: &VerifyArgs) -> Result<Line, Failure> {
    let puzzle = npuzzle_domain(n, cfg.options.heuristic)?;
    let goal = puzzle.canonical_goal();
    let all = states(&puzzle, args, cfg.seed)?;
    let radii: Vec<Option<usize>> = all.par_iter().map(|s| radius(&puzzle, s, &goal, 18)).collect();
    let above = radii.iter().filter(|r| r.is_none()).count();
    let max = radii.iter().flatten().max().copied().unwrap_or(0);
    Ok(Line {
        name: "radius",
        pass: above == 0,
        fields: vec![
            ("param", n.to_string()),
            ("heuristic", cfg.options.heuristic.as_str().to_string()),
            ("states", all.len().to_string()),
            ("max_radius", max.to_string()),
            ("above_18", above.to_string()),
        ],
    })
}

fn completeness(cfg: &RunConfig, n: usize, args: &VerifyArgs) -> Result<Line, Failure> {
    let puzzle = npuzzle_domain(n, cfg.options.heuristic)?;
    let goal = puzzle.canonical_goal();
    let mut macros = base_set(&puzzle, args.base_set);
    if let Some(path) = &args.macros {
        macros = macros.union(&MacroSet::parse_file(&puzzle, &read_file(path)?)?);
    }
    let all = states(&puzzle, args, cfg.seed)?;
    let counterexamples: Vec<&State> = all
        .par_iter()
        .filter(|s| **s != goal && !has_improving_operator(&puzzle, s, &goal, &macros))
        .collect();
    let mut fields = vec![
        ("param", n.to_string()),
        ("heuristic", cfg.options.heuristic.as_str().to_string()),
        ("states", all.len().to_string()),
        ("macros", macros.len().to_string()),
        ("counterexamples", counterexamples.len().to_string()),
    ];
    if let Some(first) = counterexamples.first() {
        fields.push(("first", format!("\"{}\"", puzzle.format_state(first))));
    }
    Ok(Line {
        name: "completeness",
        pass: counterexamples.is_empty(),
        fields,
    })
}

fn theorem1(cfg: &RunConfig, n: usize, args: &VerifyArgs) -> Result<Line, Failure> {
    let puzzle = npuzzle_domain(n, PuzzleHeuristic::Rr)?;
    let goal = puzzle.canonical_goal();
    let macros = base_set(&puzzle, args.base_set);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let starts: Vec<State> = (0..args.instances)
        .map(|_| puzzle.random_solvable(&goal, &mut rng).expect("puzzles sample uniformly"))
        .collect();
    let runs = starts
        .par_iter()
        .map(|s| solve_problem(&puzzle, s, &goal, &macros, &EscapeConfig::default(), false))
        .collect::<Result<Vec<_>, _>>()?;
    let worst_ops = runs.iter().map(|r| r.stats.operator_applications).max().unwrap_or(0);
    let worst_len = runs.iter().map(|r| r.stats.solution_length).max().unwrap_or(0);
    let escapes: u64 = runs.iter().map(|r| r.stats.escapes).sum();
    let b = theorem1_bounds(n as u64);
    Ok(Line {
        name: "theorem1",
        pass: worst_ops <= b.operator_applications && worst_len <= b.solution_length,
        fields: vec![
            ("param", n.to_string()),
            ("instances", runs.len().to_string()),
            ("worst_ops", worst_ops.to_string()),
            ("bound_ops", b.operator_applications.to_string()),
            ("worst_length", worst_len.to_string()),
            ("bound_length", b.solution_length.to_string()),
            ("escapes", escapes.to_string()),
        ],
    })
}

pub fn run(cfg: &RunConfig, args: &VerifyArgs) -> CmdResult {
    if cfg.domain != "npuzzle" {
        return Err(Failure::Config(ConfigError("verify checks are for --domain npuzzle".into())));
    }
    let n = cfg.param as usize;
    let checks = if args.check.is_empty() {
        Check::value_variants().to_vec()
    } else {
        args.check.clone()
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| Failure::Other(e.to_string()))?;
    let mut all_pass = true;
    for check in checks {
        let line = pool.install(|| match check {
            Check::TableVectors => Ok(table_vectors()),
            Check::Lemma1 => lemma1(n, args, cfg.seed),
            Check::Radius => radius_check(cfg, n, args),
            Check::Completeness => completeness(cfg, n, args),
            Check::Theorem1 => theorem1(cfg, n, args),
        })?;
        all_pass &= line.pass;
        println!("{line}");
    }
    Ok(if all_pass { Outcome::Ok } else { Outcome::CheckFailed })
}
