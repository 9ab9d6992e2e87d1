use std::io::Write;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use macrolearn::baselines::{best_first, weighted_astar};
use macrolearn::domains::npuzzle::manhattan_sum;
use macrolearn::learner::generate_test_problem;
use macrolearn::solver::{solve_problem, SolveOutcome};
use macrolearn::{apply_sequence, Domain, Error, MacroSet, Problem, SearchStats};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::config::{read_file, ConfigError, Knobs, RunConfig};
use crate::{CmdResult, Failure, Outcome};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Solver {
    /// Hill-climbing with the macro file.
    Macros,
    /// Hill-climbing with basic operators only.
    HillClimbing,
    BestFirst,
    Wastar,
}

impl Solver {
    fn name(self) -> &'static str {
        match self {
            Solver::Macros => "macros",
            Solver::HillClimbing => "hill-climbing",
            Solver::BestFirst => "best-first",
            Solver::Wastar => "wastar",
        }
    }
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[command(flatten)]
    pub knobs: Knobs,
    #[arg(long, value_enum, default_value_t = Solver::Macros)]
    pub solver: Solver,
    #[arg(long)]
    pub macros: Option<PathBuf>,
    /// Weighted A* weight on h.
    #[arg(long, default_value_t = 0.75)]
    pub weight: f64,
    #[arg(long, default_value_t = 100)]
    pub count: usize,
    /// Walk length for domains without a uniform solvable-state generator.
    #[arg(long, default_value_t = 1_000_000)]
    pub test_walk: usize,
    /// Generated-node budget for the best-first baselines.
    #[arg(long, default_value_t = 10_000_000)]
    pub budget: u64,
    /// CSV output (default: stdout).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

const HEADER: [&str; 13] = [
    "seed",
    "domain",
    "param",
    "problem_id",
    "solver",
    "operator_applications",
    "generated",
    "expanded",
    "escapes",
    "solution_length",
    "wall_ms",
    "status",
    "length_ratio",
];

/// Per-problem measurements; unfinished problems carry zeroed stats.
#[derive(Debug, Clone)]
struct Measured {
    stats: SearchStats,
    status: &'static str,
    length_ratio: Option<f64>,
}

fn solve_one(
    domain: &dyn Domain,
    problem: &Problem,
    cfg: &RunConfig,
    args: &BenchArgs,
    macros: &MacroSet,
) -> Result<Measured, Error> {
    let result: Result<SolveOutcome, Error> = match args.solver {
        Solver::Macros | Solver::HillClimbing => solve_problem(
            domain,
            &problem.initial,
            &problem.goal,
            macros,
            &cfg.learner.escape,
            false,
        ),
        Solver::BestFirst => best_first(domain, problem, args.budget),
        Solver::Wastar => weighted_astar(domain, problem, args.weight, args.budget),
    };
    match result {
        Ok(out) => {
            // The reported length must be the replayed basic-operator count.
            let end = apply_sequence(domain, &out.solution, &problem.initial, &mut SearchStats::default());
            assert_eq!(end.as_ref(), Some(&problem.goal), "solution does not replay to the goal");
            assert_eq!(out.stats.solution_length, out.solution.len() as u64);
            let length_ratio = (domain.name() == "npuzzle").then(|| {
                let n = domain.parameter().unwrap_or(0) as usize;
                out.solution.len() as f64 / manhattan_sum(n, &problem.initial, &problem.goal).max(1) as f64
            });
            Ok(Measured {
                stats: out.stats,
                status: "ok",
                length_ratio,
            })
        }
        Err(Error::BudgetExceeded { .. }) => Ok(Measured {
            stats: SearchStats::default(),
            status: "budget_exceeded",
            length_ratio: None,
        }),
        Err(e) if e.is_escape_exhausted() => Ok(Measured {
            stats: SearchStats::default(),
            status: "escape_exhausted",
            length_ratio: None,
        }),
        Err(e) => Err(e),
    }
}

fn columns(m: &Measured) -> [f64; 6] {
    let s = &m.stats;
    [
        s.operator_applications as f64,
        s.generated_nodes as f64,
        s.expanded_nodes as f64,
        s.escapes as f64,
        s.solution_length as f64,
        s.wall_time.as_secs_f64() * 1000.0,
    ]
}

/// Mean and sample standard deviation of each column over finished rows.
fn aggregate(rows: &[Measured]) -> Option<([f64; 7], [f64; 7])> {
    let ok: Vec<[f64; 7]> = rows
        .iter()
        .filter(|m| m.status == "ok")
        .map(|m| {
            let c = columns(m);
            [c[0], c[1], c[2], c[3], c[4], c[5], m.length_ratio.unwrap_or(f64::NAN)]
        })
        .collect();
    if ok.is_empty() {
        return None;
    }
    let n = ok.len() as f64;
    let mut mean = [0.0; 7];
    let mut std = [0.0; 7];
    for i in 0..7 {
        mean[i] = ok.iter().map(|r| r[i]).sum::<f64>() / n;
        std[i] = if ok.len() > 1 {
            (ok.iter().map(|r| (r[i] - mean[i]).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
        } else {
            0.0
        };
    }
    Some((mean, std))
}

pub fn run(cfg: &RunConfig, args: &BenchArgs) -> CmdResult {
    if !(0.0..=1.0).contains(&args.weight) {
        return Err(Failure::Config(ConfigError(format!("--weight {} outside [0, 1]", args.weight))));
    }
    let domain = cfg.build_domain()?;
    let macros = match (args.solver, &args.macros) {
        (Solver::Macros, Some(path)) => MacroSet::parse_file(domain.as_ref(), &read_file(path)?)?,
        (Solver::Macros, None) => {
            return Err(Failure::Config(ConfigError("--solver macros needs --macros".into())));
        }
        _ => MacroSet::new(),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let problems: Vec<Problem> = (0..args.count)
        .map(|_| generate_test_problem(domain.as_ref(), args.test_walk, &mut rng, &mut SearchStats::default()))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| Failure::Other(e.to_string()))?;
    let measured: Vec<Measured> = pool
        .install(|| {
            problems
                .par_iter()
                .map(|p| solve_one(domain.as_ref(), p, cfg, args, &macros))
                .collect::<Result<Vec<_>, _>>()
        })
        .map_err(Failure::from)?;

    let sink: Box<dyn Write> = match &args.out {
        Some(path) => Box::new(std::fs::File::create(path)?),
        None => Box::new(std::io::stdout().lock()),
    };
    let mut w = csv::Writer::from_writer(sink);
    let csv_err = |e: csv::Error| Failure::Other(e.to_string());
    w.write_record(HEADER).map_err(csv_err)?;
    let prefix = |id: String| {
        vec![
            cfg.seed.to_string(),
            cfg.domain.clone(),
            cfg.param.to_string(),
            id,
            args.solver.name().to_string(),
        ]
    };
    for (i, m) in measured.iter().enumerate() {
        let mut rec = prefix(i.to_string());
        let s = &m.stats;
        rec.extend([
            s.operator_applications.to_string(),
            s.generated_nodes.to_string(),
            s.expanded_nodes.to_string(),
            s.escapes.to_string(),
            s.solution_length.to_string(),
            s.wall_time.as_millis().to_string(),
            m.status.to_string(),
            m.length_ratio.map_or(String::new(), |r| format!("{r:.4}")),
        ]);
        w.write_record(&rec).map_err(csv_err)?;
    }
    if let Some((mean, std)) = aggregate(&measured) {
        for (label, v) in [("mean", mean), ("std", std)] {
            let mut rec = prefix(label.to_string());
            rec.extend(v[..6].iter().map(|x| format!("{x:.3}")));
            rec.push("ok".into());
            rec.push(if v[6].is_nan() { String::new() } else { format!("{:.4}", v[6]) });
            w.write_record(&rec).map_err(csv_err)?;
        }
    }
    w.flush()?;
    if measured.iter().any(|m| m.status == "escape_exhausted") {
        return Ok(Outcome::EscapeExhausted);
    }
    Ok(Outcome::Ok)
}
