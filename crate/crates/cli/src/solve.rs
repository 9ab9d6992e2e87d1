use std::path::PathBuf;

use clap::Args;
use macrolearn::domains;
use macrolearn::model::format_macro;
use macrolearn::solver::solve_problem;
use macrolearn::{apply_sequence, MacroSet, Problem, SearchStats};

use crate::config::{read_file, Knobs, RunConfig};
use crate::{CmdResult, Outcome};

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub knobs: Knobs,
    /// Problem file; its header names the domain and parameter.
    #[arg(long)]
    pub problem: PathBuf,
    /// Macro file to solve with.
    #[arg(long)]
    pub macros: Option<PathBuf>,
    /// Replay the solution and check that it reaches the goal.
    #[arg(long)]
    pub validate: bool,
}

pub fn run(cfg: &RunConfig, args: &SolveArgs) -> CmdResult {
    let text = read_file(&args.problem)?;
    let (name, param) = Problem::parse_header(&text)?;
    let domain = domains::build(&name, param.unwrap_or(cfg.param), &cfg.options)?;
    let problem = Problem::parse_file(domain.as_ref(), &text)?;
    let macros = match &args.macros {
        Some(path) => MacroSet::parse_file(domain.as_ref(), &read_file(path)?)?,
        None => MacroSet::new(),
    };
    let out = solve_problem(
        domain.as_ref(),
        &problem.initial,
        &problem.goal,
        &macros,
        &cfg.learner.escape,
        false,
    )?;
    println!("{}", format_macro(domain.as_ref(), &out.solution));
    let s = &out.stats;
    println!(
        "operator_applications={} generated={} expanded={} escapes={} solution_length={} wall_ms={}",
        s.operator_applications,
        s.generated_nodes,
        s.expanded_nodes,
        s.escapes,
        s.solution_length,
        s.wall_time.as_millis()
    );
    if args.validate {
        let end = apply_sequence(domain.as_ref(), &out.solution, &problem.initial, &mut SearchStats::default());
        if end.as_ref() != Some(&problem.goal) {
            eprintln!("validation failed: the solution does not reach the goal");
            return Ok(Outcome::CheckFailed);
        }
        println!("validated=true");
    }
    Ok(Outcome::Ok)
}
