//! The quiescence-driven macro learner and its parametric variant.

mod filters;
mod generator;

pub use filters::{
    extract_macros, extract_macros_at_stops, extract_with_minima, is_local_minimum, FilterStrategy,
    TrainingTrace,
};
pub use generator::{generate_by_threshold, generate_test_problem, generate_training_problem};

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{format_macro, Domain, MacroSet, SearchStats, State};
use crate::solver::{solve_problem, EscapeConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DifficultyMode {
    /// Random walks that lengthen after every problem.
    WalkLength,
    /// Walk until h reaches a threshold that rises after every problem.
    HeuristicThreshold {
        initial: u64,
        increment: u64,
        max_steps: usize,
    },
}

#[derive(Debug, Clone)]
pub struct LearnerConfig {
    /// The session ends once more than this many consecutive training
    /// problems acquire nothing.
    pub quiescence: usize,
    pub initial_walk_length: usize,
    pub walk_increment: usize,
    pub escape: EscapeConfig,
    pub seed: u64,
    pub difficulty: DifficultyMode,
    /// Hard cap on training problems per session; hitting it ends the
    /// session unquiesced.
    pub max_problems: Option<usize>,
    /// Keep a trace of every training solution in the report.
    pub collect_traces: bool,
    /// Acquire macros by running this filter over each solution instead of
    /// recording escape routes as they are found.
    pub offline_filter: Option<FilterStrategy>,
}

impl Default for LearnerConfig {
    fn default() -> Self {
        LearnerConfig {
            quiescence: 50,
            initial_walk_length: 100,
            walk_increment: 100,
            escape: EscapeConfig::default(),
            seed: 0,
            difficulty: DifficultyMode::WalkLength,
            max_problems: None,
            collect_traces: false,
            offline_filter: None,
        }
    }
}

impl LearnerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.quiescence == 0 {
            return Err(Error::InvalidParameter("quiescence must be >= 1".into()));
        }
        if self.initial_walk_length == 0 || self.walk_increment == 0 {
            return Err(Error::InvalidParameter("walk lengths must be >= 1".into()));
        }
        self.escape.validate()
    }
}

/// One micro-learner pass of a parametric run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParameterRound {
    pub parameter: u32,
    pub problems: usize,
    pub macros_added: usize,
    pub quiesced: bool,
}

#[derive(Debug, Clone, Default)]
pub struct LearnReport {
    pub macro_set: MacroSet,
    pub problems_solved: usize,
    /// Search plus generation; `stats.generation_applications` is the
    /// generation share.
    pub stats: SearchStats,
    pub wall_time: Duration,
    /// Whether the final session ended by quiescence rather than a cap.
    pub quiesced: bool,
    pub rounds: Vec<ParameterRound>,
    /// Per-problem operator applications, in order.
    pub per_problem_applications: Vec<u64>,
    /// Training problems in order with their solution traces, when
    /// requested.
    pub traces: Vec<(TrainingTrace, State)>,
}

impl LearnReport {
    pub fn total_operator_applications(&self) -> u64 {
        self.stats.operator_applications
    }

    pub fn generation_operator_applications(&self) -> u64 {
        self.stats.generation_applications
    }

    /// Key-value record, one `key = value` per line.
    pub fn to_record<D: Domain + ?Sized>(&self, domain: &D, seed: u64) -> String {
        let mut out = String::new();
        let param = domain.parameter().map_or("-".to_string(), |p| p.to_string());
        let _ = writeln!(out, "domain = {}", domain.name());
        let _ = writeln!(out, "param = {param}");
        let _ = writeln!(out, "seed = {seed}");
        let _ = writeln!(out, "quiesced = {}", self.quiesced);
        let _ = writeln!(out, "problems_solved = {}", self.problems_solved);
        let _ = writeln!(out, "macros = {}", self.macro_set.len());
        let _ = writeln!(out, "mean_macro_length = {:.3}", self.macro_set.mean_length());
        let _ = writeln!(out, "max_macro_length = {}", self.macro_set.max_length());
        let _ = writeln!(out, "total_operator_applications = {}", self.total_operator_applications());
        let _ = writeln!(
            out,
            "generation_operator_applications = {}",
            self.generation_operator_applications()
        );
        let _ = writeln!(out, "search_operator_applications = {}", self.stats.search_applications());
        let _ = writeln!(out, "escapes = {}", self.stats.escapes);
        let _ = writeln!(out, "wall_ms = {}", self.wall_time.as_millis());
        for r in &self.rounds {
            let _ = writeln!(
                out,
                "round.{} = problems {} macros_added {} quiesced {}",
                r.parameter, r.problems, r.macros_added, r.quiesced
            );
        }
        for (i, m) in self.macro_set.iter().enumerate() {
            let _ = write!(out, "macro.{i} = {}", format_macro(domain, m.ops()));
            if let Some(p) = &m.acquired_at {
                let param = p.parameter.map_or("-".to_string(), |p| p.to_string());
                let _ = write!(
                    out,
                    " | problem {} param {} h_before {} h_after {}",
                    p.problem_index, param, p.h_before, p.h_after
                );
            }
            out.push('\n');
        }
        out
    }
}

/// Learns macros until `cfg.quiescence + 1` consecutive training problems
/// acquire none.
pub fn micro_hillary<D: Domain + ?Sized>(domain: &D, cfg: &LearnerConfig) -> Result<LearnReport> {
    cfg.validate()?;
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut report = LearnReport::default();
    let round = session(domain, cfg, &mut rng, &mut report)?;
    report.quiesced = round.quiesced;
    report.rounds.push(round);
    report.wall_time = started.elapsed();
    Ok(report)
}

/// Continues learning from `macros`, e.g. a set learned elsewhere.
pub fn micro_hillary_from<D: Domain + ?Sized>(
    domain: &D,
    cfg: &LearnerConfig,
    macros: MacroSet,
) -> Result<LearnReport> {
    cfg.validate()?;
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut report = LearnReport {
        macro_set: macros,
        ..LearnReport::default()
    };
    let round = session(domain, cfg, &mut rng, &mut report)?;
    report.quiesced = round.quiesced;
    report.rounds.push(round);
    report.wall_time = started.elapsed();
    Ok(report)
}

fn session<D: Domain + ?Sized>(
    domain: &D,
    cfg: &LearnerConfig,
    rng: &mut ChaCha8Rng,
    report: &mut LearnReport,
) -> Result<ParameterRound> {
    let mut round = ParameterRound {
        parameter: domain.parameter().unwrap_or(0),
        problems: 0,
        macros_added: 0,
        quiesced: false,
    };
    let mut q = 0;
    let mut walk = cfg.initial_walk_length;
    let mut threshold = match cfg.difficulty {
        DifficultyMode::HeuristicThreshold { initial, .. } => initial,
        DifficultyMode::WalkLength => 0,
    };
    while q <= cfg.quiescence {
        if cfg.max_problems.is_some_and(|cap| round.problems >= cap) {
            return Ok(round);
        }
        let mut stats = SearchStats::default();
        let problem = match cfg.difficulty {
            DifficultyMode::WalkLength => generate_training_problem(domain, walk, rng, &mut stats),
            DifficultyMode::HeuristicThreshold {
                increment, max_steps, ..
            } => {
                let p = generate_by_threshold(domain, threshold, max_steps, rng, &mut stats);
                threshold += increment;
                p
            }
        };
        q += 1;
        let outcome = solve_problem(
            domain,
            &problem.initial,
            &problem.goal,
            &report.macro_set,
            &cfg.escape,
            cfg.offline_filter.is_none(),
        )?;
        stats += &outcome.stats;
        let trace = (cfg.collect_traces || cfg.offline_filter.is_some()).then(|| {
            TrainingTrace::replay(domain, &problem.initial, &problem.goal, &outcome.solution)
                .expect("solutions replay")
        });
        let acquired = match (cfg.offline_filter, &trace) {
            (Some(strategy), Some(trace)) => extract_macros_at_stops(
                trace,
                &outcome.step_offsets,
                strategy,
                domain,
                &problem.goal,
                &report.macro_set,
            ),
            _ => outcome.new_macros,
        };
        let mut added = 0;
        for mut m in acquired {
            if let Some(p) = m.acquired_at.as_mut() {
                p.problem_index = report.problems_solved;
            }
            if report.macro_set.insert(m) {
                added += 1;
            }
        }
        if added > 0 {
            q = 0;
        }
        if let Some(trace) = trace.filter(|_| cfg.collect_traces) {
            report.traces.push((trace, problem.goal.clone()));
        }
        report.per_problem_applications.push(stats.operator_applications);
        report.stats += &stats;
        report.problems_solved += 1;
        round.problems += 1;
        round.macros_added += added;
        walk += cfg.walk_increment;
    }
    round.quiesced = true;
    Ok(round)
}

/// Learns at `initial_param`, then at each larger parameter starting from
/// the macros learned so far, until a whole pass adds nothing or
/// `max_param` has been run.
pub fn parametric_micro_hillary(
    family: &dyn Fn(u32) -> Result<Box<dyn Domain>>,
    initial_param: u32,
    max_param: u32,
    cfg: &LearnerConfig,
) -> Result<LearnReport> {
    cfg.validate()?;
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut report = LearnReport::default();
    let mut param = initial_param;
    loop {
        let domain = family(param)?;
        let round = session(domain.as_ref(), cfg, &mut rng, &mut report)?;
        let done = round.macros_added == 0;
        let quiesced = round.quiesced;
        report.rounds.push(round);
        if !quiesced {
            report.quiesced = false;
            break;
        }
        if done {
            report.quiesced = true;
            break;
        }
        if param >= max_param {
            report.quiesced = false;
            break;
        }
        param += 1;
    }
    report.wall_time = started.elapsed();
    Ok(report)
}
