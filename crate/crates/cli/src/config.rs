//! Run configuration: a flat TOML file whose keys mirror the long flags.
//! A flag given on the command line wins over the file; the file wins over
//! the built-in default.
//!
//! ```toml
//! domain = "npuzzle"
//! param = 4
//! heuristic = "rr"
//! seed = 7
//! quiescence = 50
//! escape = "ilb"
//! depth_limit = 100
//! ```

use std::path::{Path, PathBuf};

use clap::Args;
use macrolearn::domains::{self, DomainOptions, PuzzleHeuristic, WallSpec};
use macrolearn::learner::{FilterStrategy, LearnerConfig};
use macrolearn::solver::{DuplicatePolicy, EscapeConfig, EscapeMethod};
use macrolearn::Domain;
use serde::Deserialize;

#[derive(Debug)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<macrolearn::Error> for ConfigError {
    fn from(e: macrolearn::Error) -> Self {
        ConfigError(e.to_string())
    }
}

pub type ConfigResult<T> = Result<T, ConfigError>;

/// Knobs shared by every subcommand. All optional so that unset flags fall
/// through to the config file.
#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Knobs {
    /// npuzzle, cannibals, stones, hanoi or grid.
    #[arg(long)]
    pub domain: Option<String>,
    /// Puzzle side, person count, stones per colour, rings or grid side.
    #[arg(long)]
    pub param: Option<u32>,
    /// Puzzle heuristic: rr, rr2, md, reduction or spiral.
    #[arg(long)]
    pub heuristic: Option<String>,
    /// Draw puzzle goals at random instead of the canonical goal.
    #[arg(long)]
    pub random_goal: Option<bool>,
    /// Grid walls: `none`, `random` or a wall file.
    #[arg(long)]
    pub walls: Option<String>,
    /// Number of random grid walls (default: one per 500 cells).
    #[arg(long)]
    pub wall_count: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub quiescence: Option<usize>,
    #[arg(long)]
    pub walk_length: Option<usize>,
    #[arg(long)]
    pub walk_increment: Option<usize>,
    /// Cap on training problems per session.
    #[arg(long)]
    pub max_problems: Option<usize>,
    /// Acquire macros offline with min-to-better, min-to-min or
    /// any-to-better instead of recording escape routes directly.
    #[arg(long)]
    pub filter: Option<String>,
    /// Escape search: ilb or id.
    #[arg(long)]
    pub escape: Option<String>,
    #[arg(long)]
    pub depth_limit: Option<usize>,
    /// The `k` of the ILB breadth schedule.
    #[arg(long)]
    pub breadth_constant: Option<usize>,
    /// Duplicate detection inside limited BFS: none, path, level or call.
    #[arg(long)]
    pub duplicates: Option<String>,
    /// Let escape routes use macros as single steps.
    #[arg(long)]
    pub macros_in_escape: Option<bool>,
    /// Worker threads for independent trials.
    #[arg(long)]
    pub jobs: Option<usize>,
}

impl Knobs {
    /// Fills every unset field from `other`.
    fn or(self, other: Knobs) -> Knobs {
        Knobs {
            domain: self.domain.or(other.domain),
            param: self.param.or(other.param),
            heuristic: self.heuristic.or(other.heuristic),
            random_goal: self.random_goal.or(other.random_goal),
            walls: self.walls.or(other.walls),
            wall_count: self.wall_count.or(other.wall_count),
            seed: self.seed.or(other.seed),
            quiescence: self.quiescence.or(other.quiescence),
            walk_length: self.walk_length.or(other.walk_length),
            walk_increment: self.walk_increment.or(other.walk_increment),
            max_problems: self.max_problems.or(other.max_problems),
            filter: self.filter.or(other.filter),
            escape: self.escape.or(other.escape),
            depth_limit: self.depth_limit.or(other.depth_limit),
            breadth_constant: self.breadth_constant.or(other.breadth_constant),
            duplicates: self.duplicates.or(other.duplicates),
            macros_in_escape: self.macros_in_escape.or(other.macros_in_escape),
            jobs: self.jobs.or(other.jobs),
        }
    }

    pub fn load(flags: Knobs, file: Option<&Path>) -> ConfigResult<RunConfig> {
        let merged = match file {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| ConfigError(format!("cannot read {}: {e}", path.display())))?;
                let from_file: Knobs = toml::from_str(&text)
                    .map_err(|e| ConfigError(format!("{}: {e}", path.display())))?;
                flags.or(from_file)
            }
            None => flags,
        };
        RunConfig::resolve(merged)
    }
}

/// Fully resolved and validated configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub domain: String,
    pub param: u32,
    pub options: DomainOptions,
    pub seed: u64,
    pub learner: LearnerConfig,
    pub jobs: usize,
}

impl RunConfig {
    fn resolve(k: Knobs) -> ConfigResult<RunConfig> {
        let domain = k.domain.unwrap_or_else(|| "npuzzle".into());
        let param = k.param.unwrap_or(match domain.as_str() {
            "npuzzle" => 4,
            "hanoi" | "stones" => 5,
            "grid" => 50,
            _ => 10,
        });
        let seed = k.seed.unwrap_or(0);
        let heuristic = PuzzleHeuristic::parse(k.heuristic.as_deref().unwrap_or("rr"))?;
        let walls = match k.walls.as_deref() {
            None | Some("none") => WallSpec::None,
            Some("random") => WallSpec::Random {
                count: k.wall_count,
                seed,
            },
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| ConfigError(format!("cannot read wall file {path}: {e}")))?;
                WallSpec::parse_file(&text)?
            }
        };
        let mut escape = EscapeConfig::default();
        if let Some(m) = &k.escape {
            escape.method = EscapeMethod::parse(m)?;
        }
        if let Some(d) = k.depth_limit {
            escape.depth_limit = d;
        }
        escape.breadth_constant = k.breadth_constant.or(escape.breadth_constant);
        if let Some(d) = &k.duplicates {
            escape.duplicates = parse_duplicates(d)?;
        }
        escape.use_macros_in_escape = k.macros_in_escape.unwrap_or(false);
        let defaults = LearnerConfig::default();
        let learner = LearnerConfig {
            quiescence: k.quiescence.unwrap_or(defaults.quiescence),
            initial_walk_length: k.walk_length.unwrap_or(defaults.initial_walk_length),
            walk_increment: k.walk_increment.unwrap_or(defaults.walk_increment),
            escape,
            seed,
            max_problems: k.max_problems,
            offline_filter: k.filter.as_deref().map(parse_filter).transpose()?,
            ..defaults
        };
        learner.validate()?;
        let jobs = k.jobs.unwrap_or(1);
        if jobs == 0 {
            return Err(ConfigError("--jobs must be >= 1".into()));
        }
        let cfg = RunConfig {
            domain,
            param,
            options: DomainOptions {
                heuristic,
                random_goal: k.random_goal.unwrap_or(false),
                walls,
            },
            seed,
            learner,
            jobs,
        };
        // Surface domain errors before any work starts.
        cfg.build_domain()?;
        Ok(cfg)
    }

    pub fn build_domain(&self) -> ConfigResult<Box<dyn Domain>> {
        self.build_domain_at(self.param)
    }

    pub fn build_domain_at(&self, param: u32) -> ConfigResult<Box<dyn Domain>> {
        Ok(domains::build(&self.domain, param, &self.options)?)
    }
}

pub fn parse_filter(s: &str) -> ConfigResult<FilterStrategy> {
    match s {
        "min-to-better" => Ok(FilterStrategy::MinToBetter),
        "min-to-min" => Ok(FilterStrategy::MinToMin),
        "any-to-better" => Ok(FilterStrategy::AnyToBetter),
        other => Err(ConfigError(format!("unknown filter `{other}`"))),
    }
}

fn parse_duplicates(s: &str) -> ConfigResult<DuplicatePolicy> {
    match s {
        "none" => Ok(DuplicatePolicy::None),
        "path" => Ok(DuplicatePolicy::Path),
        "level" => Ok(DuplicatePolicy::Level),
        "call" => Ok(DuplicatePolicy::Call),
        other => Err(ConfigError(format!("unknown duplicate policy `{other}`"))),
    }
}

pub fn read_file(path: &PathBuf) -> ConfigResult<String> {
    std::fs::read_to_string(path).map_err(|e| ConfigError(format!("cannot read {}: {e}", path.display())))
}
