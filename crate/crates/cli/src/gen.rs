use std::path::PathBuf;

use clap::{Args, ValueEnum};
use macrolearn::learner::generate_training_problem;
use macrolearn::{Problem, SearchStats};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::config::{ConfigError, Knobs, RunConfig};
use crate::{CmdResult, Failure, Outcome};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Uniform over solvable states (sliding tiles only).
    EvenPermutation,
    RandomWalk,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[command(flatten)]
    pub knobs: Knobs,
    #[arg(long, value_enum, default_value_t = Method::RandomWalk)]
    pub method: Method,
    #[arg(long, default_value_t = 10)]
    pub count: usize,
    /// Random-walk length.
    #[arg(long, default_value_t = 100)]
    pub length: usize,
    /// Output directory; files are named `problem_NNN.txt`.
    #[arg(long)]
    pub out: PathBuf,
}

pub fn run(cfg: &RunConfig, args: &GenArgs) -> CmdResult {
    let domain = cfg.build_domain()?;
    if args.method == Method::EvenPermutation && cfg.domain != "npuzzle" {
        return Err(Failure::Config(ConfigError(
            "--method even-permutation needs --domain npuzzle".into(),
        )));
    }
    std::fs::create_dir_all(&args.out)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut stats = SearchStats::default();
    for i in 0..args.count {
        let problem = match args.method {
            Method::RandomWalk => generate_training_problem(domain.as_ref(), args.length, &mut rng, &mut stats),
            Method::EvenPermutation => {
                let goal = domain.generate_goal(&mut rng);
                let initial = domain
                    .random_solvable(&goal, &mut rng)
                    .expect("sliding tiles sample solvable states");
                Problem::new(initial, goal)
            }
        };
        let path = args.out.join(format!("problem_{i:03}.txt"));
        std::fs::write(path, problem.to_file_string(domain.as_ref()))?;
    }
    println!("wrote {} problems to {}", args.count, args.out.display());
    Ok(Outcome::Ok)
}
