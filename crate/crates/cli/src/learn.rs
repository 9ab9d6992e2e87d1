use std::path::{Path, PathBuf};

use clap::Args;
use macrolearn::learner::{micro_hillary, parametric_micro_hillary, LearnReport};
use macrolearn::Domain;
use rayon::prelude::*;

use crate::config::{Knobs, RunConfig};
use crate::{CmdResult, Failure, Outcome};

#[derive(Debug, Args)]
pub struct LearnArgs {
    #[command(flatten)]
    pub knobs: Knobs,
    /// Macro file to write.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Where to write the key-value report (default: stdout).
    #[arg(long)]
    pub record: Option<PathBuf>,
    /// Independent sessions with seeds `seed, seed+1, ...`. With more than
    /// one, macro files get a `.s<seed>` suffix before the extension.
    #[arg(long, default_value_t = 1)]
    pub trials: u64,
}

#[derive(Debug, Args)]
pub struct ParametricArgs {
    #[command(flatten)]
    pub knobs: Knobs,
    /// First parameter to train on.
    #[arg(long, default_value_t = 3)]
    pub start: u32,
    /// Last parameter to train on if quiescence never comes.
    #[arg(long, default_value_t = 10)]
    pub max_param: u32,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub record: Option<PathBuf>,
}

fn trial_path(out: &Path, seed: u64) -> PathBuf {
    let stem = out.file_stem().unwrap_or_default().to_string_lossy();
    let name = match out.extension() {
        Some(ext) => format!("{stem}.s{seed}.{}", ext.to_string_lossy()),
        None => format!("{stem}.s{seed}"),
    };
    out.with_file_name(name)
}

fn write_outputs(
    domain: &dyn Domain,
    report: &LearnReport,
    seed: u64,
    out: Option<&Path>,
    record: &mut String,
) -> std::io::Result<()> {
    if let Some(path) = out {
        std::fs::write(path, report.macro_set.to_file_string(domain))?;
    }
    record.push_str(&report.to_record(domain, seed));
    Ok(())
}

fn emit(record: &str, path: Option<&PathBuf>) -> std::io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, record),
        None => {
            print!("{record}");
            Ok(())
        }
    }
}

pub fn run(cfg: &RunConfig, args: &LearnArgs) -> CmdResult {
    if args.trials == 0 {
        return Err(Failure::Config(crate::config::ConfigError("--trials must be >= 1".into())));
    }
    let domain = cfg.build_domain()?;
    let seeds: Vec<u64> = (0..args.trials).map(|i| cfg.seed + i).collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| Failure::Other(e.to_string()))?;
    // Each session owns its RNG and counters; results come back in seed
    // order whatever the scheduling.
    let reports: Vec<_> = pool.install(|| {
        seeds
            .par_iter()
            .map(|&seed| {
                let mut learner = cfg.learner.clone();
                learner.seed = seed;
                micro_hillary(domain.as_ref(), &learner)
            })
            .collect()
    });
    let mut record = String::new();
    let mut capped = false;
    for (seed, report) in seeds.iter().zip(reports) {
        let report = report?;
        capped |= !report.quiesced;
        let out = args.out.as_ref().map(|p| {
            if args.trials > 1 {
                trial_path(p, *seed)
            } else {
                p.clone()
            }
        });
        if args.trials > 1 && !record.is_empty() {
            record.push('\n');
        }
        write_outputs(domain.as_ref(), &report, *seed, out.as_deref(), &mut record)?;
    }
    emit(&record, args.record.as_ref())?;
    if capped {
        eprintln!("note: a session stopped at --max-problems before quiescence");
    }
    Ok(Outcome::Ok)
}

pub fn run_parametric(cfg: &RunConfig, args: &ParametricArgs) -> CmdResult {
    if args.start > args.max_param {
        return Err(Failure::Config(crate::config::ConfigError(
            "--start exceeds --max-param".into(),
        )));
    }
    let family = |p: u32| cfg.build_domain_at(p).map_err(|e| macrolearn::Error::InvalidParameter(e.0));
    let report = parametric_micro_hillary(&family, args.start, args.max_param, &cfg.learner)?;
    let last = report.rounds.last().map_or(args.start, |r| r.parameter);
    let domain = cfg.build_domain_at(last)?;
    let mut record = String::new();
    write_outputs(domain.as_ref(), &report, cfg.seed, args.out.as_deref(), &mut record)?;
    emit(&record, args.record.as_ref())?;
    if !report.quiesced {
        eprintln!("note: no quiescence by parameter {}", args.max_param);
    }
    Ok(Outcome::Ok)
}
