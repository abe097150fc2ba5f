//! `alcove-hecke`: command-line front end.
//!
//! Exit status: 0 on success, 1 when a verification fails, 2 for
//! configuration errors.

mod commands;
mod config;

use std::io::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{Failure, Report};
use config::{ConfigError, Format, JobArgs, JobConfig};

#[derive(Parser)]
#[command(name = "alcove-hecke", version, about = "J-folded alcove paths and affine Hecke algebra modules")]
struct Cli {
    /// Worker threads (default: ALCOVE_HECKE_THREADS, then all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(flatten)]
    job: JobArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Subcommand)]
enum Command {
    /// Root system data.
    RootInfo,
    /// The fundamental J-alcove, W^J and the chosen fundamental domain.
    Jgeom,
    /// Enumerate J-folded alcove paths of a word.
    Paths,
    /// Matrix of T_w in the module.
    Matrix,
    /// Run a verification suite.
    Verify,
    /// Bounded one-dimensional representations.
    Classify,
    /// Largest entry degree over a ball of the affine Weyl group.
    BoundSearch,
    /// Evaluate the conjectural bound.
    ConjectureEval,
    /// SVG picture of a rank 2 arrangement and path.
    Plot,
}

fn threads(flag: Option<usize>) -> Result<Option<usize>, ConfigError> {
    if let Some(t) = flag {
        return Ok(Some(t));
    }
    match std::env::var("ALCOVE_HECKE_THREADS") {
        Ok(s) => s.trim().parse().map(Some).map_err(|_| ConfigError::new("ALCOVE_HECKE_THREADS", format!("{s:?} is not a number"))),
        Err(_) => Ok(None),
    }
}

fn run(cmd: Command, cfg: &JobConfig) -> Result<Report, Failure> {
    match cmd {
        Command::RootInfo => commands::root_info(cfg),
        Command::Jgeom => commands::jgeom(cfg),
        Command::Paths => commands::paths(cfg),
        Command::Matrix => commands::matrix(cfg),
        Command::Verify => commands::verify(cfg),
        Command::Classify => commands::classify(cfg),
        Command::BoundSearch => commands::bound_search(cfg),
        Command::ConjectureEval => commands::conjecture_eval(cfg),
        Command::Plot => commands::plot(cfg),
    }
}

fn emit(report: &Report, cfg: &JobConfig, format: Format) -> Result<(), ConfigError> {
    let body = match (&report.raw, format) {
        (Some(raw), _) => raw.clone(),
        (None, Format::Json) => {
            let mut s = serde_json::to_string_pretty(&report.json).expect("JSON values serialise");
            s.push('\n');
            s
        }
        (None, Format::Text) => report.text.clone(),
    };
    match &cfg.output {
        Some(p) => std::fs::write(p, body).map_err(|e| ConfigError::new("output", format!("{}: {e}", p.display()))),
        None => {
            let _ = std::io::stdout().write_all(body.as_bytes());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let setup = || -> Result<(JobConfig, Format), ConfigError> {
        if let Some(t) = threads(cli.threads)? {
            if t == 0 {
                return Err(ConfigError::new("threads", "must be at least 1"));
            }
            rayon::ThreadPoolBuilder::new().num_threads(t).build_global().map_err(|e| ConfigError::new("threads", e))?;
        }
        let cfg = cli.job.resolve()?;
        let format = cfg.format()?;
        Ok((cfg, format))
    };
    let (cfg, format) = match setup() {
        Ok(x) => x,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match run(cli.command, &cfg) {
        Ok(report) => match emit(&report, &cfg, format) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
        Err(Failure::Verification(report)) => {
            let _ = emit(&report, &cfg, format);
            eprintln!("verification failed");
            ExitCode::from(1)
        }
        Err(Failure::Config(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
