//! `incidence`: arrangement statistics, inequality audits, certified
//! constants, generators and search over the text point format.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use incidence_core::Error;

#[derive(Parser)]
#[command(name = "incidence", version, about = "Exact point-line arrangement toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Arrangement statistics of a point file.
    Analyze {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Audit inequalities on a point file.
    Verify {
        file: PathBuf,
        /// Comma-separated: melchior, hirzebruch, kelly-moser, stt, main, beck, proof-trace
        #[arg(long, default_value = "melchior,hirzebruch,kelly-moser,stt,main,beck")]
        check: String,
        #[arg(long, default_value_t = 8)]
        c: i64,
        #[arg(long, default_value = "499/1000")]
        eps: String,
        #[arg(long, default_value = "103/16")]
        alpha: String,
        #[arg(long, default_value = "31827/1024")]
        beta: String,
        #[arg(long)]
        json: bool,
    },
    /// Certified incidence constants.
    Constants {
        #[arg(long, default_value_t = 71)]
        c: i64,
        #[arg(long, value_enum, default_value_t = ConstMode::Dirac)]
        mode: ConstMode,
        /// Required for --mode fixed-eps.
        #[arg(long)]
        eps: Option<String>,
        /// Sweep --c-min..=--c-max instead of a single cutoff.
        #[arg(long)]
        optimize: bool,
        #[arg(long, default_value_t = 8)]
        c_min: i64,
        #[arg(long, default_value_t = 200)]
        c_max: i64,
        #[arg(long, default_value = "103/16")]
        alpha: String,
        #[arg(long, default_value = "31827/1024")]
        beta: String,
        #[arg(long, default_value = "1/1000000000")]
        tail_width: String,
        #[arg(long)]
        json: bool,
    },
    /// Write a named configuration in the point format.
    Generate {
        #[arg(value_enum)]
        kind: Kind,
        /// Sizes: `W H` for grid, `N` otherwise.
        params: Vec<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest coordinate for random_grid.
        #[arg(long, default_value_t = 14)]
        extent: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Seeded search for sets with small Dirac degree.
    Search {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        extent: u64,
        #[arg(long, default_value_t = 1000)]
        iters: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
pub enum ConstMode {
    Dirac,
    Beck,
    FixedEps,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Kind {
    Grid,
    #[value(alias = "near_pencil")]
    NearPencil,
    Collinear,
    Parabola,
    #[value(alias = "random_grid")]
    RandomGrid,
}

/// Failure with its process exit status.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn new(code: u8, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } => 2,
            Error::DuplicatePoints { .. } | Error::IdenticalPoints => 3,
            Error::NoSolution(_)
            | Error::BadCutoff(_)
            | Error::BadEps(_)
            | Error::GenerationFailed(_)
            | Error::ClaimViolated(_)
            | Error::InvalidParameter(_)
            | Error::PreconditionViolated(_)
            | Error::CollinearInput => 5,
        };
        Failure::new(code, e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analyze { file, json } => commands::analyze(&file, json),
        Command::Verify { file, check, c, eps, alpha, beta, json } => {
            commands::verify(&file, &check, c, &eps, &alpha, &beta, json)
        }
        Command::Constants { c, mode, eps, optimize, c_min, c_max, alpha, beta, tail_width, json } => {
            let range = optimize.then_some((c_min, c_max));
            commands::constants(c, mode, eps.as_deref(), range, &alpha, &beta, &tail_width, json)
        }
        Command::Generate { kind, params, seed, extent, out } => {
            commands::generate(kind, &params, seed, extent, out.as_deref())
        }
        Command::Search { n, extent, iters, seed, json } => commands::search(n, extent, iters, seed, json),
    };
    match result {
        Ok(output) => {
            print!("{}", output.text);
            ExitCode::from(output.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
