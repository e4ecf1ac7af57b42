//! `semikernel`: analyze finite monoids, build idempotent covers, solve
//! embedding problems and compute S-ranks from the command line.

mod commands;
mod definition;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use semikernel::{CoverMode, DEFAULT_CAP};

use commands::{CliResult, Options, Output};

#[derive(Parser, Debug)]
#[command(name = "semikernel", version, about)]
struct Cli {
    /// Largest monoid any closure may enumerate.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    cap: usize,
    /// Prime used by `embed` instead of the least admissible one.
    #[arg(long, global = true)]
    prime: Option<usize>,
    /// Cover verification mode; chosen from the cap when omitted.
    #[arg(long, global = true, value_enum)]
    mode: Option<Mode>,
    /// Element checks above this many are sampled.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    sample: usize,
    /// Where `cover` writes the constructed monoid.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Full,
    Cheap,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Green's relations, minimal ideal and faithfulness of a declared monoid.
    Analyze { file: PathBuf, name: String },
    /// Idempotent-generated cover of a group.
    Cover {
        group: String,
        /// Number of points; defaults to the least admissible value.
        n: Option<usize>,
        /// Definition file declaring the group.
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Solve and verify an embedding problem, given as PROBLEM or BASE ALPHA.
    Embed {
        file: PathBuf,
        #[arg(num_args = 1..=2, required = true)]
        names: Vec<String>,
    },
    /// S-rank of a group for a simple group S.
    Srank {
        group: String,
        simple: String,
        /// Definition file declaring the groups.
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Run every acceptance criterion.
    Selftest,
}

fn run(cli: &Cli) -> CliResult<Output> {
    let opts = Options {
        cap: cli.cap,
        prime: cli.prime,
        mode: cli.mode.map(|m| match m {
            Mode::Full => CoverMode::Full,
            Mode::Cheap => CoverMode::Cheap,
        }),
        sample: cli.sample,
        out: cli.out.clone(),
        seed: cli.seed,
    };
    match &cli.command {
        Command::Analyze { file, name } => commands::analyze(file, name, &opts),
        Command::Cover { group, n, file } => commands::cover(group, *n, file.as_deref(), &opts),
        Command::Embed { file, names } => commands::embed(file, names, &opts),
        Command::Srank {
            group,
            simple,
            file,
        } => commands::s_rank(group, simple, file.as_deref(), &opts),
        Command::Selftest => Ok(commands::self_test()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(output) => {
            print!("{}", output.render());
            ExitCode::from(output.exit_code())
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
