//! `hyperforest`: checks the forest and cactus expansions in batch and
//! evaluates Pfaffians and determinants.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context as _, Result};
use clap::{Parser, Subcommand, ValueEnum};
use hyperforest::Guard;

use hyperforest_cli::commands::{
    self, Context, CountKind, HyperpfaffianArgs, ValueArgs, VerifyCactusArgs, VerifyForestArgs,
};
use hyperforest_cli::report::Report;

#[derive(Debug, Parser)]
#[command(name = "hyperforest", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Report format on stdout
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Also write the JSON report to this file
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Lift the size limits on exhaustive enumeration
    #[arg(long, global = true)]
    force: bool,
    /// Seed for --random inputs
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Record wall time in the report (the output is then no longer reproducible)
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compare a minor with its expansion over admissible forests
    VerifyForest(VerifyForestArgs),
    /// Compare the Berezin integral at each root with the sum over cacti
    VerifyCactus(VerifyCactusArgs),
    /// Count admissible pairs or cactus structures
    Count {
        #[command(subcommand)]
        kind: CountKind,
    },
    /// Pfaffian of a skew-symmetric matrix
    Pfaffian(ValueArgs),
    /// Hyperpfaffian of an antisymmetric tensor of even arity
    Hyperpfaffian(HyperpfaffianArgs),
    /// Determinant of a square matrix
    Det(ValueArgs),
}

fn run(cli: &Cli) -> Result<Report> {
    let ctx = Context {
        guard: if cli.force { Guard::Forced } else { Guard::Checked },
        seed: cli.seed,
    };
    match &cli.command {
        Command::VerifyForest(a) => commands::verify_forest(a, ctx),
        Command::VerifyCactus(a) => commands::verify_cactus(a, ctx),
        Command::Count { kind } => commands::count(kind, ctx),
        Command::Pfaffian(a) => commands::pfaffian(a, ctx),
        Command::Hyperpfaffian(a) => commands::hyperpfaffian(a, ctx),
        Command::Det(a) => commands::det(a, ctx),
    }
}

fn emit(cli: &Cli, report: &Report) -> Result<()> {
    let json = serde_json::to_string_pretty(report)?;
    if let Some(path) = &cli.out {
        fs::write(path, format!("{json}\n")).with_context(|| format!("cannot write {}", path.display()))?;
    }
    match cli.format {
        Format::Text => print!("{report}"),
        Format::Json => println!("{json}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let outcome = run(&cli).and_then(|mut report| {
        if cli.timing {
            report.set_wall_time(start.elapsed().as_secs_f64() * 1e3);
        }
        emit(&cli, &report)?;
        Ok(report.success())
    });
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            if let Some(hyperforest::Error::GuardExceeded { .. }) = e.downcast_ref() {
                eprintln!("hint: pass --force to enumerate anyway");
            }
            ExitCode::from(2)
        }
    }
}
