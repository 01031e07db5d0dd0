//! `amdist`: invariants, inverses and minors of block-graph distance
//! matrices from JSON datum files, and the identity verifier.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use amdist::verifier::MAX_SYMBOLIC_VARS;
use clap::{Parser, Subcommand, ValueEnum};

use commands::{InverseMethod, VerifyArgs, VerifyMode};
use report::{Command, Outcome, ReportFile, Status};

#[derive(Parser)]
#[command(name = "amdist", version, about = "Exact distance-matrix computations on block graphs")]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, global = true, default_value = "json")]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Cmd {
    /// det, cof and κ, directly and block by block.
    Invariants {
        /// Datum file, or `-` for stdin.
        input: String,
        /// Also report det(D + xJ); bare `--x` keeps x symbolic.
        #[arg(long, num_args = 0..=1, require_equals = true, default_missing_value = "x")]
        x: Option<String>,
    },
    /// The inverse of the distance matrix.
    Inverse {
        input: String,
        #[arg(long, value_enum, default_value = "closed")]
        method: InverseMethod,
    },
    /// Check identities symbolically and at random points.
    Verify {
        /// Identity ids, or `all`.
        ids: Vec<String>,
        #[arg(long, value_enum, default_value = "both")]
        mode: VerifyMode,
        /// Random shape, e.g. `tree:4`, `general:3x2-4`, `fixed:2x3`.
        #[arg(long)]
        shape: Option<String>,
        #[arg(long, default_value_t = 5)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = MAX_SYMBOLIC_VARS)]
        symbolic_max_vars: usize,
        /// Perturb every right-hand side; every check should then fail.
        #[arg(long)]
        mutate: bool,
    },
    /// A minor of D + xJ, by closed form and by brute force.
    Minor {
        input: String,
        #[arg(long, value_delimiter = ',')]
        remove_rows: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        remove_cols: Vec<usize>,
        /// Value of x (default 0); bare `--x` keeps x symbolic.
        #[arg(long, num_args = 0..=1, require_equals = true, default_missing_value = "x")]
        x: Option<String>,
    },
}

fn run(cmd: &Cmd) -> (&'static str, Outcome) {
    let (name, result) = match cmd {
        Cmd::Invariants { input, x } => ("invariants", commands::invariants(input, x.as_deref())),
        Cmd::Inverse { input, method } => ("inverse", commands::inverse(input, *method)),
        Cmd::Verify { ids, mode, shape, trials, seed, symbolic_max_vars, mutate } => (
            "verify",
            commands::verify(&VerifyArgs {
                ids,
                mode: *mode,
                shape: shape.as_deref(),
                trials: *trials,
                seed: *seed,
                max_vars: *symbolic_max_vars,
                mutate: *mutate,
            }),
        ),
        Cmd::Minor { input, remove_rows, remove_cols, x } => {
            ("minor", commands::minor(input, remove_rows, remove_cols, x.as_deref()))
        }
    };
    (name, result.unwrap_or_else(|e| Outcome::error(&e)))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, outcome) = run(&cli.cmd);
    let report = ReportFile {
        command: Command { subcommand: name.to_string(), args: std::env::args().skip(1).collect() },
        results: outcome.results,
        status: Status { code: outcome.code, message: outcome.message },
    };
    let text = match cli.format {
        Format::Json => serde_json::to_string_pretty(&report).expect("reports serialize") + "\n",
        Format::Text => report::to_text(&serde_json::to_value(&report).expect("reports serialize")),
    };
    let written = match &cli.output {
        Some(p) => std::fs::write(p, &text).map_err(|e| e.to_string()),
        None => {
            print!("{text}");
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("amdist: cannot write report: {e}");
        return ExitCode::from(report::code::INPUT as u8);
    }
    if report.status.code != 0 {
        eprintln!("amdist: {}", report.status.message);
    }
    ExitCode::from(report.status.code as u8)
}
