//! `ctcsim`: validate CTC programs, compute consistent states, decide, and
//! run the demo gallery.

mod analysis;
mod demos;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ctcsim::{Error, Limits};

use report::{Outcome, Report};

#[derive(Parser, Debug)]
#[command(name = "ctcsim", version, about = "Exact simulation of Deutsch-consistent CTC computation")]
struct Cli {
    /// Allow four CTC qubits (a 256x256 natural matrix). Slow.
    #[arg(long, global = true)]
    allow_four_ctc_qubits: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Output {
    /// Emit a JSON report on stdout.
    #[arg(long)]
    json: bool,
    /// Include per-stage wall-clock timings (makes output nondeterministic).
    #[arg(long)]
    timings: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse and validate a program, listing every violation.
    Validate {
        file: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Compute the consistent state Λ(seed).
    Fixpoint {
        file: PathBuf,
        /// zero | mixed | basis:<k>
        #[arg(long, default_value = "zero", value_parser = analysis::Seed::parse)]
        seed: analysis::Seed,
        /// CR input bits for classical programs (default all zeros).
        #[arg(long)]
        cr_input: Option<String>,
        #[command(flatten)]
        out: Output,
    },
    /// Decide a program: accept, reject or ambiguous.
    Decide {
        file: PathBuf,
        #[arg(long)]
        cr_input: Option<String>,
        #[command(flatten)]
        out: Output,
    },
    /// Run a built-in demonstration.
    Demo {
        #[arg(value_enum)]
        name: demos::DemoName,
        /// Demo parameter as key=value; repeatable.
        #[arg(long = "param", value_name = "KEY=VALUE")]
        params: Vec<String>,
        #[command(flatten)]
        out: Output,
    },
    /// Compare Λ(seed) with a floating-point Cesàro average of the channel.
    Oracle {
        file: PathBuf,
        #[arg(long)]
        steps: usize,
        #[arg(long, default_value = "zero", value_parser = analysis::Seed::parse)]
        seed: analysis::Seed,
        #[command(flatten)]
        out: Output,
    },
}

/// Process exit codes.
pub mod exit {
    pub const ACCEPT: u8 = 0;
    pub const REJECT: u8 = 1;
    pub const PARSE: u8 = 2;
    pub const SEMANTIC: u8 = 3;
    pub const AMBIGUOUS: u8 = 4;
    pub const RESOURCE: u8 = 5;
}

pub fn error_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) | Error::Input(_) => exit::PARSE,
        Error::Resource(_) => exit::RESOURCE,
        _ => exit::SEMANTIC,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut limits = Limits::default();
    if cli.allow_four_ctc_qubits {
        eprintln!("warning: four CTC qubits enabled; the exact pipeline may take a long time");
        limits = limits.with_four_ctc_qubits();
    }
    let (outcome, out) = match cli.command {
        Command::Validate { file, out } => (analysis::validate(&file), out),
        Command::Fixpoint { file, seed, cr_input, out } => {
            (analysis::fixpoint(&file, &seed, cr_input.as_deref(), &limits, out.timings), out)
        }
        Command::Decide { file, cr_input, out } => {
            (analysis::decide(&file, cr_input.as_deref(), &limits, out.timings), out)
        }
        Command::Demo { name, params, out } => (demos::run(name, &params, &limits, out.timings), out),
        Command::Oracle { file, steps, seed, out } => (analysis::oracle(&file, steps, &seed, &limits), out),
    };
    match outcome {
        Ok(Outcome { report, code }) => {
            emit(&report, out.json);
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(error_code(&e))
        }
    }
}

fn emit(report: &Report, json: bool) {
    if json {
        println!("{}", serde_json::to_string_pretty(report).expect("report serializes"));
    } else {
        print!("{}", report.to_text());
    }
}
