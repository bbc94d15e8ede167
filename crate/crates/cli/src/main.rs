//! `ordspace run <file>` and `ordspace suite <name>`.

mod eval;
mod problem;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "ordspace", version, about = "Exact decisions for polyhedral ordered vector spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Seed for every randomized search.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Counterexample search budget.
    #[arg(long, global = true, default_value_t = 200)]
    budget: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the queries of a problem file.
    Run { file: PathBuf },
    /// Run a named property suite.
    Suite { name: String },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

const EXIT_MISMATCH: u8 = 1;
const EXIT_INPUT: u8 = 2;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { 0 });
        }
    };
    let settings = eval::Settings { seed: cli.seed, budget: cli.budget };
    let outcome = match &cli.command {
        Command::Run { file } => report::run_file(file, &settings),
        Command::Suite { name } => report::run_suite(name, &settings),
    };
    let (rendered, code) = match outcome {
        Ok(rep) => (rep.render(cli.format), rep.exit_code()),
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_INPUT);
        }
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, rendered) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(EXIT_INPUT);
            }
        }
        None => print!("{rendered}"),
    }
    ExitCode::from(code)
}
