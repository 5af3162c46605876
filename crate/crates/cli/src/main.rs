use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use elx_cli::commands::{self, Strategy, DEFAULT_FUEL};
use elx_cli::report::Format;
use elx_core::oracle::RefFunction;

/// Check proof scripts, extract their programs and run them.
#[derive(Parser)]
#[command(name = "elx", version)]
struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    report: Format,
    /// Include derivations and normal forms in reports.
    #[arg(long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check every proof of a file, in order.
    Check { file: PathBuf },
    /// Print the term extracted from a proof.
    Extract { file: PathBuf, name: String },
    /// Translate a proof to an elementary affine derivation and check it.
    Eal { file: PathBuf, name: String },
    /// Apply the extracted program to numerals and normalize.
    Run {
        file: PathBuf,
        name: String,
        /// Inputs, after `--`.
        #[arg(last = true)]
        inputs: Vec<u64>,
        #[arg(long, value_enum, default_value = "normal-order")]
        strategy: Strategy,
        /// Step budget; the ELX_FUEL environment variable sets it when the
        /// flag is absent.
        #[arg(long, env = "ELX_FUEL", default_value_t = DEFAULT_FUEL)]
        fuel: u64,
    },
    /// Compare the extracted program with a reference function on a grid.
    Conform {
        file: PathBuf,
        name: String,
        /// plus | mult | pred | minus | sum:F | prod:F | F, with F one of
        /// id, succ, zero, one, double.
        #[arg(long = "ref")]
        reference: RefFunction,
        /// Largest sample value; 6 for arity up to 2, else 4.
        #[arg(long)]
        max: Option<u64>,
        #[arg(long, env = "ELX_FUEL", default_value_t = DEFAULT_FUEL)]
        fuel: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match &cli.command {
        Command::Check { file } => commands::check(file, cli.verbose),
        Command::Extract { file, name } => commands::extract(file, name),
        Command::Eal { file, name } => commands::eal(file, name, cli.verbose),
        Command::Run { file, name, inputs, strategy, fuel } => {
            commands::run(file, name, inputs, *strategy, *fuel, cli.verbose)
        }
        Command::Conform { file, name, reference, max, fuel } => {
            commands::conform(file, name, *reference, *max, *fuel)
        }
    };
    print!("{}", report.render(cli.report));
    if report.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
