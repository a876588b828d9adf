//! `cobord`: Stiefel-Whitney classes, Wu classes, Steenrod normal forms and
//! unoriented-cobordism decisions for a catalog of closed manifolds.
//!
//! Exit codes: 0 success, 2 parse/usage error, 3 semantic error, 4 internal
//! invariant violation. Results go to stdout, diagnostics to stderr.

use std::panic::{self, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use cobord_cli::commands::{self, CommandOutput};
use cobord_cli::failure::Failure;

#[derive(Parser)]
#[command(name = "cobord", version, about)]
struct Cli {
    /// Emit a JSON object instead of text
    #[arg(long, global = true)]
    json: bool,

    /// Classification ceiling for `classify` (default 8, at most 12)
    #[arg(long, global = true, value_name = "N")]
    max_dim: Option<u32>,

    /// Cache directory for generator tables used by `classify`
    #[arg(long, global = true, value_name = "PATH")]
    cache_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Total Stiefel-Whitney class of each connected component
    Sw { expr: String },
    /// Wu classes of each connected component
    Wu { expr: String },
    /// All Stiefel-Whitney numbers, one per partition of the dimension
    Numbers { expr: String },
    /// Does the manifold bound? (all SW numbers zero)
    Null { expr: String },
    /// Are two manifolds cobordant? (equal SW vectors)
    Cobordant { left: String, right: String },
    /// Express the cobordism class in Dold generator monomials
    Classify { expr: String },
    /// Dimension of the cobordism group, with its nondyadic partitions
    Omega { n: u32 },
    /// Admissible (Serre-Cartan) basis of the Steenrod algebra in a degree
    Basis { n: u32 },
    /// Adem normal form of a Steenrod expression
    Adem { word: String },
    /// Bordism dimension of a space from its F2 Betti numbers
    #[command(name = "bordism-dim")]
    BordismDim {
        /// Comma-separated Betti numbers b0,b1,...
        #[arg(long, value_delimiter = ',', required = true)]
        betti: Vec<u64>,
        /// Summation degree of the tensor formula
        #[arg(long)]
        degree: u32,
    },
}

fn dispatch(cli: &Cli) -> Result<CommandOutput, Failure> {
    match &cli.command {
        Command::Sw { expr } => commands::sw(expr),
        Command::Wu { expr } => commands::wu(expr),
        Command::Numbers { expr } => commands::numbers(expr),
        Command::Null { expr } => commands::null(expr),
        Command::Cobordant { left, right } => commands::cobordant(left, right),
        Command::Classify { expr } => {
            commands::classify(expr, cli.max_dim, cli.cache_dir.as_deref())
        }
        Command::Omega { n } => commands::omega(*n),
        Command::Basis { n } => commands::basis(*n),
        Command::Adem { word } => commands::adem(word),
        Command::BordismDim { betti, degree } => commands::bordism_dim(betti, *degree),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();

    // a panic is by definition an engine bug: report it on the invariant
    // channel rather than as an abort
    panic::set_hook(Box::new(|info| {
        eprintln!("error: internal invariant violation: {info}");
    }));
    let outcome = panic::catch_unwind(AssertUnwindSafe(|| dispatch(&cli)));
    let _ = panic::take_hook();

    match outcome {
        Ok(Ok(output)) => {
            if cli.json {
                println!("{}", output.json);
            } else {
                println!("{}", output.text);
            }
            ExitCode::SUCCESS
        }
        Ok(Err(failure)) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.exit_code() as u8)
        }
        Err(_) => ExitCode::from(4),
    }
}
