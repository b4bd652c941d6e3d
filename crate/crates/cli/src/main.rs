//! `lieinv`: invariant structures on four-dimensional solvable Lie algebras.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use lieinv_core::Error;

/// Exit statuses.
pub const EXIT_OK: u8 = 0;
pub const EXIT_MISMATCH: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_INPUT: u8 = 3;
pub const EXIT_RANGE: u8 = 4;

#[derive(Parser, Debug)]
#[command(name = "lieinv", version, about = "Exact complex, symplectic and Kähler structures on solvable Lie algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Which algebra to work on.
#[derive(Args, Debug, Clone)]
pub struct Target {
    /// Catalog case id, e.g. `rh3` or `d4_lambda`
    #[arg(long, conflicts_with = "file")]
    pub case: Option<String>,

    /// Parameters as `k=v,...`, e.g. `lambda=1/2`
    #[arg(long, requires = "case")]
    pub params: Option<String>,

    /// Bracket table file
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the catalog cases with parameter ranges and grid samples
    Catalog {
        #[arg(long)]
        json: bool,
    },
    /// Betti numbers and representative classes
    Cohomology {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        json: bool,
    },
    /// Integrability of a given J, or a grid search for complex subalgebras
    Complex {
        #[command(flatten)]
        target: Target,
        /// Structure as images, e.g. `e1->e2, e3->e4`
        #[arg(long)]
        j: Option<String>,
        /// Coefficient grid for the search: `default` or `small`
        #[arg(long, default_value = "default", value_parser = ["default", "small"])]
        grid: String,
        /// Hits to print
        #[arg(long, default_value_t = 10)]
        limit: usize,
        #[arg(long)]
        json: bool,
    },
    /// Closed (or exact) symplectic family and existence verdict
    Symplectic {
        #[command(flatten)]
        target: Target,
        /// Use exact forms instead of closed ones
        #[arg(long)]
        exact: bool,
        /// Check one 2-form, e.g. `e14 + e23`
        #[arg(long)]
        form: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Compatible closed forms for a J, witness and metric signature
    Kahler {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        j: String,
        /// Check one 2-form against J
        #[arg(long)]
        form: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Compare recomputed results with the embedded tables
    Verify {
        /// Every catalog case over its default grid
        #[arg(long, conflicts_with_all = ["case", "params"])]
        all: bool,
        #[arg(long)]
        case: Option<String>,
        #[arg(long, requires = "case")]
        params: Option<String>,
        /// Alternative table data file
        #[arg(long)]
        tables: Option<PathBuf>,
        /// Restrict output to one table id, e.g. `4.5`
        #[arg(long)]
        table: Option<String>,
        /// JSON lines, one record per line
        #[arg(long)]
        json: bool,
        /// Print the cross-table summary as JSON instead of records
        #[arg(long)]
        summary: bool,
        /// Treat PAPER_TYPO_SUSPECTED as failure
        #[arg(long)]
        strict: bool,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::UnknownCase(_) | Error::MissingParameter { .. } => EXIT_USAGE,
        Error::ParameterOutOfRange { .. } => EXIT_RANGE,
        _ => EXIT_INPUT,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Catalog { json } => commands::catalog(json),
        Command::Cohomology { target, json } => commands::cohomology(&target, json),
        Command::Complex { target, j, grid, limit, json } => commands::complex(&target, j.as_deref(), &grid, limit, json),
        Command::Symplectic { target, exact, form, json } => commands::symplectic(&target, exact, form.as_deref(), json),
        Command::Kahler { target, j, form, json } => commands::kahler(&target, &j, form.as_deref(), json),
        Command::Verify { all, case, params, tables, table, json, summary, strict } => {
            if !all && case.is_none() {
                eprintln!("error: verify needs --all or --case");
                return ExitCode::from(EXIT_USAGE);
            }
            let opts = commands::VerifyOptions { case, params, tables, table, json, summary, strict };
            commands::verify(&opts)
        }
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
