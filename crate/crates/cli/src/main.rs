mod commands;
mod input;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use salvetti_core::Error;

use crate::input::Source;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    /// 1 for a failed check, 2 for bad input or usage.
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(e) => match e {
                Error::AxiomFailure(_)
                | Error::ComparisonFailure { .. }
                | Error::EquivalenceViolation(_)
                | Error::ConsistencyFailure(_)
                | Error::NotGraded(_) => 1,
                _ => 2,
            },
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "om",
    version,
    about = "Oriented matroids, Salvetti complexes and their invariants"
)]
struct Cli {
    /// Emit the machine-readable JSON report.
    #[arg(long, global = true)]
    json: bool,
    /// Built-in fixture: boolean:<n>, generic:<n>:<l>, braid:<n> or nonpappus.
    #[arg(long, global = true, value_name = "SPEC")]
    fixture: Option<String>,
    /// Input file (.cov, .arr, .chi; .cw or .poset for mh-check).
    #[arg(long = "in", global = true, value_name = "PATH")]
    input: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ComplexKind {
    Salvetti,
    Dual,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Example {
    Square,
    Triangle,
    Edge,
    Octagon,
    OctagonTrapezoid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Cov,
    Arr,
    Chi,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the covector axioms V0-V3.
    Verify,
    /// Salvetti complex: f-vector, Euler characteristic, poset and structural checks.
    Salvetti {
        #[arg(long)]
        f_vector: bool,
        #[arg(long)]
        euler: bool,
        /// Print the cell poset in .poset format.
        #[arg(long, conflicts_with_all = ["f_vector", "euler", "checks"])]
        poset: bool,
        /// Run the nerve, retraction and chain-determination checks.
        #[arg(long)]
        checks: bool,
    },
    /// Integral homology of the Salvetti order complex.
    Homology {
        #[arg(long)]
        dump_matrices: bool,
    },
    /// Orlik-Solomon ranks from no-broken-circuit sets.
    OsBetti {
        /// Element order, 1-based and comma-separated (default 1,2,...,n).
        #[arg(long, value_name = "LIST")]
        order: Option<String>,
    },
    /// Salvetti homology next to Orlik-Solomon ranks.
    GrCompare,
    /// QMH, LMH and MH checks on a CW poset.
    MhCheck {
        #[arg(long, value_enum)]
        example: Option<Example>,
        #[arg(long, value_enum, default_value = "salvetti")]
        complex: ComplexKind,
        /// List the chosen nearest and farthest vertices.
        #[arg(long)]
        omega: bool,
    },
    /// Tope posets, lattice check and distance agreement.
    Topes {
        #[arg(long)]
        poset: bool,
        #[arg(long)]
        preorder: bool,
        #[arg(long, value_name = "TOPE", allow_hyphen_values = true)]
        base: Option<String>,
    },
    /// Minimal positive paths between topes.
    Paths {
        #[arg(long, value_name = "TOPE", allow_hyphen_values = true)]
        from: Option<String>,
        #[arg(long, value_name = "TOPE", allow_hyphen_values = true)]
        to: Option<String>,
    },
    /// Search for a relabeling and reorientation between two inputs.
    Isomorphic {
        #[arg(long, value_name = "SPEC")]
        other_fixture: Option<String>,
        #[arg(long, value_name = "PATH")]
        other_in: Option<PathBuf>,
    },
    /// Write an input in one of the text formats.
    Gen {
        #[arg(long, value_enum, default_value = "cov")]
        format: Format,
    },
}

fn run(cli: &Cli) -> Result<report::Report, CliError> {
    let source = || Source::new(cli.fixture.as_deref(), cli.input.as_deref());
    match &cli.command {
        Command::Verify => commands::verify(&source()?),
        Command::Salvetti {
            f_vector,
            euler,
            poset,
            checks,
        } => commands::salvetti(&source()?, *f_vector, *euler, *poset, *checks),
        Command::Homology { dump_matrices } => commands::homology(&source()?, *dump_matrices),
        Command::OsBetti { order } => commands::os_betti(&source()?, order.as_deref()),
        Command::GrCompare => commands::gr_compare(&source()?),
        Command::MhCheck {
            example,
            complex,
            omega,
        } => {
            let src = match example {
                Some(_) if cli.fixture.is_some() || cli.input.is_some() => {
                    return Err(CliError::Usage(
                        "--example cannot be combined with --fixture or --in".into(),
                    ))
                }
                Some(_) => None,
                None => Some(source()?),
            };
            commands::mh_check(src.as_ref(), *example, *complex, *omega)
        }
        Command::Topes { poset, preorder, base } => commands::topes(&source()?, *poset, *preorder, base.as_deref()),
        Command::Paths { from, to } => commands::paths(&source()?, from.as_deref(), to.as_deref()),
        Command::Isomorphic {
            other_fixture,
            other_in,
        } => commands::isomorphic(&source()?, &Source::new(other_fixture.as_deref(), other_in.as_deref())?),
        Command::Gen { format } => commands::gen(&source()?, *format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            let mut out = std::io::stdout().lock();
            // A closed pipe is not worth a panic.
            let _ = out.write_all(report.render(cli.json).as_bytes());
            let _ = out.flush();
            ExitCode::from(if report.passed { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
