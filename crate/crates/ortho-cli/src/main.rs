//! `ortho` — spectra, classifications, identity checks, and invariant
//! tables for hyperbolic pants and one-holed tori, over exact rationals.
//!
//! Exit codes: 0 success, 1 internal assertion, 2 usage or invalid
//! input, 3 reference-table mismatch, 4 convergence tolerance unmet.

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::process::ExitCode;

mod commands;
mod output;

pub const EXIT_INTERNAL: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_GOLDEN: u8 = 3;
pub const EXIT_TOLERANCE: u8 = 4;

#[derive(Parser)]
#[command(name = "ortho", version, about = "ortho cosh-length spectra of hyperbolic pants and one-holed tori", long_about = None)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Pants,
    Torus,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StartArg {
    Alpha,
    Beta,
    Gamma,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TargetArg {
    Pants,
    Tori,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Json,
    Csv,
}

#[derive(Args)]
pub struct OutputOpts {
    /// Output format
    #[arg(long, value_enum, default_value = "json")]
    format: FormatArg,
    /// Write to a file instead of stdout
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the ortho cosh-length spectrum below a cutoff
    Spectrum {
        /// Surface kind
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Orthobasis cosh-lengths, e.g. 2,2,5 or 3/2,3/2,3/2
        #[arg(long)]
        triple: String,
        /// Boundary to start from (pants only; the torus has one boundary)
        #[arg(long, value_enum, default_value = "all")]
        start: StartArg,
        /// Exact rational cutoff on cosh-lengths
        #[arg(long, default_value = "1000000")]
        cutoff: String,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// List the ortho-integral surfaces of a given kind
    Classify {
        #[arg(long, value_enum)]
        target: TargetArg,
        /// Cross-check with the naive full-box scan instead of the
        /// proof-derived search space
        #[arg(long)]
        full_box: bool,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Partial sums of the boundary-length identity against the exact
    /// boundary lengths
    Basmajian {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        triple: String,
        #[arg(long, default_value = "1000000")]
        cutoff: String,
        /// Relative-error tolerance per boundary
        #[arg(long, default_value_t = 1e-2)]
        tolerance: f64,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Markoff data, quaternion algebras, ramification sets, and trace
    /// checks, diffed against the embedded reference tables
    Invariants {
        /// Restrict to one triple (default: all classified surfaces)
        #[arg(long)]
        triple: Option<String>,
        /// Surface kind for --triple (default: both)
        #[arg(long, value_enum)]
        kind: Option<KindArg>,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Reflection-orbit integrality and glued-family statistics
    Glue {
        /// Equilateral cosh-length (2 or 3) for the orbit walk
        #[arg(long)]
        a: Option<u64>,
        /// Orbit word-length depth
        #[arg(long, default_value_t = 12)]
        depth: usize,
        /// Range of glued-family indices, e.g. 1..5
        #[arg(long)]
        xn: Option<String>,
        /// Check that the pants-group orbit of this triple lies in (1/d)Z
        #[arg(long)]
        aoi_triple: Option<String>,
        /// Denominator bound for --aoi-triple
        #[arg(long, default_value_t = 1)]
        d: u64,
        #[command(flatten)]
        output: OutputOpts,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap help/version are success; everything else is usage
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Spectrum {
            kind,
            triple,
            start,
            cutoff,
            output,
        } => commands::spectrum(kind, &triple, start, &cutoff, &output),
        Command::Classify {
            target,
            full_box,
            output,
        } => commands::classify(target, full_box, &output),
        Command::Basmajian {
            kind,
            triple,
            cutoff,
            tolerance,
            output,
        } => commands::basmajian(kind, &triple, &cutoff, tolerance, &output),
        Command::Invariants {
            triple,
            kind,
            output,
        } => commands::invariants(triple.as_deref(), kind, &output),
        Command::Glue {
            a,
            depth,
            xn,
            aoi_triple,
            d,
            output,
        } => commands::glue(a, depth, xn.as_deref(), aoi_triple.as_deref(), d, &output),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
