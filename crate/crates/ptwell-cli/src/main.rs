//! `ptwell` — machine-readable spectra and diagnostics for the imaginary
//! square well.
//!
//! Subcommands: `spectrum`, `wavefunction`, `figure1`, `verify`, `limits`.
//! Data goes to stdout, diagnostics to stderr. Exit codes: 0 success,
//! 1 bad arguments or configuration, 2 solver structural failure,
//! 3 verification disagreement.

// `!(xmin < xmax)` and friends deliberately reject NaN arguments.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod emit;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use ptwell::Error;

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_SOLVER: u8 = 2;
pub const EXIT_VERIFY: u8 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "ptwell",
    version,
    about = "Exact bound states of the PT-symmetric purely imaginary square well",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Output format.
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Solver tolerance on the secular residual.
    #[arg(long, default_value_t = 1e-13)]
    pub tol: f64,
    /// Stamp the metadata with the generation time (off by default so
    /// identical invocations emit byte-identical output).
    #[arg(long, default_value_t = false)]
    pub meta_time: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solved levels N = 0..levels-1: root, momentum, energy and the decay
    /// constant bundle, one row per level.
    Spectrum {
        /// Well parameter T (the potential step is ±iT²).
        #[arg(long = "T", allow_negative_numbers = true)]
        t: f64,
        /// Number of levels to solve.
        #[arg(long, default_value_t = 10)]
        levels: usize,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Samples of the bound-state wave function ψ(x) for one level.
    Wavefunction {
        #[arg(long = "T", allow_negative_numbers = true)]
        t: f64,
        /// Level index N.
        #[arg(long, default_value_t = 0)]
        level: u32,
        #[arg(long, default_value_t = -12.566370614359172, allow_negative_numbers = true)]
        xmin: f64,
        #[arg(long, default_value_t = 12.566370614359172, allow_negative_numbers = true)]
        xmax: f64,
        /// Number of sample points (endpoints included).
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Graphical-solution curves of the secular equation over ω ∈ [0, 1]:
    /// the left-hand side and one right-hand-side column per level.
    Figure1 {
        #[arg(long = "T", default_value_t = 1.0, allow_negative_numbers = true)]
        t: f64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 6)]
        levels: usize,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Finite-difference oracle comparison: analytic energies against the
    /// truncated-grid eigenvalues, one row per level.
    Verify {
        #[arg(long = "T", allow_negative_numbers = true)]
        t: f64,
        #[arg(long, default_value_t = 5)]
        levels: usize,
        /// Truncation half-width Λ (Dirichlet walls at ±Λ); must be a whole
        /// number of grid steps. Defaults to max(4π, π + 8/p) rounded up to
        /// a multiple of π.
        #[arg(long)]
        lambda: Option<f64>,
        /// Grid step; must divide π exactly (h = π/M).
        #[arg(long)]
        h: Option<f64>,
        /// Verification bound on |Re E_fd - E_analytic|.
        #[arg(long, default_value_t = 1e-3)]
        max_dre: f64,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Energy trajectories E_N(T) over a list of couplings, with both
    /// reference levels and signed deviations.
    Limits {
        /// Comma-separated list of T values.
        #[arg(long = "T-list", value_delimiter = ',', required = true, allow_negative_numbers = true)]
        t_list: Vec<f64>,
        #[arg(long, default_value_t = 4)]
        levels: usize,
        #[command(flatten)]
        common: CommonArgs,
    },
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Domain { .. } | Error::Config(_) => EXIT_USAGE,
        Error::Structural { .. }
        | Error::Convergence { .. }
        | Error::Eigensolver(_)
        | Error::NotConverged { .. } => EXIT_SOLVER,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // clap's default exit code for usage errors is 2, which this
            // tool reserves for solver failures
            let is_help = matches!(
                err.kind(),
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion
            );
            let _ = err.print();
            return ExitCode::from(if is_help { EXIT_OK } else { EXIT_USAGE });
        }
    };
    let outcome = match cli.command {
        Command::Spectrum { t, levels, common } => commands::spectrum(t, levels, &common),
        Command::Wavefunction {
            t,
            level,
            xmin,
            xmax,
            samples,
            common,
        } => commands::wavefunction(t, level, xmin, xmax, samples, &common),
        Command::Figure1 {
            t,
            samples,
            levels,
            common,
        } => commands::figure1(t, samples, levels, &common),
        Command::Verify {
            t,
            levels,
            lambda,
            h,
            max_dre,
            common,
        } => commands::verify(t, levels, lambda, h, max_dre, &common),
        Command::Limits {
            t_list,
            levels,
            common,
        } => commands::limits(&t_list, levels, &common),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("ptwell: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}
