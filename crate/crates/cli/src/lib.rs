//! Command-line front end: transform signal files, print operation-count
//! tables, and check the fast kernels against the direct references.

pub mod accuracy;
pub mod error;
pub mod flops_table;
pub mod report;
pub mod signal;
pub mod transform;
pub mod verify;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use srdct::{Normalization, TrigKind};

pub use error::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "srdct",
    version,
    about = "Fast DCT/DST transforms with exact flop counts"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Transform a signal file (one real per line, `#` comments allowed).
    Transform(TransformArgs),
    /// Instrumented vs closed-form DCT-II operation counts.
    Flops {
        #[arg(long = "max-size", alias = "n", default_value_t = 4096)]
        max_size: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Check every kernel against its reference and every ledger against
    /// its closed form. Exits 1 on the first failure.
    Verify {
        #[arg(long = "max-size", alias = "n", default_value_t = 1024)]
        max_size: usize,
        #[arg(long, default_value_t = 5)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// RMS error per size and the fitted `c` of `c sqrt(lg N)`.
    Accuracy {
        #[arg(long = "max-size", alias = "n", default_value_t = 4096)]
        max_size: usize,
        #[arg(long, default_value_t = 5)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Clone, Args)]
pub struct TransformArgs {
    #[arg(long, value_enum, default_value_t = Kind::Dct2)]
    pub kind: Kind,
    #[arg(long, value_enum, default_value_t = Algorithm::New)]
    pub algo: Algorithm,
    /// Ignored by `--algo scaled`, whose outputs are two-sided values divided
    /// by the sidecar scales.
    #[arg(long, value_enum, default_value_t = Norm::TwoSided)]
    pub norm: Norm,
    #[arg(long)]
    pub input: PathBuf,
    /// Defaults to standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Scale sidecar for `--algo scaled`; defaults to `<output>.scales`.
    #[arg(long)]
    pub scales_output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Dct2,
    Dct3,
    Dst2,
    Dst3,
}

impl From<Kind> for TrigKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Dct2 => TrigKind::Dct2,
            Kind::Dct3 => TrigKind::Dct3,
            Kind::Dst2 => TrigKind::Dst2,
            Kind::Dst3 => TrigKind::Dst3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algorithm {
    Classic,
    New,
    Scaled,
    Naive,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Classic => "classic",
            Algorithm::New => "new",
            Algorithm::Scaled => "scaled",
            Algorithm::Naive => "naive",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Norm {
    TwoSided,
    Unitary,
    UnitarySqrtN,
}

impl From<Norm> for Normalization {
    fn from(n: Norm) -> Self {
        match n {
            Norm::TwoSided => Normalization::TwoSided,
            Norm::Unitary => Normalization::Unitary,
            Norm::UnitarySqrtN => Normalization::UnitaryTimesSqrtN,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Markdown,
}

pub fn run<W: Write>(cli: &Cli, out: &mut W) -> Result<(), CliError> {
    match &cli.command {
        Command::Transform(args) => transform::run(args, out),
        Command::Flops { max_size, format } => flops_table::run(*max_size, *format, out),
        Command::Verify {
            max_size,
            trials,
            seed,
            inject_fault,
        } => {
            let opts = verify::VerifyOptions {
                max_size: *max_size,
                trials: *trials,
                seed: *seed,
                inject_fault: *inject_fault,
            };
            verify::run(&opts, out)
        }
        Command::Accuracy {
            max_size,
            trials,
            seed,
        } => accuracy::run(*max_size, *trials, *seed, out),
    }
}
