use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qwalk::sampling::DEFAULT_SEED;

#[derive(Debug, Parser)]
#[command(
    name = "qwalk",
    version,
    about = "Exact quantum measure of the 2-site quantum random walk"
)]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// s(n), t(n), u(n), v(n) and 2^(n-2) for n = 1..max-n.
    Table(TableArgs),
    /// Quantum measure of one event.
    Mu(MuArgs),
    /// μ(A'_n) for n = 1..max-n by one or more routes.
    Complement(ComplementArgs),
    /// Run verification suites.
    Verify(VerifyArgs),
    /// Evenly spaced binomial sums at a given n.
    Sums(SumsArgs),
    /// Export matrices, vectors and sequences.
    Export(ExportArgs),
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long, default_value_t = 15)]
    pub max_n: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Route {
    Fast,
    Pairsum,
    Both,
}

#[derive(Debug, Args)]
pub struct MuArgs {
    /// Level n of the event (required with --indices and --mask).
    #[arg(long)]
    pub level: Option<u32>,

    /// Comma-separated member indices, e.g. 1,2,3.
    #[arg(long, value_delimiter = ',', num_args = 0.., group = "event")]
    pub indices: Option<Vec<u64>>,

    /// Hex mask, bit j set for member j, e.g. 0xFFFE.
    #[arg(long, group = "event")]
    pub mask: Option<String>,

    /// Elementary cylinder of a path literal starting at site 0, e.g. 01101.
    #[arg(long, group = "event")]
    pub cyl: Option<String>,

    /// Re-express the event at this (larger) level before measuring.
    #[arg(long)]
    pub refine: Option<u32>,

    #[arg(long, value_enum, default_value_t = Route::Fast)]
    pub route: Route,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Closed,
    Rowsum,
    Brute,
    All,
}

#[derive(Debug, Args)]
pub struct ComplementArgs {
    #[arg(long, default_value_t = 4)]
    pub max_n: u32,

    #[arg(long, value_enum, default_value_t = Mode::All)]
    pub mode: Mode,

    /// Also print the individual ±1 terms of the row-sum route.
    #[arg(long)]
    pub show_terms: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Suites to run (repeatable); all suites when omitted.
    #[arg(long = "suite")]
    pub suites: Vec<String>,

    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    /// Upper level for the equivalence and convergence sweeps.
    #[arg(long)]
    pub max_n: Option<u64>,

    /// Random samples per level for the randomized suites.
    #[arg(long)]
    pub samples: Option<usize>,

    /// Include wall-clock time in the report.
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Args)]
pub struct SumsArgs {
    #[arg(long, default_value_t = 12)]
    pub n: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExportObject {
    Dmatrix,
    Zvec,
    Yvec,
    Quad,
    MuComplement,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SequenceName {
    S,
    T,
    U,
    V,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    #[arg(value_enum)]
    pub object: ExportObject,

    /// Level for dmatrix, zvec and yvec.
    #[arg(long)]
    pub level: Option<u32>,

    #[arg(long, default_value_t = 1)]
    pub min_n: u64,

    #[arg(long, default_value_t = 15)]
    pub max_n: u64,

    /// Sequence written as an OEIS b-file when exporting quad with --format text.
    #[arg(long, value_enum, default_value_t = SequenceName::S)]
    pub sequence: SequenceName,
}
