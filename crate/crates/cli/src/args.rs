use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use permlab_core::class::DEFAULT_CAPACITY;

#[derive(Parser, Debug)]
#[command(
    name = "permlab",
    version,
    about = "Pattern classes, refined counts and series identities"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print |Av_n(basis)| for n = 0..=max-n.
    Count(CountArgs),
    /// List Av_n(basis).
    Enumerate(LevelArgs),
    /// Refined counts by statistic values.
    Stat(StatArgs),
    /// List the simple members of Av_n(basis).
    Simples(LevelArgs),
    /// Print a named series.
    Series(SeriesArgs),
    /// Run structural checks and series identities.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Args, Debug)]
pub struct EnumOpts {
    /// Comma-separated digit patterns, or `;`-separated patterns in either form.
    #[arg(long)]
    pub basis: String,
    /// Worker threads for enumeration.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub parallelism: Option<u32>,
    /// Largest level size before giving up.
    #[arg(long, default_value_t = DEFAULT_CAPACITY)]
    pub capacity: usize,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct CountArgs {
    #[command(flatten)]
    pub opts: EnumOpts,
    #[arg(long, default_value_t = 8)]
    pub max_n: usize,
    /// Directory holding cached counts.
    #[arg(long, env = "PERMLAB_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct LevelArgs {
    #[command(flatten)]
    pub opts: EnumOpts,
    #[arg(long)]
    pub n: usize,
}

#[derive(Args, Debug)]
pub struct StatArgs {
    #[command(flatten)]
    pub opts: EnumOpts,
    #[arg(long, default_value_t = 8)]
    pub max_n: usize,
    /// Comma-separated statistic ids: leading-maxima, bond, lr-min.
    #[arg(long, default_value = "")]
    pub stats: String,
    #[arg(long, default_value = "none")]
    pub filter: String,
}

#[derive(Args, Debug)]
pub struct SeriesArgs {
    #[arg(long)]
    pub name: String,
    #[arg(long, default_value_t = 12)]
    pub order: u32,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// A structural check or series identity id.
    #[arg(long, conflicts_with = "all")]
    pub id: Option<String>,
    /// Run every check and identity (the default without --id).
    #[arg(long)]
    pub all: bool,
    /// Length bound for structural checks; each check's own default if absent.
    #[arg(long)]
    pub max_n: Option<usize>,
    /// Series order; 12 for the full suite, each identity's default with --id.
    #[arg(long)]
    pub order: Option<u32>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}
