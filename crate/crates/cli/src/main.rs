//! `genus`: exact genus-graded counts of permutations and set partitions.

mod cache;
mod commands;
mod range;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use genus_core::combinatorics::Kind;
use genus_core::spec::Preset;

use range::Span;

#[derive(Parser, Debug)]
#[command(name = "genus", version, about = "Genus-graded counts of permutations and set partitions")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Directory for cached enumeration tables.
    #[arg(long, global = true, env = "GENUS_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,
    /// Largest cumulant index kept in the generator (defaults to the size
    /// of each requested moment, which is always sufficient).
    #[arg(long, global = true)]
    pub cutoff: Option<u32>,
    /// Largest ground-set size the enumeration oracles may visit.
    #[arg(long, global = true)]
    pub oracle_limit: Option<usize>,
    /// Worker threads (defaults to the number of CPUs).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

fn parse_kind(s: &str) -> Result<Kind, String> {
    s.parse().map_err(|e: genus_core::Error| e.to_string())
}

fn parse_preset(s: &str) -> Result<Preset, String> {
    s.parse().map_err(|e: genus_core::Error| e.to_string())
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Enumerate all permutations or set partitions of size n by genus and type.
    Table {
        #[arg(long, value_parser = parse_kind)]
        kind: Kind,
        /// Size or inclusive range `a..b`.
        #[arg(long)]
        n: Span,
    },
    /// Moment polynomials α_n^{(g)} / m_n^{(g)}, or their specializations.
    Moments {
        #[arg(long, value_parser = parse_kind)]
        kind: Kind,
        /// Genus or inclusive range.
        #[arg(long)]
        g: Span,
        /// Size or inclusive range.
        #[arg(long)]
        n: Span,
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Specialized coefficient sequences for n = 0 … n-max.
    Series {
        #[arg(long, value_parser = parse_kind)]
        kind: Kind,
        #[arg(long)]
        g: Span,
        #[arg(long)]
        n_max: usize,
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Genus-zero cylinder moments α_{i,j} / m_{i,j}.
    Cylinder {
        #[arg(long, value_parser = parse_kind)]
        kind: Kind,
        #[arg(long)]
        i: Span,
        #[arg(long)]
        j: Span,
        /// Set every second-order cumulant κ_{a,b} to zero.
        #[arg(long)]
        set_second_order_zero: bool,
        /// Emit the bivariate series as (deg1, deg2, poly) triples instead.
        #[arg(long)]
        dump: bool,
    },
    /// Run named consistency checks; exits nonzero if any fails.
    Verify {
        /// Comma-separated check names (default: all).
        #[arg(long, value_delimiter = ',')]
        checks: Vec<String>,
        /// Size override for the selected checks.
        #[arg(long)]
        n: Option<usize>,
    },
}

#[derive(Args, Debug, Clone)]
pub struct SpecArgs {
    /// Specialization preset.
    #[arg(long, value_parser = parse_preset, conflicts_with = "custom")]
    pub preset: Option<Preset>,
    /// Explicit values `i=v,…` (v rational), all other κ_i zero.
    #[arg(long)]
    pub custom: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok((text, ok)) => {
            print!("{text}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("genus: error: {}", format!("{e:#}").replace('\n', " "));
            ExitCode::from(2)
        }
    }
}
