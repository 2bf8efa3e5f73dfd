//! Command-line driver for the `horton-islands` library.
//!
//! Exit statuses: 0 pass, 1 fail with a witness, 2 inconclusive because a
//! node budget ran out, 3 usage or parse error.

pub mod commands;
pub mod format;
pub mod report;
pub mod svg;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{error::ErrorKind, Args, Parser, Subcommand, ValueEnum};

pub const EXIT_PASS: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_INCONCLUSIVE: u8 = 2;
pub const EXIT_USAGE: u8 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "islands",
    version,
    about = "Horton sets, blowups and visible-island verification"
)]
pub struct Cli {
    /// Worker threads for the parallel searches (default: all cores).
    #[arg(long, global = true)]
    pub workers: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a Horton set or its collinear-triplet blowup.
    Generate {
        kind: Kind,
        n: usize,
        /// Output file (default: stdout).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Highest parent level for which blowups are soundness-checked.
        #[arg(long, default_value_t = horton_islands::constructions::DEFAULT_SOUNDNESS_MAX_LEVEL)]
        soundness_max_level: usize,
    },
    /// Run verifiers on a point set file.
    Verify {
        input: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        checks: Vec<Check>,
        /// Island size that must not occur.
        #[arg(long, default_value_t = 13)]
        cutoff: usize,
        /// Largest allowed collinear subset.
        #[arg(long, default_value_t = 3)]
        max_collinear: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Compute one quantity on a point set file.
    Search {
        quantity: SearchQuantity,
        input: PathBuf,
        /// Hole size for `k-hole`.
        #[arg(long)]
        k: Option<usize>,
        /// Stop once a witness of this size is found.
        #[arg(long)]
        cutoff: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Draw a point set as SVG.
    Plot {
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Comma-separated indices to highlight.
        #[arg(long, value_delimiter = ',')]
        highlight: Vec<usize>,
    },
}

#[derive(Debug, Args)]
pub struct Common {
    /// Node budget per independent search task.
    #[arg(long)]
    pub budget_nodes: Option<u64>,
    /// Write the JSON run report here.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Horton,
    Blowup,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Check {
    CollinearMax,
    AboveBelow,
    Lemma7,
    Soundness,
    IslandCutoff,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SearchQuantity {
    MaxVisibleIsland,
    MaxVisibleClique,
    KHole,
    NeighborhoodIsland,
}

/// Parses `args` (including the program name) and runs the command. Returns
/// the process exit status.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_PASS,
                _ => EXIT_USAGE,
            };
        }
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(w) = cli.workers {
        if w == 0 {
            eprintln!("error: --workers must be positive");
            return EXIT_USAGE;
        }
        builder = builder.num_threads(w);
    }
    let pool = match builder.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    match pool.install(|| commands::dispatch(cli.command)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}
