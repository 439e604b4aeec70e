use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod output;

/// Path partitions, detour colourings and star colourings of graph6 graphs.
#[derive(Parser, Debug)]
#[command(name = "taupart", version)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    /// Keep output order stable and leave out timings.
    #[arg(long, global = true)]
    pub deterministic: bool,

    /// Worker threads (0 = one per core).
    #[arg(long, default_value_t = 0, global = true)]
    pub threads: usize,

    /// Order cap for exhaustive searches.
    #[arg(long, env = "TAUPART_MAX_N", default_value_t = taupart::partition::DEFAULT_MAX_N, global = true)]
    pub max_n: usize,

    /// Stop at the first bad input line instead of recording it and moving on.
    #[arg(long, global = true)]
    pub fail_fast: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Detour,
    Star,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Order, size, detour order, 2-connectivity and blocks of each graph.
    Analyze {
        /// graph6 file, or '-' for stdin.
        #[arg(default_value = "-")]
        input: String,
    },
    /// (a,b)-partition certificates.
    Partition {
        #[arg(default_value = "-")]
        input: String,
        #[arg(long, requires = "b", conflicts_with = "all_pairs")]
        a: Option<usize>,
        #[arg(long, requires = "a")]
        b: Option<usize>,
        /// Every (a,b) with a+b = τ.
        #[arg(long)]
        all_pairs: bool,
        /// Print DOT with the two parts coloured instead of JSON.
        #[arg(long)]
        dot: bool,
    },
    /// Detour or star colouring certificates.
    Color {
        #[arg(default_value = "-")]
        input: String,
        #[arg(long, value_enum)]
        mode: Mode,
        /// Largest allowed monochromatic path order (detour mode).
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        dot: bool,
    },
    /// Partition sweep over a corpus; exits 0 iff no counterexample is found.
    Hunt {
        #[command(flatten)]
        corpus: CorpusArgs,
        /// Write failure witnesses here as JSON lines.
        #[arg(long)]
        witness_out: Option<PathBuf>,
    },
    /// Exact colouring numbers against their τ bounds over a corpus.
    Bounds {
        #[command(flatten)]
        corpus: CorpusArgs,
    },
    /// Re-verify certificates from scratch.
    Verify {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Ear decompositions of 2-connected graphs.
    Ears {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Print a corpus as graph6 lines.
    Generate {
        #[command(flatten)]
        corpus: CorpusArgs,
    },
}

#[derive(Args, Debug, Clone)]
pub struct CorpusArgs {
    /// graph6 file, or '-' for stdin.
    #[arg(long, conflicts_with_all = ["random", "enumerate"])]
    pub source: Option<String>,
    /// Random 2-connected graphs of this order.
    #[arg(long, conflicts_with = "enumerate")]
    pub random: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 100)]
    pub count: usize,
    /// Chords added to each random graph (default: its order).
    #[arg(long)]
    pub extra_ears: Option<usize>,
    /// All connected graphs up to this order, up to isomorphism.
    #[arg(long)]
    pub enumerate: Option<usize>,
    /// Keep only 2-connected graphs.
    #[arg(long)]
    pub two_connected: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    ExitCode::from(commands::run(cli))
}
