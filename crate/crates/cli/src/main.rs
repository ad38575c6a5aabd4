mod commands;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cubenets::enumerate::Method;

/// Ridge unfoldings of the n-cube.
#[derive(Parser, Debug)]
#[command(name = "cubenets", version)]
struct Cli {
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true, env = "CUBENETS_JOBS")]
    jobs: Option<usize>,

    /// Write to this file instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Develop a roll word or a spanning tree into the lattice.
    Unfold(UnfoldArgs),
    /// List spanning trees, paths or cycles up to symmetry.
    Enumerate(EnumerateArgs),
    /// Check that unfoldings are nets and tally their cube partitions.
    Verify(VerifyArgs),
    /// List cube partitions, optionally realizing each as a roll word.
    Partitions(PartitionsArgs),
    /// List chord diagrams up to dihedral symmetry.
    Chords(ChordsArgs),
    /// Cycle, path, ter-path and ext-path counts by dimension.
    Table(TableArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Svg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Trees,
    Paths,
    Cycles,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Direct,
    Chords,
    Both,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Direct => Method::Direct,
            MethodArg::Chords => Method::Chords,
            MethodArg::Both => Method::Both,
        }
    }
}

#[derive(Args, Debug)]
pub struct UnfoldArgs {
    #[arg(long)]
    pub dim: usize,
    /// Comma separated directions such as `+1,-2,+1`.
    #[arg(long, conflicts_with = "tree", required_unless_present = "tree", allow_hyphen_values = true)]
    pub rolls: Option<String>,
    /// Comma separated edges such as `1-2,1-2*,2-3`.
    #[arg(long)]
    pub tree: Option<String>,
    /// Facet placed at the origin.
    #[arg(long, default_value = "1")]
    pub base: String,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub dim: usize,
    #[arg(long, value_enum)]
    pub kind: Kind,
    /// Print only the number of classes.
    #[arg(long)]
    pub count_only: bool,
    #[arg(long, value_enum, default_value_t = MethodArg::Direct)]
    pub method: MethodArg,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long)]
    pub dim: usize,
    /// Check one representative of every tree class.
    #[arg(long, conflicts_with = "samples", required_unless_present = "samples")]
    pub exhaustive: bool,
    /// Check this many uniformly random spanning trees.
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Largest dimension accepted with --exhaustive.
    #[arg(long, default_value_t = 4)]
    pub exhaustive_limit: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct PartitionsArgs {
    #[arg(long)]
    pub dim: usize,
    /// Add a roll word and its net for each partition.
    #[arg(long)]
    pub realize: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct ChordsArgs {
    /// Diagrams on `2 * dim` vertices.
    #[arg(long)]
    pub dim: usize,
    #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1), default_value_t = 0)]
    pub loops: u8,
    /// Add the number of distinct ext-path nets of each loopless diagram.
    #[arg(long)]
    pub ext_net_counts: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    #[arg(long)]
    pub max_dim: usize,
    #[arg(long, value_enum, default_value_t = MethodArg::Chords)]
    pub method: MethodArg,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

/// Settings shared by every command.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub jobs: Option<usize>,
    pub output: Option<PathBuf>,
}

/// How a command ended when it did not succeed.
#[derive(Debug)]
pub enum Failure {
    /// Bad input or an unsupported request (exit 2).
    Usage(String),
    /// A checked property failed (exit 1). The report is still written.
    Verification { report: String, reason: String },
}

impl From<cubenets::Error> for Failure {
    fn from(e: cubenets::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn emit(config: &RunConfig, text: &str) -> io::Result<()> {
    match &config.output {
        Some(path) => fs::write(path, text),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = RunConfig {
        jobs: cli.jobs,
        output: cli.output,
    };
    if let Some(jobs) = config.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let result = match &cli.command {
        Command::Unfold(a) => commands::unfold(a),
        Command::Enumerate(a) => commands::enumerate(a),
        Command::Verify(a) => commands::verify(a),
        Command::Partitions(a) => commands::partitions(a),
        Command::Chords(a) => commands::chords(a),
        Command::Table(a) => commands::table(a),
    };
    let (text, code) = match result {
        Ok(text) => (text, 0),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Verification { report, reason }) => {
            eprintln!("verification failed: {reason}");
            (report, 1)
        }
    };
    if let Err(e) = emit(&config, &text) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
