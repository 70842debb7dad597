//! `xmodcoh`: validate instances, check the grid and difference-map
//! identities, compute cohomology and work with extensions.
//!
//! The structured JSON report goes to stdout, a short summary to stderr.
//! Exit codes: 0 success, 1 mathematical violation, 2 input error.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use report::{Report, Status};

#[derive(Parser, Debug)]
#[command(name = "xmodcoh", version, about = "Cohomology of crossed modules with coefficients in 2-representations")]
struct Cli {
    /// Seed for every sampled check.
    #[arg(long, global = true, env = "XMODCOH_SEED", default_value_t = 0)]
    seed: u64,
    /// Include the wall-clock time in the JSON report (makes it non-reproducible).
    #[arg(long, global = true)]
    timing: bool,
    /// Compact instead of pretty-printed JSON.
    #[arg(long, global = true)]
    compact: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Source {
    /// Instance file, or `bundled:<name>` for a shipped instance.
    pub path: String,
    /// Restrict to one representation (name or position).
    #[arg(long)]
    pub rep: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the crossed-module and 2-representation axioms.
    Validate {
        #[command(flatten)]
        source: Source,
    },
    /// Run identity suites on every representation of an instance.
    Check {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        /// Sample size for targets too large to enumerate.
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Targets with at most this many points are enumerated.
        #[arg(long, default_value_t = 4096)]
        exhaustive_limit: usize,
        /// Largest p and q of the source tridegrees.
        #[arg(long, default_value_t = 1)]
        max_pq: usize,
        /// Corrupt one formula on purpose: `unswapped-delta21` or `drop:<poly>:<index>`.
        #[arg(long)]
        mutate: Option<String>,
    },
    /// dim Hⁿ of the total complex and a basis of representatives.
    Cohomology {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        degree: usize,
        /// Use the subcomplex without the C^{p,0}_0 components (p > 0).
        #[arg(long)]
        h2_subcomplex: bool,
        /// Allow degrees above 2, which have no extension interpretation.
        #[arg(long)]
        experimental: bool,
    },
    /// Build, verify, round-trip or compare extensions given by tuples.
    Extension {
        #[command(flatten)]
        source: Source,
        #[arg(value_enum)]
        action: ExtensionAction,
        /// Tuple file; the zero tuple when omitted.
        #[arg(long)]
        tuple: Option<PathBuf>,
        /// Second tuple for `iso`; a seeded coboundary shift of the first when omitted.
        #[arg(long)]
        tuple2: Option<PathBuf>,
    },
    /// List the bundled instances.
    Corpus,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuiteArg {
    Grid,
    Diff,
    Wall,
    Appendix,
    All,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtensionAction {
    Build,
    Verify,
    Roundtrip,
    Iso,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let start = Instant::now();
    let seed = cli.seed;
    let mut report = match cli.command {
        Command::Validate { source } => commands::validate(&source, seed),
        Command::Check { source, suite, samples, exhaustive_limit, max_pq, mutate } => {
            commands::check(&source, seed, commands::CheckArgs { suite, samples, exhaustive_limit, max_pq, mutate })
        }
        Command::Cohomology { source, degree, h2_subcomplex, experimental } => {
            commands::cohomology(&source, seed, degree, h2_subcomplex, experimental)
        }
        Command::Extension { source, action, tuple, tuple2 } => {
            commands::extension(&source, seed, action, tuple.as_deref(), tuple2.as_deref())
        }
        Command::Corpus => commands::corpus(seed),
    };
    let elapsed = start.elapsed().as_millis();
    if cli.timing {
        report.timing_ms = Some(elapsed);
    }
    let json = if cli.compact { serde_json::to_string(&report) } else { serde_json::to_string_pretty(&report) };
    println!("{}", json.expect("report serializes"));
    eprint!("{}", report.summary());
    if !cli.timing {
        eprintln!("  {elapsed} ms");
    }
    ExitCode::from(exit_code(&report))
}

fn exit_code(r: &Report) -> u8 {
    debug_assert!(r.status != Status::Ok || r.checks.iter().all(|c| c.pass));
    r.status.exit_code()
}
