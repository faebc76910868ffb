//! `facto` command line: file ingestion, dispatch and report emission.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use facto_core::budget::Budget;
use facto_core::suites::Suite;

mod commands;
mod error;
mod input;
mod render;

pub use error::CliError;

pub const DEFAULT_MAX_ENUM: u64 = 10_000_000;

#[derive(Debug, Parser)]
#[command(name = "facto", version, about = "Factorization systems, covers and spectra on finite structures")]
pub struct Cli {
    #[command(flatten)]
    pub config: ConfigArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct ConfigArgs {
    /// Cap on elementary enumeration steps.
    #[arg(long, global = true, env = "FACTO_MAX_ENUM", default_value_t = DEFAULT_MAX_ENUM)]
    pub max_enum: u64,
    /// Largest finite field used as a test object.
    #[arg(long, global = true, default_value_t = 16)]
    pub fields: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Add wall-clock time to the report (makes it non-reproducible).
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Factor a morphism through a factorization system.
    Factorize {
        #[arg(long, value_enum)]
        system: FactorSystem,
        /// The morphism: ring hom, simplicial map, functor, G-set map or linear map.
        #[arg(long)]
        hom: PathBuf,
    },
    /// Classify a ring, a simplicial set or a functor.
    Classify {
        #[arg(long, group = "input")]
        ring: Option<PathBuf>,
        #[arg(long, group = "input")]
        object: Option<PathBuf>,
        #[arg(long, group = "input")]
        functor: Option<PathBuf>,
        /// Cover mode for simplicial sets.
        #[arg(long, value_enum, default_value_t = SSetTopology::DeltaNis)]
        topology: SSetTopology,
    },
    /// Decide whether a family covers its base.
    Cover {
        #[arg(long, value_enum)]
        topology: CoverTopology,
        #[arg(long)]
        base: PathBuf,
        #[arg(long)]
        family: PathBuf,
    },
    /// Points, lattices and specialization posets.
    Spectrum {
        #[arg(long, value_enum)]
        topology: SpecTopology,
        #[arg(long)]
        object: PathBuf,
        /// For zar and dom: the lattice instead of the point poset.
        #[arg(long)]
        lattice: bool,
    },
    /// Unique lifting of `u` against `f`.
    Orthogonal {
        /// Category file; `--u` and `--f` then name its morphisms.
        /// Without it both are ring hom files.
        #[arg(long)]
        category: Option<PathBuf>,
        #[arg(long)]
        u: String,
        #[arg(long)]
        f: String,
    },
    /// Run a property suite.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FactorSystem {
    LocCons,
    SurjMono,
    IntIntclo,
    /// Surj, then mono integral, then integrally closed.
    Triple,
    DegNdeg,
    FinDrfib,
    IniDlfib,
    EpiMono,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SSetTopology {
    DeltaNis,
    Raw,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CoverTopology {
    Zar,
    Dom,
    Fin,
    Nfin,
    DeltaNis,
    Raw,
    FinDrfib,
    IniDlfib,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SpecTopology {
    Zar,
    Dom,
    Fin,
    Nfin,
    DeltaNis,
    Raw,
    EpiMono,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Axioms,
    RingOracles,
    Duality,
    Ez,
    Catfib,
    Toposx,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Axioms => Suite::Axioms,
            SuiteArg::RingOracles => Suite::RingOracles,
            SuiteArg::Duality => Suite::Duality,
            SuiteArg::Ez => Suite::Ez,
            SuiteArg::Catfib => Suite::Catfib,
            SuiteArg::Toposx => Suite::Toposx,
            SuiteArg::All => Suite::All,
        }
    }
}

/// Validated run settings shared by every command.
#[derive(Debug)]
pub struct RunConfig {
    pub budget: Budget,
    pub field_bound: usize,
    pub format: Format,
    pub seed: u64,
}

impl RunConfig {
    fn from_args(a: &ConfigArgs) -> Result<RunConfig, CliError> {
        if a.max_enum == 0 {
            return Err(CliError::Usage("--max-enum must be positive".into()));
        }
        if a.fields < 2 {
            return Err(CliError::Usage("--fields must be at least 2".into()));
        }
        Ok(RunConfig {
            budget: Budget::new(a.max_enum),
            field_bound: a.fields,
            format: a.format,
            seed: a.seed,
        })
    }
}

/// What a command produced: the JSON result, and a DOT rendering when the
/// command has one.
pub struct Outcome {
    pub result: Value,
    pub dot: Option<String>,
}

/// Runs one command and returns the bytes to emit.
pub fn execute(cli: &Cli, argv: &[String]) -> Result<Vec<u8>, CliError> {
    let cfg = RunConfig::from_args(&cli.config)?;
    let start = Instant::now();
    let outcome = commands::dispatch(&cli.command, &cfg)?;
    if cfg.format == Format::Dot {
        return outcome
            .dot
            .map(String::into_bytes)
            .ok_or_else(|| CliError::Usage(format!("{} has no DOT output", command_name(&cli.command))));
    }
    let mut report = json!({
        "command": command_name(&cli.command),
        "args": argv,
        "config": {
            "max_enum": cli.config.max_enum,
            "fields": cfg.field_bound,
            "seed": cfg.seed,
        },
        "result": outcome.result,
        "steps": cfg.budget.used(),
    });
    if cli.config.timing {
        report["timing_ms"] = json!(start.elapsed().as_secs_f64() * 1000.0);
    }
    let mut bytes = serde_json::to_vec_pretty(&report).map_err(|e| CliError::Output(e.to_string()))?;
    bytes.push(b'\n');
    Ok(bytes)
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Factorize { .. } => "factorize",
        Command::Classify { .. } => "classify",
        Command::Cover { .. } => "cover",
        Command::Spectrum { .. } => "spectrum",
        Command::Orthogonal { .. } => "orthogonal",
        Command::Verify { .. } => "verify",
    }
}

/// Entry point for the binary; returns the process exit code.
pub fn main_with(args: impl IntoIterator<Item = OsString>) -> i32 {
    let args: Vec<OsString> = args.into_iter().collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let argv: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let bytes = match execute(&cli, &argv) {
        Ok(b) => b,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    let written = match &cli.config.out {
        Some(path) => std::fs::write(path, &bytes).map_err(|e| CliError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        }),
        None => std::io::stdout().write_all(&bytes).map_err(|e| CliError::Output(e.to_string())),
    };
    match written {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
