//! Argument handling and subcommands of the `logchern` binary.

pub mod commands;
pub mod error;
pub mod input;

use std::fmt;
use std::fs;

use clap::{Args, Parser, Subcommand, ValueEnum};
use logchern::arrangement::ExtensionChoice;
use logchern::surface::DEFAULT_RETRIES;

use commands::Outcome;
pub use error::{CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
    Dot,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Table => "table",
            Format::Dot => "dot",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Parser)]
#[command(name = "logchern", version, about = "Log Chern numbers of arrangements of sections and their root covers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<String>,
    /// Worker threads for sweeps.
    #[arg(long, global = true, env = "LOGCHERN_WORKERS")]
    pub workers: Option<usize>,
    #[arg(long, global = true)]
    pub format: Option<Format>,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// JSON file, or `builtin:<name>`.
    #[arg(long, short)]
    pub input: String,
    /// Removed fibers, 1-based, e.g. `1-8` or `3,4,9`. Repeat for several
    /// columns in `analyze`.
    #[arg(long, allow_hyphen_values = true)]
    pub xi: Vec<String>,
}

impl InputArgs {
    fn choices(&self) -> CliResult<Vec<ExtensionChoice>> {
        self.xi.iter().map(|s| input::parse_xi(s)).collect()
    }

    fn single_choice(&self) -> CliResult<ExtensionChoice> {
        match self.choices()?.as_slice() {
            [] => Ok(ExtensionChoice::extended()),
            [one] => Ok(one.clone()),
            _ => Err(CliError::Usage("this command takes at most one --xi".into())),
        }
    }
}

#[derive(Debug, Args)]
pub struct PrimeArgs {
    #[arg(long)]
    pub prime: Option<u64>,
    /// Range `lo-hi` or a comma list; composites are dropped.
    #[arg(long)]
    pub primes: Option<String>,
}

impl PrimeArgs {
    fn list(&self) -> CliResult<Vec<u64>> {
        let mut out = Vec::new();
        if let Some(p) = self.prime {
            out.extend(input::parse_primes(&p.to_string())?);
        }
        if let Some(text) = &self.primes {
            out.extend(input::parse_primes(text)?);
        }
        if self.prime.is_none() && self.primes.is_none() {
            return Err(CliError::Usage("give --prime or --primes".into()));
        }
        Ok(out)
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Invariants, log Chern table and inequality checks.
    Analyze(InputArgs),
    /// One root cover for a single prime.
    Sample {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        prime: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        retries: u32,
    },
    /// Root covers over a range of primes.
    Converge {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        primes: PrimeArgs,
        /// Use this many primes spread evenly over the range.
        #[arg(long)]
        count: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_RETRIES)]
        retries: u32,
    },
    /// Bad-residue census.
    Badset {
        #[command(flatten)]
        primes: PrimeArgs,
    },
    /// Exact solution counts against the leading-term estimate.
    Count {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        primes: PrimeArgs,
        /// Largest prime accepted.
        #[arg(long, default_value_t = 100_000)]
        budget: u64,
    },
    /// Search removal sets for the largest log Chern ratio.
    Scan {
        #[arg(long, short)]
        input: String,
        #[arg(long, default_value_t = 4096)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Dual graph of the resolution in DOT format.
    Dot(InputArgs),
    /// Print a built-in arrangement as JSON, or list the names.
    Export { name: Option<String> },
}

/// Runs the parsed command and writes its output.
pub fn run(cli: &Cli) -> CliResult<Outcome> {
    if let Some(n) = cli.workers {
        // fails only if a pool already exists, which is harmless
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let outcome = execute(&cli.command, cli.format)?;
    match &cli.out {
        Some(path) => fs::write(path, &outcome.text).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        })?,
        None => print!("{}", outcome.text),
    }
    Ok(outcome)
}

/// Runs a command without writing anything.
pub fn execute(command: &Command, format: Option<Format>) -> CliResult<Outcome> {
    let fmt = |default: Format| format.unwrap_or(default);
    match command {
        Command::Analyze(a) => commands::cmd_analyze(&input::load_spec(&a.input)?, &a.choices()?, fmt(Format::Table)),
        Command::Sample {
            input: a,
            prime,
            seed,
            retries,
        } => commands::cmd_sample(
            &input::load_spec(&a.input)?,
            &a.single_choice()?,
            *prime,
            *seed,
            *retries,
            fmt(Format::Json),
        ),
        Command::Converge {
            input: a,
            primes,
            count,
            seed,
            retries,
        } => {
            let mut list = primes.list()?;
            if let Some(n) = count {
                list = input::spread(&list, *n);
            }
            commands::cmd_converge(
                &input::load_spec(&a.input)?,
                &a.single_choice()?,
                &list,
                *seed,
                *retries,
                fmt(Format::Csv),
            )
        }
        Command::Badset { primes } => commands::cmd_badset(&primes.list()?, fmt(Format::Csv)),
        Command::Count {
            input: a,
            primes,
            budget,
        } => commands::cmd_count(
            &input::load_spec(&a.input)?,
            &a.single_choice()?,
            &primes.list()?,
            *budget,
            fmt(Format::Csv),
        ),
        Command::Scan { input: i, budget, seed } => {
            commands::cmd_scan(&input::load_spec(i)?, *budget, *seed, fmt(Format::Table))
        }
        Command::Dot(a) => match fmt(Format::Dot) {
            Format::Dot => commands::cmd_dot(&input::load_spec(&a.input)?, &a.single_choice()?),
            other => Err(CliError::Usage(format!("dot does not support --format {other}"))),
        },
        Command::Export { name } => commands::cmd_export(name.as_deref()),
    }
}
