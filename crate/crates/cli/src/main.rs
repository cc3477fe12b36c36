//! `syz`: check grade-two instances, compute and verify syzygy bases, print degree bounds.

mod commands;
mod report;

use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "syz", version, about = "Free bases of syzygy modules of grade-two ideals")]
struct Cli {
    /// Print a JSON report instead of tables.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Auto,
    TildeM,
    M,
    N,
}

impl StrategyArg {
    fn name(self) -> &'static str {
        match self {
            StrategyArg::Auto => "auto",
            StrategyArg::TildeM => "tilde-m",
            StrategyArg::M => "m",
            StrategyArg::N => "n",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Demo {
    Ex51,
    Ex52,
}

#[derive(clap::Args, Debug)]
pub struct BasisArgs {
    #[arg(long, value_enum, default_value = "auto")]
    pub strategy: StrategyArg,
    /// Seed for the randomised steps; falls back to SYZ_SEED, then 0.
    #[arg(long, env = "SYZ_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Divide a common factor of p and q out of the instance instead of failing.
    #[arg(long)]
    pub strip_gcd: bool,
    /// Include wall-clock time in the report.
    #[arg(long)]
    pub timing: bool,
}

/// Replacements for the parameters read off the instance.
#[derive(clap::Args, Debug, Default)]
pub struct BudgetOverrides {
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long)]
    pub m: Option<u64>,
    #[arg(long)]
    pub r: Option<u64>,
    #[arg(long)]
    pub d: Option<u64>,
    #[arg(long = "delta-0")]
    pub delta_0: Option<u64>,
    #[arg(long = "delta-a")]
    pub delta_a: Option<u64>,
    #[arg(long = "delta-m")]
    pub delta_m: Option<u64>,
    #[arg(long = "delta-n")]
    pub delta_n: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate an instance file.
    Check { file: PathBuf },
    /// Compute a verified syzygy basis.
    Basis {
        file: PathBuf,
        #[command(flatten)]
        args: BasisArgs,
    },
    /// Evaluate every degree bound for the instance.
    Bounds {
        file: PathBuf,
        #[command(flatten)]
        overrides: BudgetOverrides,
    },
    /// Verify a candidate basis against an instance.
    Verify {
        file: PathBuf,
        #[arg(long)]
        basis: PathBuf,
    },
    /// Run a bundled example.
    Demo {
        #[arg(value_enum)]
        name: Demo,
        #[command(flatten)]
        args: BasisArgs,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Check { file } => commands::check(file),
        Command::Basis { file, args } => commands::basis(file, args),
        Command::Bounds { file, overrides } => commands::bounds(file, overrides),
        Command::Verify { file, basis } => commands::verify(file, basis),
        Command::Demo { name, args } => commands::demo(*name, args),
    };
    let out = if cli.json {
        serde_json::to_string_pretty(&outcome.json).expect("reports serialise") + "\n"
    } else {
        outcome.human
    };
    if outcome.code == commands::EXIT_OK || cli.json {
        print!("{out}");
    } else {
        eprint!("{out}");
    }
    ExitCode::from(outcome.code)
}
