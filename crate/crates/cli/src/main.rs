mod commands;
mod record;

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

use record::OutputRecord;

/// Exact cohomology dimensions of pluricanonical bundles on Hirzebruch
/// surfaces and blow-ups of projective space.
#[derive(Parser)]
#[command(name = "pluricanon", version, about)]
struct Cli {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,

    /// Seed for every pseudorandom choice
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// h0(-kK), the closed formula and h1(kK) on the Hirzebruch surface F_m
    Hirzebruch(HirzebruchArgs),
    /// h0(-kK) on a blow-up of P^n at points
    Blowup(BlowupArgs),
    /// Non-invariance table for a deformation family
    Family(FamilyArgs),
    /// Run the invariant suite
    Selfcheck(SelfcheckArgs),
}

#[derive(Args)]
pub struct HirzebruchArgs {
    #[arg(long)]
    pub m: u32,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub k: u32,
    /// Include the section basis description
    #[arg(long)]
    pub basis: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum GeneratedKind {
    Generic,
    Collinear,
    OnConic,
}

#[derive(Args)]
pub struct BlowupArgs {
    /// Point file: one point per line, rational coordinates
    #[arg(long, conflicts_with = "generate", required_unless_present = "generate")]
    pub points: Option<PathBuf>,
    /// Generate a plane configuration instead of reading one
    #[arg(long, value_enum, requires = "v")]
    pub generate: Option<GeneratedKind>,
    /// Number of points to generate
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub v: Option<u64>,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    pub k: u32,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum SpecialKind {
    Generic,
    Collinear,
    OnConic,
    Custom,
}

#[derive(Args)]
pub struct FamilyArgs {
    /// Kodaira family F_m -> F_{m - 2 ell}
    #[arg(long, conflicts_with = "blowup", required_unless_present = "blowup", requires_all = ["m", "ell"])]
    pub kodaira: bool,
    /// Blow-up family of P^2 at v moving points
    #[arg(long, requires = "special")]
    pub blowup: bool,
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long)]
    pub ell: Option<u32>,
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
    pub kmax: u32,
    /// Special fiber's configuration
    #[arg(long, value_enum)]
    pub special: Option<SpecialKind>,
    /// Point file for `--special custom`
    #[arg(long)]
    pub points: Option<PathBuf>,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub v: Option<u64>,
    /// Fail unless some fiber dimension jumps
    #[arg(long)]
    pub expect_jump: bool,
}

#[derive(Args)]
pub struct SelfcheckArgs {
    #[arg(long, default_value_t = pluricanon::selfcheck::DEFAULT_BUDGET)]
    pub budget: u32,
}

/// Process exit statuses.
pub mod exit {
    pub const SUCCESS: u8 = 0;
    pub const CHECK_FAILED: u8 = 1;
    pub const USAGE: u8 = 2;
}

/// A command either produces a record (possibly flagged as a failed
/// cross-check) or stops with a usage error.
pub enum Outcome {
    Done { record: OutputRecord, failed: bool },
    Usage(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Hirzebruch(a) => commands::hirzebruch(a),
        Command::Blowup(a) => commands::blowup(a, cli.seed),
        Command::Family(a) => commands::family(a, cli.seed),
        Command::Selfcheck(a) => commands::selfcheck(a, cli.seed),
    };
    match outcome {
        Outcome::Usage(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(exit::USAGE)
        }
        Outcome::Done { record, failed } => {
            let text = match cli.format {
                Format::Json => record.to_json(),
                Format::Csv => record.to_csv(),
                Format::Table => record.to_table(),
            };
            print!("{text}");
            if failed {
                ExitCode::from(exit::CHECK_FAILED)
            } else {
                ExitCode::from(exit::SUCCESS)
            }
        }
    }
}
