use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

mod commands;
mod error;
mod output;

use error::CliError;
use output::{Emitter, Format};

/// Exact degree bounds, double-point counts and line classification for
/// schemes cut out by quadrics.
#[derive(Debug, Parser)]
#[command(name = "quadrica", version)]
struct Cli {
    /// Emit JSON (tagged with a schema version).
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    /// Emit CSV.
    #[arg(long, global = true)]
    csv: bool,
    /// Print nothing; report only through the exit code.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Degree bound, alpha bound and equality criterion for a scheme.
    Bound(BoundArgs),
    /// The bound under property N_p or N_{2,p}.
    NpBound(NpBoundArgs),
    /// Apparent double points and Veronese double-point counts.
    DoublePoints(DoublePointsArgs),
    /// Common secant lines of two varieties in general position.
    Secants(SecantsArgs),
    /// Classify the restriction of a quadric system to a line.
    ClassifyLine(ClassifyLineArgs),
    /// Classify random lines and report a histogram.
    SampleLines(SampleLinesArgs),
    /// Search for solutions of binom(d, 2) = binom(2c - 1, c - 1).
    Diophantine(DiophantineArgs),
    /// Equality cases surviving Castelnuovo's genus bound.
    ClassifyEquality(CMaxArgs),
    /// d_max(c) and its ratio to 2^c / (pi c)^(1/4).
    Asymptotics(AsymptoticsArgs),
    /// Exhaustive binomial identity checks.
    VerifyIdentities(VerifyArgs),
    /// Recompute a registered worked example and compare with its expectation.
    CaseStudy(CaseStudyArgs),
    /// Run the bound checks over a CSV or JSON catalog of descriptors.
    Audit(AuditArgs),
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    pub d: u64,
    pub n: u64,
    pub r: u64,
    #[arg(long)]
    pub alpha: Option<u64>,
    #[arg(long)]
    pub g: Option<u64>,
    #[arg(long)]
    pub h0: Option<u64>,
    /// Assumed hypothesis (N_p, N_{2,p}, K_2, dim(W)<=2n, dim(W)<=2n+1); repeatable.
    #[arg(long = "assume")]
    pub assume: Vec<String>,
}

#[derive(Debug, Args)]
pub struct NpBoundArgs {
    pub d: u64,
    pub c: u64,
    pub p: u64,
    #[arg(long)]
    pub h0: Option<u64>,
    #[arg(long)]
    pub g: Option<u64>,
    /// Dimension of the scheme; defaults to 1 when --g is given, else 0.
    #[arg(long)]
    pub n: Option<u64>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct DoublePointsArgs {
    /// Complete intersection `m:e1,e2,...` in P^m.
    #[arg(long)]
    pub ci: Option<String>,
    /// Smooth quadric of dimension k.
    #[arg(long)]
    pub quadric: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SecantsArgs {
    /// Apparent-double-point vector `a0,a1,...` of the first variety.
    #[arg(long)]
    pub a: String,
    /// Apparent-double-point vector of the second variety.
    #[arg(long)]
    pub b: String,
    #[arg(long)]
    pub r: usize,
}

#[derive(Debug, Args)]
pub struct ClassifyLineArgs {
    #[arg(long)]
    pub forms: std::path::PathBuf,
    #[arg(long)]
    pub p: String,
    #[arg(long)]
    pub q: String,
}

#[derive(Debug, Args)]
pub struct SampleLinesArgs {
    #[arg(long)]
    pub forms: std::path::PathBuf,
    #[arg(long)]
    pub trials: u64,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value_t = 4)]
    pub height: i64,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    /// Sample inside the span of integer vectors `v1;v2;...` (each `x0,..,xr`).
    #[arg(long)]
    pub subspace: Option<String>,
}

#[derive(Debug, Args)]
pub struct DiophantineArgs {
    #[arg(long)]
    pub c_max: u64,
    #[arg(long, default_value_t = 2)]
    pub c_min: u64,
    #[arg(long, default_value_t = 1)]
    pub shards: usize,
    /// Use the modular sieve engine.
    #[arg(long)]
    pub sieved: bool,
    /// Write `c,value,is_triangular` for every scanned c (single exact shard).
    #[arg(long)]
    pub scan_log: Option<std::path::PathBuf>,
}

#[derive(Debug, Args)]
pub struct CMaxArgs {
    #[arg(long)]
    pub c_max: u64,
}

#[derive(Debug, Args)]
pub struct AsymptoticsArgs {
    #[arg(long)]
    pub c_from: u64,
    #[arg(long)]
    pub c_to: u64,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub k_max: u64,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct CaseStudyArgs {
    pub name: Option<String>,
    #[arg(long)]
    pub all: bool,
}

#[derive(Debug, Args)]
pub struct AuditArgs {
    #[arg(long)]
    pub catalog: std::path::PathBuf,
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let format = if cli.json {
        Format::Json
    } else if cli.csv {
        Format::Csv
    } else {
        Format::Table
    };
    let out = Emitter { format, quiet: cli.quiet };
    match cli.command {
        Command::Bound(a) => commands::bound(&out, a),
        Command::NpBound(a) => commands::np_bound(&out, a),
        Command::DoublePoints(a) => commands::double_points(&out, a),
        Command::Secants(a) => commands::secants(&out, a),
        Command::ClassifyLine(a) => commands::classify_line(&out, a),
        Command::SampleLines(a) => commands::sample_lines(&out, a),
        Command::Diophantine(a) => commands::diophantine(&out, a),
        Command::ClassifyEquality(a) => commands::classify_equality(&out, a),
        Command::Asymptotics(a) => commands::asymptotics(&out, a),
        Command::VerifyIdentities(a) => commands::verify_identities(&out, a),
        Command::CaseStudy(a) => commands::case_study(&out, a),
        Command::Audit(a) => commands::audit(&out, a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                ErrorKind::InvalidValue | ErrorKind::ValueValidation => error::MALFORMED_NUMBER,
                _ => error::USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(error::CHECK_FAILED),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
