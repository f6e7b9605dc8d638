//! `drhp`: kernel tables, resolvent and DRHP verifications, correlation
//! estimates, limit checks and Plancherel samples.
//!
//! Exit status: 0 when the run passes, 1 when a check fails or a
//! computation errors out, 2 on usage errors.

mod accept;
mod commands;
mod config;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use config::{Format, RunConfig};

#[derive(Parser, Debug)]
#[command(name = "drhp", version, about = "Discrete Riemann-Hilbert problems and the kernels of poissonized Plancherel and z-measures")]
struct Cli {
    /// TOML run configuration (seed, precision, output, format).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Seed for the random streams; overrides the configuration file.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Kernel tables.
    Kernel {
        #[command(subcommand)]
        cmd: KernelCmd,
    },
    /// Resolvent checks.
    Verify {
        #[command(subcommand)]
        cmd: VerifyCmd,
    },
    /// Closed-form and linear-system DRHP checks.
    Drhp {
        #[command(subcommand)]
        cmd: DrhpCmd,
    },
    /// Correlation functions.
    Rho(RhoArgs),
    /// Limit transitions.
    Limits {
        #[command(subcommand)]
        cmd: LimitsCmd,
    },
    /// Poissonized Plancherel samples.
    Sample(SampleArgs),
    /// Run one acceptance criterion with its fixed parameters and tolerances.
    Accept(AcceptArgs),
}

#[derive(Args, Debug)]
pub struct AcceptArgs {
    /// Criterion number.
    #[arg(value_parser = clap::value_parser!(u8).range(1..=9))]
    pub criterion: u8,
}

#[derive(Subcommand, Debug)]
enum KernelCmd {
    /// Dump a kernel over a window as (x2, y2, value).
    Eval(KernelEvalArgs),
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelFamily {
    L,
    Bessel,
    Hat,
    Hypergeometric,
}

/// `(z, z', ξ)`: complementary with `--z-prime`, principal with `--z-im`.
#[derive(Args, Debug, Clone)]
pub struct ZArgs {
    #[arg(long)]
    pub z: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub z_im: Option<f64>,
    #[arg(long)]
    pub z_prime: Option<f64>,
    #[arg(long)]
    pub xi: Option<f64>,
}

#[derive(Args, Debug)]
pub struct KernelEvalArgs {
    #[arg(long, value_enum)]
    pub family: KernelFamily,
    #[arg(long, default_value_t = 1.0)]
    pub theta: f64,
    #[arg(long, default_value_t = 5)]
    pub nmax: usize,
    #[command(flatten)]
    pub z: ZArgs,
}

#[derive(Subcommand, Debug)]
enum VerifyCmd {
    /// Closed-form kernel against the truncated resolvent `L(I+L)⁻¹`.
    Resolvent(ResolventArgs),
    /// Exact combinatorial identities: Σ dim² = n!, Frobenius round trip,
    /// conjugation symmetry, RSK first row against the longest increasing subsequence.
    Combinatorics(CombinatoricsArgs),
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResolventFamily {
    Bessel,
    Hypergeometric,
}

#[derive(Args, Debug)]
pub struct CombinatoricsArgs {
    /// Largest n for the Σ dim² = n! check.
    #[arg(long, default_value_t = 14)]
    pub burnside_max: usize,
    /// Largest n for the exhaustive Frobenius and conjugation checks.
    #[arg(long, default_value_t = 12)]
    pub frobenius_max: usize,
    #[arg(long, default_value_t = 10_000)]
    pub permutations: usize,
    /// Length of the random permutations.
    #[arg(long, default_value_t = 50)]
    pub length: usize,
}

#[derive(Args, Debug)]
pub struct ResolventArgs {
    #[arg(long, value_enum, default_value = "bessel")]
    pub family: ResolventFamily,
    #[arg(long, default_value_t = 1.0)]
    pub theta: f64,
    #[arg(long, default_value_t = 40)]
    pub nmax: usize,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[command(flatten)]
    pub z: ZArgs,
}

#[derive(Subcommand, Debug)]
enum DrhpCmd {
    /// Unimodularity, residue conditions, regularity, asymptotics and gauge relations.
    Verify(DrhpVerifyArgs),
    /// Solve the DRHP as a linear system and compare with the closed form.
    Solve(DrhpSolveArgs),
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum DrhpFamily {
    Bessel,
    Hypergeometric,
}

#[derive(Args, Debug)]
pub struct DrhpVerifyArgs {
    #[arg(long, value_enum, default_value = "bessel")]
    pub family: DrhpFamily,
    #[arg(long, default_value_t = 1.0)]
    pub theta: f64,
    #[command(flatten)]
    pub z: ZArgs,
}

#[derive(Args, Debug)]
pub struct DrhpSolveArgs {
    #[arg(long, default_value_t = 1.0)]
    pub theta: f64,
    #[arg(long, default_value_t = 30)]
    pub nmax: usize,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Det,
    Exact,
    Mc,
}

#[derive(Args, Debug)]
#[command(args_conflicts_with_subcommands = true, subcommand_negates_reqs = true)]
struct RhoArgs {
    #[command(subcommand)]
    cmd: Option<RhoCmd>,
    #[command(flatten)]
    query: RhoQueryArgs,
}

#[derive(Subcommand, Debug)]
enum RhoCmd {
    /// Run all three routes and tabulate agreement.
    Compare(RhoCompareArgs),
}

#[derive(Args, Debug)]
pub struct RhoQueryArgs {
    #[arg(long, value_enum, required = true)]
    pub method: Option<Method>,
    #[arg(long, required = true)]
    pub theta: Option<f64>,
    /// Points as doubled half-integers (`1` is 1/2, `-3` is -3/2).
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub points: Vec<i64>,
    #[arg(long, default_value_t = 200_000)]
    pub samples: usize,
    /// Enumeration cutoff; chosen by the tail gate when absent.
    #[arg(long)]
    pub n_cut: Option<usize>,
}

#[derive(Args, Debug)]
pub struct RhoCompareArgs {
    #[arg(long)]
    pub theta: f64,
    /// Queries as `;`-separated lists of doubled half-integers, e.g. `1;1,3`.
    /// Defaults to every query of size one or two on {±1/2, ±3/2, ±5/2}.
    #[arg(long, allow_hyphen_values = true)]
    pub queries: Option<String>,
    /// Monte Carlo sample count; 0 skips the Monte Carlo route.
    #[arg(long, default_value_t = 200_000)]
    pub samples: usize,
}

#[derive(Subcommand, Debug)]
enum LimitsCmd {
    /// z, z' → ∞ with ξ zz' = θ: hypergeometric against Bessel.
    Degenerate(DegenerateArgs),
    /// ξ → 1: discrete against continuous solution and h-functions.
    Xi(XiArgs),
    /// ₂F₁(a, b; x; 1 - x/y) against its Whittaker limit.
    F2w(F2wArgs),
}

#[derive(Args, Debug)]
pub struct DegenerateArgs {
    #[arg(long, default_value_t = 1.0)]
    pub theta: f64,
    #[arg(long, value_delimiter = ',', default_values_t = vec![1e2, 1e3, 1e4])]
    pub s: Vec<f64>,
}

#[derive(Args, Debug)]
pub struct XiArgs {
    #[command(flatten)]
    pub z: ZArgs,
    #[arg(long = "xi-grid", value_delimiter = ',', default_values_t = vec![0.9, 0.99])]
    pub xi_grid: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_values_t = vec![3.3, 7.7])]
    pub u: Vec<f64>,
}

#[derive(Args, Debug)]
pub struct F2wArgs {
    #[arg(long, default_value_t = 0.3, allow_negative_numbers = true)]
    pub a: f64,
    #[arg(long, default_value_t = 0.7, allow_negative_numbers = true)]
    pub b: f64,
    #[arg(long, default_value_t = 2.0)]
    pub y: f64,
    #[arg(long, value_delimiter = ',', default_values_t = vec![50.0, 200.0, 800.0])]
    pub x: Vec<f64>,
    /// Use the Whittaker index with the wrong sign (negative control).
    #[arg(long)]
    pub flip_kappa: bool,
}

#[derive(Args, Debug)]
pub struct SampleArgs {
    #[arg(long)]
    pub theta: f64,
    /// Number of samples.
    #[arg(long)]
    pub n: usize,
}

/// What a subcommand produced.
pub struct Report {
    pub json: serde_json::Value,
    pub csv: Option<String>,
    pub default_format: Format,
    pub pass: bool,
}

pub enum Failure {
    Usage(String),
    Run(String),
}

impl From<drhp_core::Error> for Failure {
    fn from(e: drhp_core::Error) -> Self {
        match e {
            drhp_core::Error::Invalid(_) => Failure::Usage(e.to_string()),
            other => Failure::Run(other.to_string()),
        }
    }
}

fn run(cli: Cli) -> Result<bool, Failure> {
    let mut cfg = RunConfig::load(cli.config.as_deref()).map_err(Failure::Usage)?;
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    if cli.output.is_some() {
        cfg.output = cli.output;
    }
    if cli.format.is_some() {
        cfg.format = cli.format;
    }
    drhp_core::specialfn::set_default_precision(cfg.precision)?;

    let report = match cli.command {
        Command::Kernel { cmd: KernelCmd::Eval(a) } => commands::kernel_eval(&a)?,
        Command::Verify { cmd: VerifyCmd::Resolvent(a) } => commands::verify_resolvent(&a)?,
        Command::Verify { cmd: VerifyCmd::Combinatorics(a) } => commands::verify_combinatorics(&a, cfg.seed)?,
        Command::Drhp { cmd: DrhpCmd::Verify(a) } => commands::drhp_verify(&a)?,
        Command::Drhp { cmd: DrhpCmd::Solve(a) } => commands::drhp_solve(&a)?,
        Command::Rho(RhoArgs { cmd: Some(RhoCmd::Compare(a)), .. }) => commands::rho_compare(&a, cfg.seed)?,
        Command::Rho(RhoArgs { cmd: None, query }) => commands::rho(&query, cfg.seed)?,
        Command::Limits { cmd: LimitsCmd::Degenerate(a) } => commands::limits_degenerate(&a)?,
        Command::Limits { cmd: LimitsCmd::Xi(a) } => commands::limits_xi(&a)?,
        Command::Limits { cmd: LimitsCmd::F2w(a) } => commands::limits_f2w(&a)?,
        Command::Sample(a) => commands::sample(&a, cfg.seed)?,
        Command::Accept(a) => accept::accept(a.criterion, cfg.seed)?,
    };

    let text = match cfg.format.unwrap_or(report.default_format) {
        Format::Json => serde_json::to_string_pretty(&report.json).map_err(|e| Failure::Run(e.to_string()))? + "\n",
        Format::Csv => report.csv.ok_or_else(|| Failure::Usage("this command has no CSV output".into()))?,
    };
    match &cfg.output {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Run(format!("writing {}: {e}", path.display())))?,
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| Failure::Run(e.to_string()))?,
    }
    Ok(report.pass)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Run(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
