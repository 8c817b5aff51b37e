//! `qopt` — encode transport problems as QUBO/HOBO models, solve them with
//! exhaustive search, simulated annealing, or simulated QAOA, and benchmark
//! solvers with time-to-solution and resource-scaling reports.
//!
//! Exit codes: 0 success, 2 input error, 3 resource cap exceeded,
//! 4 undefined result (e.g. TTS with zero successes).

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

mod commands;

#[derive(Parser)]
#[command(name = "qopt", version, about = "QUBO/Ising toolkit for transport optimization")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Encode a problem document into a model document plus layout sidecar.
    Encode(EncodeArgs),
    /// Solve a model document and write a solution document.
    Solve(SolveArgs),
    /// Run a time-to-solution experiment and write a report.
    Tts(TtsArgs),
    /// Slice the QAOA angle landscape into a CSV matrix.
    Landscape(LandscapeArgs),
    /// Sweep encodings over problem sizes and report resource counts.
    Resources(ResourcesArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Encoding {
    OneHot,
    Binary,
    Traffic,
    Cvrp,
}

#[derive(Args)]
struct EncodeArgs {
    /// Problem document (TSP, traffic, or CVRP JSON).
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum)]
    encoding: Encoding,
    /// Penalty weight; defaults to the coefficient-sum dominance bound.
    #[arg(long)]
    lambda: Option<f64>,
    /// Pin city 0 to position 0 (one-hot only), dropping 2N−1 variables.
    #[arg(long)]
    fixed_start: bool,
    #[arg(long)]
    out: PathBuf,
    /// Unused by encoding (deterministic); echoed for uniformity.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Solver {
    Brute,
    Sa,
    Qaoa,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    model: PathBuf,
    /// Layout sidecar; defaults to `<model>.layout.json` when present.
    #[arg(long)]
    layout: Option<PathBuf>,
    #[arg(long, value_enum)]
    solver: Solver,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,

    // Annealing flags.
    #[arg(long, default_value_t = 1000)]
    sweeps: usize,
    /// Initial temperature; defaults to the largest |coefficient|.
    #[arg(long)]
    t0: Option<f64>,
    /// Final temperature; defaults to 5% of the largest |coefficient|.
    #[arg(long)]
    t1: Option<f64>,

    // QAOA flags.
    #[arg(long, default_value_t = 1)]
    p: usize,
    #[arg(long, default_value_t = 10)]
    restarts: usize,
    #[arg(long, default_value_t = 500)]
    max_iters: usize,
    #[arg(long, default_value_t = 1024)]
    shots: u64,
    /// Drive the optimizer with the exact expectation (default).
    #[arg(long, conflicts_with = "sampled")]
    exact: bool,
    /// Drive the optimizer with a shot-based expectation estimate.
    #[arg(long)]
    sampled: bool,

    // Caps.
    #[arg(long, default_value_t = qopt_core::model::DEFAULT_BRUTE_FORCE_CAP)]
    brute_cap: usize,
    #[arg(long, default_value_t = qopt_core::qaoa::DEFAULT_QUBIT_CAP)]
    qubit_cap: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TtsSolver {
    Brute,
    Sa,
}

#[derive(Args)]
struct TtsArgs {
    #[arg(long)]
    model: PathBuf,
    #[arg(long, value_enum)]
    solver: TtsSolver,
    #[arg(long)]
    runs: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = 1000)]
    sweeps: usize,
    #[arg(long)]
    t0: Option<f64>,
    #[arg(long)]
    t1: Option<f64>,
    /// Oracle-supplied optimum; skips the exhaustive search.
    #[arg(long, allow_negative_numbers = true)]
    optimal_energy: Option<f64>,
    #[arg(long, default_value_t = qopt_core::model::DEFAULT_BRUTE_FORCE_CAP)]
    brute_cap: usize,
}

#[derive(Args)]
struct LandscapeArgs {
    #[arg(long)]
    model: PathBuf,
    #[arg(long, default_value_t = 1)]
    p: usize,
    /// Grid resolution per axis.
    #[arg(long, default_value_t = 32)]
    grid: usize,
    /// Half-width of the slice along each direction.
    #[arg(long, default_value_t = std::f64::consts::FRAC_PI_2)]
    extent: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Slice along the first cost and mixing angles instead of random
    /// directions.
    #[arg(long)]
    axis_aligned: bool,
    /// Slice center as 2p comma-separated angles (gammas, then betas);
    /// defaults to all zeros.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    center: Option<Vec<f64>>,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = qopt_core::qaoa::DEFAULT_QUBIT_CAP)]
    qubit_cap: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EncoderChoice {
    OneHot,
    Binary,
    Traffic,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
}

#[derive(Args)]
struct ResourcesArgs {
    /// Encodings to sweep.
    #[arg(long, value_enum, value_delimiter = ',', required = true)]
    encoder: Vec<EncoderChoice>,
    /// Problem sizes (cities for TSP encodings, grid side for traffic).
    #[arg(long, value_delimiter = ',', required = true)]
    sizes: Vec<usize>,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Encode(args) => commands::encode(args),
        Command::Solve(args) => commands::solve(args),
        Command::Tts(args) => commands::tts(args),
        Command::Landscape(args) => commands::landscape(args),
        Command::Resources(args) => commands::resources(args),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(commands::exit_code(&e))
        }
    }
}
