//! Percolation laboratory for hyperbolic {p,q} tilings: patch generation,
//! coupled parameter sweeps with threshold estimates, boundary arc
//! statistics and Poincaré-disc SVG scenes. All outputs are deterministic
//! under a fixed configuration.

mod boundary_cmd;
mod config;
mod manifest;
mod render_cmd;
mod sweep_cmd;
mod tiling_cmd;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::{parse_symbol, resolve, ExperimentConfig, FileConfig, Overrides};

/// Errors grouped by exit code: 2 invalid input, 3 runtime or estimator
/// failure, 4 IO.
#[derive(Debug)]
pub enum AppError {
    Invalid(String),
    Runtime(String),
    Io(String),
}

impl AppError {
    fn exit_code(&self) -> u8 {
        match self {
            AppError::Invalid(_) => 2,
            AppError::Runtime(_) => 3,
            AppError::Io(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            AppError::Invalid(m) | AppError::Runtime(m) | AppError::Io(m) => m,
        }
    }
}

#[derive(Parser)]
#[command(name = "hyperperc", version, about = "Percolation on hyperbolic {p,q} tilings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tiling patch operations
    Tiling {
        #[command(subcommand)]
        command: TilingCommand,
    },
    /// Coupled percolation sweeps and threshold estimates
    Sweep(RunArgs),
    /// End-chain arc statistics and direction densities
    Boundary(BoundaryArgs),
    /// Render a patch (optionally with a sample) as an SVG disc scene
    Render(RenderArgs),
}

#[derive(Subcommand)]
enum TilingCommand {
    /// Generate a patch and write it with a stats line
    Gen(RunArgs),
}

#[derive(Args, Clone)]
struct RunArgs {
    /// TOML config file; flags override file values
    #[arg(long)]
    config: Option<PathBuf>,
    /// Schläfli symbol as P,Q
    #[arg(long, value_name = "P,Q")]
    symbol: Option<String>,
    /// Patch radius; repeat for multi-radius commands
    #[arg(long = "radius", value_name = "R")]
    radius: Vec<u32>,
    #[arg(long)]
    pmin: Option<f64>,
    #[arg(long)]
    pmax: Option<f64>,
    /// Number of grid points over [pmin, pmax]
    #[arg(long)]
    steps: Option<usize>,
    /// Number of seeds, consecutive from the base seed
    #[arg(long = "seeds", value_name = "N")]
    seeds: Option<u64>,
    #[arg(long = "seed-base", value_name = "S")]
    seed_base: Option<u64>,
    /// Giant-candidate threshold; defaults to the square root of the
    /// boundary layer size
    #[arg(long)]
    tau: Option<u32>,
    /// Cluster-size threshold for direction and halfplane statistics
    #[arg(long)]
    sigma: Option<u32>,
    /// Output directory
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct BoundaryArgs {
    #[command(flatten)]
    run: RunArgs,
    /// Probability to analyze; repeatable
    #[arg(long = "p", value_name = "P")]
    p: Vec<f64>,
    /// Take the middle-phase p from a prior sweep's estimates file
    #[arg(long)]
    auto: bool,
}

#[derive(Args, Clone)]
struct RenderArgs {
    #[command(flatten)]
    run: RunArgs,
    /// Read the patch from a tiling file instead of generating it
    #[arg(long, value_name = "FILE")]
    graph: Option<PathBuf>,
    /// Overlay a percolation sample at this probability
    #[arg(long)]
    p: Option<f64>,
    /// Seed of the overlaid sample
    #[arg(long)]
    seed: Option<u64>,
    /// Mark boundary arc covers of giant candidates on the ideal circle
    #[arg(long)]
    arcs: bool,
    /// Output SVG path; defaults to scene.svg in the output directory
    #[arg(long, value_name = "FILE")]
    svg: Option<PathBuf>,
}

impl RunArgs {
    fn resolve(&self, p_values: Vec<f64>, auto_p: bool) -> Result<ExperimentConfig, AppError> {
        let file = match &self.config {
            Some(path) => FileConfig::load(path)?,
            None => FileConfig::default(),
        };
        let symbol = self.symbol.as_deref().map(parse_symbol).transpose()?;
        resolve(
            file,
            Overrides {
                symbol,
                radii: self.radius.clone(),
                pmin: self.pmin,
                pmax: self.pmax,
                steps: self.steps,
                seed_count: self.seeds,
                seed_base: self.seed_base,
                tau: self.tau,
                sigma: self.sigma,
                out: self.out.clone(),
                p_values,
                auto_p,
            },
        )
    }
}

fn run(cli: Cli) -> Result<(), AppError> {
    match cli.command {
        Command::Tiling {
            command: TilingCommand::Gen(args),
        } => tiling_cmd::gen(&args.resolve(Vec::new(), false)?),
        Command::Sweep(args) => sweep_cmd::run(&args.resolve(Vec::new(), false)?),
        Command::Boundary(args) => {
            let config = args.run.resolve(args.p.clone(), args.auto)?;
            boundary_cmd::run(&config)
        }
        Command::Render(args) => {
            let config = args.run.resolve(Vec::new(), false)?;
            render_cmd::run(&config, &args)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
