//! `sweep`: coupled percolation sweeps at every configured radius, one CSV
//! per radius plus a JSON estimates file with the threshold extrapolations
//! and the full config echo.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use hyperperc_core::percolation::{
    default_tau, estimate_pc, estimate_pu, sweep, PercolationError, SweepResult,
    ThresholdEstimate,
};
use hyperperc_core::LayeredGraph;
use serde::Serialize;

use crate::config::ExperimentConfig;
use crate::manifest::ManifestBuilder;
use crate::tiling_cmd::{build_patch, ensure_out_dir};
use crate::AppError;

pub fn percolation_error(e: PercolationError) -> AppError {
    match e {
        PercolationError::InvalidSweepSpec(_) => AppError::Invalid(e.to_string()),
        PercolationError::EstimatorDegenerate(_) => AppError::Runtime(e.to_string()),
    }
}

#[derive(Serialize)]
struct EstimateJson {
    value: f64,
    uncertainty: f64,
    /// `[radius, crossing]` pairs, ascending radius.
    crossings: Vec<(u32, f64)>,
}

impl From<&ThresholdEstimate> for EstimateJson {
    fn from(e: &ThresholdEstimate) -> EstimateJson {
        EstimateJson {
            value: e.value,
            uncertainty: e.uncertainty,
            crossings: e.crossings.clone(),
        }
    }
}

#[derive(Serialize)]
struct SweepJson<'a> {
    version: &'static str,
    config: &'a ExperimentConfig,
    p_grid: Vec<f64>,
    /// Per-radius giant-candidate threshold actually used.
    tau: Vec<(u32, u32)>,
    /// `None` when fewer than three radii were swept.
    pc: Option<EstimateJson>,
    pu: Option<EstimateJson>,
    /// Midpoint of the estimated middle phase.
    mid_p: Option<f64>,
    /// Mean giant-candidate count per grid point, per radius.
    mean_giants: Vec<(u32, Vec<f64>)>,
}

pub fn write_csv(result: &SweepResult, path: &PathBuf) -> Result<(), AppError> {
    let file = File::create(path)
        .map_err(|e| AppError::Io(format!("creating {}: {e}", path.display())))?;
    let mut out = BufWriter::new(file);
    let io_err = |e: std::io::Error| AppError::Io(format!("writing {}: {e}", path.display()));
    writeln!(
        out,
        "p,seed,largest,second,giants,root_to_boundary,pairs_connected,unique_giant"
    )
    .map_err(io_err)?;
    // merge order fixed by (seed, p)
    for si in 0..result.seeds.len() {
        for pi in 0..result.p_grid.len() {
            let r = result.row(pi, si);
            writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                r.p,
                r.seed,
                r.largest,
                r.second,
                r.giants,
                r.root_to_boundary,
                r.pairs_connected,
                r.unique_giant
            )
            .map_err(io_err)?;
        }
    }
    Ok(())
}

pub fn run(config: &ExperimentConfig) -> Result<(), AppError> {
    ensure_out_dir(config)?;
    let mut manifest = ManifestBuilder::new("sweep");
    let p_grid = config.p_grid();

    let mut results: Vec<SweepResult> = Vec::with_capacity(config.radii.len());
    let mut taus = Vec::with_capacity(config.radii.len());
    let mut radii = config.radii.clone();
    radii.sort_unstable();
    for &radius in &radii {
        let g = build_patch(config.symbol, radius)?;
        let tau = config.tau.unwrap_or_else(|| default_tau(g.boundary_size()));
        taus.push((radius, tau));
        let result = sweep(&g, &config.seeds, &p_grid, tau).map_err(percolation_error)?;
        let path = config.out.join(format!("sweep_r{radius}.csv"));
        write_csv(&result, &path)?;
        manifest.record(&path);
        results.push(result);
    }

    let (pc, pu) = if results.len() >= 3 {
        let pc = estimate_pc(&results).map_err(percolation_error)?;
        let pu = estimate_pu(&results).map_err(percolation_error)?;
        (Some(pc), Some(pu))
    } else {
        (None, None)
    };
    let json = SweepJson {
        version: env!("CARGO_PKG_VERSION"),
        config,
        p_grid,
        tau: taus,
        mid_p: pc
            .as_ref()
            .zip(pu.as_ref())
            .map(|(c, u)| (c.value + u.value) / 2.0),
        mean_giants: pu.as_ref().map(|e| e.mean_giants.clone()).unwrap_or_default(),
        pc: pc.as_ref().map(EstimateJson::from),
        pu: pu.as_ref().map(EstimateJson::from),
    };
    let path = config.out.join("estimates.json");
    let text = serde_json::to_string_pretty(&json)
        .map_err(|e| AppError::Runtime(format!("estimates serialization: {e}")))?;
    std::fs::write(&path, text)
        .map_err(|e| AppError::Io(format!("writing {}: {e}", path.display())))?;
    manifest.record(&path);

    if let (Some(pc), Some(pu)) = (&json.pc, &json.pu) {
        println!(
            "pc = {:.4} ± {:.4}, pu = {:.4} ± {:.4}",
            pc.value, pc.uncertainty, pu.value, pu.uncertainty
        );
    }
    manifest.write(&config.out, config)
}
