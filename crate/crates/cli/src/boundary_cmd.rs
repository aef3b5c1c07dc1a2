//! `boundary`: end-chain arc statistics at configured probabilities. The
//! largest configured radius is the patch; the remaining radii form the
//! nested chain of cut radii. Probabilities come from the config or, with
//! `--auto`, from a prior sweep's estimates file in the same directory.

use std::fs::File;
use std::io::{BufWriter, Write};

use hyperperc_core::boundary::{
    halfplane_cluster_count, limit_direction_density, one_point_end_statistic,
};
use hyperperc_core::percolation::{clusters, default_tau, sample};
use hyperperc_core::{Halfplane, LayeredGraph};
use serde::Serialize;

use crate::config::ExperimentConfig;
use crate::manifest::ManifestBuilder;
use crate::tiling_cmd::{build_patch, ensure_out_dir};
use crate::AppError;

#[derive(Serialize)]
struct PerP {
    p: f64,
    chains: usize,
    median_terminal: Option<f64>,
    p90_terminal: Option<f64>,
    mean_largest_gap: f64,
    mean_halfplane_clusters: f64,
}

#[derive(Serialize)]
struct BoundaryJson<'a> {
    version: &'static str,
    config: &'a ExperimentConfig,
    patch_radius: u32,
    chain_radii: Vec<u32>,
    tau: u32,
    per_p: Vec<PerP>,
}

/// The middle-phase p recorded by a prior `sweep` run in the same output
/// directory.
fn auto_p(config: &ExperimentConfig) -> Result<f64, AppError> {
    let path = config.out.join("estimates.json");
    let missing = |detail: String| {
        AppError::Runtime(format!(
            "MissingEstimates: no usable middle-phase p at {} ({detail}); run `sweep` first",
            path.display()
        ))
    };
    let text =
        std::fs::read_to_string(&path).map_err(|e| missing(format!("read failed: {e}")))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| missing(format!("bad JSON: {e}")))?;
    value
        .get("mid_p")
        .and_then(|v| v.as_f64())
        .ok_or_else(|| missing("mid_p absent or null".into()))
}

pub fn run(config: &ExperimentConfig) -> Result<(), AppError> {
    ensure_out_dir(config)?;
    let mut manifest = ManifestBuilder::new("boundary");

    let p_values = if config.auto_p {
        vec![auto_p(config)?]
    } else if config.p_values.is_empty() {
        return Err(AppError::Invalid(
            "boundary needs probabilities: give --p values or --auto".into(),
        ));
    } else {
        let mut ps = config.p_values.clone();
        ps.sort_by(|a, b| a.partial_cmp(b).unwrap());
        ps
    };

    let mut radii = config.radii.clone();
    radii.sort_unstable();
    radii.dedup();
    if radii.len() < 2 {
        return Err(AppError::Invalid(
            "boundary needs at least two radii: the chain plus the patch radius".into(),
        ));
    }
    let patch_radius = radii.pop().unwrap();
    let g = build_patch(config.symbol, patch_radius)?;
    let tau = config.tau.unwrap_or_else(|| default_tau(g.boundary_size()));
    let h = Halfplane::new(config.halfplane[0], config.halfplane[1], false)
        .map_err(|e| AppError::Invalid(format!("halfplane: {e}")))?;

    let mut decs = Vec::new();
    let mut gap_sum = vec![0.0f64; p_values.len()];
    let mut half_sum = vec![0.0f64; p_values.len()];
    for (pi, &p) in p_values.iter().enumerate() {
        for &seed in &config.seeds {
            let dec = clusters(&sample(&g, p, seed), &g);
            gap_sum[pi] += limit_direction_density(&dec, &g, config.sigma).largest_gap;
            half_sum[pi] += halfplane_cluster_count(&dec, &g, &h, config.sigma) as f64;
            decs.push((p, seed, dec));
        }
    }
    let stat = one_point_end_statistic(
        &g,
        decs.iter().map(|(p, s, d)| (*p, *s, d)),
        &radii,
        tau,
    );

    let path = config.out.join("chains.csv");
    let file = File::create(&path)
        .map_err(|e| AppError::Io(format!("creating {}: {e}", path.display())))?;
    let mut out = BufWriter::new(file);
    let io_err = |e: std::io::Error| AppError::Io(format!("writing {}: {e}", path.display()));
    writeln!(out, "p,seed,cluster,chain,radius,arc_count,angular_diameter").map_err(io_err)?;
    for r in &stat.rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.p, r.seed, r.cluster, r.chain, r.radius, r.arc_count, r.angular_diameter
        )
        .map_err(io_err)?;
    }
    out.flush().map_err(io_err)?;
    manifest.record(&path);

    let n = config.seeds.len() as f64;
    let per_p = p_values
        .iter()
        .enumerate()
        .map(|(pi, &p)| {
            let summary = stat.per_p.iter().find(|s| s.p == p);
            PerP {
                p,
                chains: summary.map_or(0, |s| s.chains),
                median_terminal: summary.and_then(|s| s.median_terminal),
                p90_terminal: summary.and_then(|s| s.p90_terminal),
                mean_largest_gap: gap_sum[pi] / n,
                mean_halfplane_clusters: half_sum[pi] / n,
            }
        })
        .collect();
    let json = BoundaryJson {
        version: env!("CARGO_PKG_VERSION"),
        config,
        patch_radius,
        chain_radii: radii,
        tau,
        per_p,
    };
    let path = config.out.join("boundary.json");
    let text = serde_json::to_string_pretty(&json)
        .map_err(|e| AppError::Runtime(format!("aggregate serialization: {e}")))?;
    std::fs::write(&path, text)
        .map_err(|e| AppError::Io(format!("writing {}: {e}", path.display())))?;
    manifest.record(&path);
    manifest.write(&config.out, config)
}
