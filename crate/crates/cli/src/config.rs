//! Experiment configuration: TOML file, flag overrides and defaults, with
//! precedence flags > file > defaults. The resolved form is echoed verbatim
//! into every JSON artifact so a run is reproducible from its outputs.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::AppError;

/// Partial configuration as read from a TOML file; every field optional.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub symbol: Option<[u32; 2]>,
    pub radii: Option<Vec<u32>>,
    pub pmin: Option<f64>,
    pub pmax: Option<f64>,
    pub steps: Option<usize>,
    /// Explicit seed list; mutually exclusive with `seed_base`/`seed_count`.
    pub seeds: Option<Vec<u64>>,
    pub seed_base: Option<u64>,
    pub seed_count: Option<u64>,
    /// Giant-candidate threshold; omit for the per-radius default.
    pub tau: Option<u32>,
    pub sigma: Option<u32>,
    pub out: Option<PathBuf>,
    /// Probabilities for the boundary command; omit to require `--p` flags
    /// or `auto_p`.
    pub p_values: Option<Vec<f64>>,
    /// Take boundary p values from a prior sweep's estimates file.
    pub auto_p: Option<bool>,
    /// Halfplane for the boundary aggregates, as two ideal angles (ccw arc).
    pub halfplane: Option<[f64; 2]>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<FileConfig, AppError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| AppError::Io(format!("reading {}: {e}", path.display())))?;
        toml::from_str(&text)
            .map_err(|e| AppError::Invalid(format!("config {}: {e}", path.display())))
    }
}

/// Fully resolved configuration, serialized into JSON artifacts as the
/// config echo.
#[derive(Clone, Debug, Serialize)]
pub struct ExperimentConfig {
    pub symbol: [u32; 2],
    pub radii: Vec<u32>,
    pub pmin: f64,
    pub pmax: f64,
    pub steps: usize,
    pub seeds: Vec<u64>,
    /// `None` means the per-radius default threshold.
    pub tau: Option<u32>,
    pub sigma: u32,
    pub out: PathBuf,
    pub p_values: Vec<f64>,
    pub auto_p: bool,
    pub halfplane: [f64; 2],
}

/// Flag-level overrides, already parsed by clap.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub symbol: Option<(u32, u32)>,
    pub radii: Vec<u32>,
    pub pmin: Option<f64>,
    pub pmax: Option<f64>,
    pub steps: Option<usize>,
    pub seed_count: Option<u64>,
    pub seed_base: Option<u64>,
    pub tau: Option<u32>,
    pub sigma: Option<u32>,
    pub out: Option<PathBuf>,
    pub p_values: Vec<f64>,
    pub auto_p: bool,
}

pub fn parse_symbol(text: &str) -> Result<(u32, u32), AppError> {
    let parts: Vec<&str> = text.split(',').collect();
    let bad = || AppError::Invalid(format!("--symbol wants P,Q, got {text:?}"));
    if parts.len() != 2 {
        return Err(bad());
    }
    let p = parts[0].trim().parse().map_err(|_| bad())?;
    let q = parts[1].trim().parse().map_err(|_| bad())?;
    Ok((p, q))
}

pub fn resolve(file: FileConfig, flags: Overrides) -> Result<ExperimentConfig, AppError> {
    let symbol = match flags.symbol {
        Some((p, q)) => [p, q],
        None => file.symbol.unwrap_or([5, 5]),
    };
    let radii = if !flags.radii.is_empty() {
        flags.radii
    } else {
        file.radii.unwrap_or_else(|| vec![6, 8, 10])
    };
    let pmin = flags.pmin.or(file.pmin).unwrap_or(0.0);
    let pmax = flags.pmax.or(file.pmax).unwrap_or(1.0);
    let steps = flags.steps.or(file.steps).unwrap_or(51);
    if !(0.0..=1.0).contains(&pmin) || !(0.0..=1.0).contains(&pmax) || pmin >= pmax {
        return Err(AppError::Invalid(format!(
            "probability range [{pmin}, {pmax}] must be ascending within [0, 1]"
        )));
    }
    if steps < 2 {
        return Err(AppError::Invalid("steps must be at least 2".into()));
    }

    let seeds = if flags.seed_count.is_some() || flags.seed_base.is_some() {
        let base = flags.seed_base.or(file.seed_base).unwrap_or(1);
        let count = flags.seed_count.or(file.seed_count).unwrap_or(100);
        (base..base + count).collect()
    } else if let Some(list) = file.seeds {
        if file.seed_base.is_some() || file.seed_count.is_some() {
            return Err(AppError::Invalid(
                "config gives both an explicit seed list and seed_base/seed_count".into(),
            ));
        }
        list
    } else {
        let base = file.seed_base.unwrap_or(1);
        let count = file.seed_count.unwrap_or(100);
        (base..base + count).collect()
    };
    if seeds.is_empty() {
        return Err(AppError::Invalid("empty seed list".into()));
    }

    let tau = flags.tau.or(file.tau);
    if tau == Some(0) {
        return Err(AppError::Invalid("tau must be at least 1".into()));
    }
    let p_values = if !flags.p_values.is_empty() {
        flags.p_values
    } else {
        file.p_values.unwrap_or_default()
    };
    for &p in &p_values {
        if !(0.0..=1.0).contains(&p) {
            return Err(AppError::Invalid(format!("p value {p} outside [0, 1]")));
        }
    }

    Ok(ExperimentConfig {
        symbol,
        radii,
        pmin,
        pmax,
        steps,
        seeds,
        tau,
        sigma: flags.sigma.or(file.sigma).unwrap_or(2),
        out: flags.out.or(file.out).unwrap_or_else(|| PathBuf::from("run")),
        p_values,
        auto_p: flags.auto_p || file.auto_p.unwrap_or(false),
        halfplane: file.halfplane.unwrap_or([0.0, std::f64::consts::PI]),
    })
}

impl ExperimentConfig {
    /// Evenly spaced probability grid over `[pmin, pmax]`.
    pub fn p_grid(&self) -> Vec<f64> {
        let n = self.steps;
        (0..n)
            .map(|i| self.pmin + (self.pmax - self.pmin) * i as f64 / (n - 1) as f64)
            .collect()
    }
}
