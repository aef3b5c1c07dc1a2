//! `tiling gen`: generate a patch per configured radius, serialize it and
//! print a stats line.

use std::fs::File;
use std::io::BufWriter;

use hyperperc_core::tiling::{write_tiling, TilingError};
use hyperperc_core::{SchlafliSymbol, TilingGraph};

use crate::config::ExperimentConfig;
use crate::manifest::ManifestBuilder;
use crate::AppError;

/// Map core tiling errors onto exit-code classes: bad symbols and oversized
/// patches are invalid input, everything else is IO.
pub fn tiling_error(e: TilingError) -> AppError {
    match e {
        TilingError::InvalidSymbol { .. } | TilingError::PatchTooLarge { .. } => {
            AppError::Invalid(e.to_string())
        }
        TilingError::Io(_) | TilingError::Format(_) => AppError::Io(e.to_string()),
        other => AppError::Runtime(other.to_string()),
    }
}

pub fn build_patch(symbol: [u32; 2], radius: u32) -> Result<TilingGraph, AppError> {
    let sym = SchlafliSymbol::new(symbol[0], symbol[1]).map_err(tiling_error)?;
    TilingGraph::generate(sym, radius).map_err(tiling_error)
}

pub fn ensure_out_dir(config: &ExperimentConfig) -> Result<(), AppError> {
    std::fs::create_dir_all(&config.out)
        .map_err(|e| AppError::Io(format!("creating {}: {e}", config.out.display())))
}

pub fn gen(config: &ExperimentConfig) -> Result<(), AppError> {
    ensure_out_dir(config)?;
    let mut manifest = ManifestBuilder::new("tiling gen");
    for &radius in &config.radii {
        let g = build_patch(config.symbol, radius)?;
        let name = format!(
            "tiling_{}_{}_r{}.ht",
            config.symbol[0], config.symbol[1], radius
        );
        let path = config.out.join(name);
        let file = File::create(&path)
            .map_err(|e| AppError::Io(format!("creating {}: {e}", path.display())))?;
        write_tiling(&g, BufWriter::new(file)).map_err(tiling_error)?;
        manifest.record(&path);

        let per_layer: Vec<String> = g.layer_counts().iter().map(|c| c.to_string()).collect();
        println!(
            "{{{},{}}} R={} vertices={} edges={} faces={} layers={}",
            config.symbol[0],
            config.symbol[1],
            radius,
            g.vertex_count(),
            g.edge_count(),
            g.face_count(),
            per_layer.join(",")
        );
    }
    manifest.write(&config.out, config)
}
