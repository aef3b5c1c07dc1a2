//! `render`: Poincaré-disc SVG scenes. Edges are drawn as the circular arcs
//! of their geodesics, which meet the ideal circle orthogonally; straight
//! chords appear only for geodesics through the origin (endpoints antipodal
//! within tolerance). With a sample overlaid, open edges are highlighted in
//! their cluster's color; with `--arcs`, the minimal arc covers of giant
//! candidates are marked just outside the ideal circle.

use std::fmt::Write as _;
use std::io::BufReader;

use hyperperc_core::boundary::end_chains;
use hyperperc_core::percolation::{clusters, default_tau, sample, ClusterDecomposition};
use hyperperc_core::tiling::read_tiling;
use hyperperc_core::{LayeredGraph, Point, TilingGraph};

use crate::config::ExperimentConfig;
use crate::manifest::ManifestBuilder;
use crate::tiling_cmd::{build_patch, ensure_out_dir, tiling_error};
use crate::{AppError, RenderArgs};

/// Below this determinant scale the two endpoints are collinear with the
/// origin (antipodal ideal endpoints) and the geodesic is a diameter.
const CHORD_TOL: f64 = 1e-9;

const PALETTE: [&str; 12] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
    "#bcbd22", "#17becf", "#aec7e8", "#ffbb78",
];

fn fmt(x: f64) -> String {
    // normalize -0.000000 so output is deterministic across code paths
    let s = format!("{:.6}", x);
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

/// SVG path for the geodesic segment between two interior points.
fn edge_path(z: Point, w: Point) -> String {
    // center c of the circle through z, w orthogonal to the unit circle:
    // 2 z·c = |z|² + 1 and likewise for w
    let (bz, bw) = (z.norm_sqr() + 1.0, w.norm_sqr() + 1.0);
    let det = 4.0 * (z.re * w.im - z.im * w.re);
    if det.abs() < CHORD_TOL {
        return format!(
            "M {} {} L {} {}",
            fmt(z.re),
            fmt(z.im),
            fmt(w.re),
            fmt(w.im)
        );
    }
    let cx = 2.0 * (bz * w.im - bw * z.im) / det;
    let cy = 2.0 * (bw * z.re - bz * w.re) / det;
    let r = ((cx - z.re).powi(2) + (cy - z.im).powi(2)).sqrt();
    let a1 = (z.im - cy).atan2(z.re - cx);
    let a2 = (w.im - cy).atan2(w.re - cx);
    let mut delta = a2 - a1;
    while delta > std::f64::consts::PI {
        delta -= std::f64::consts::TAU;
    }
    while delta <= -std::f64::consts::PI {
        delta += std::f64::consts::TAU;
    }
    let sweep = u32::from(delta > 0.0);
    format!(
        "M {} {} A {} {} 0 0 {} {} {}",
        fmt(z.re),
        fmt(z.im),
        fmt(r),
        fmt(r),
        sweep,
        fmt(w.re),
        fmt(w.im)
    )
}

/// Arc mark along the circle of the given radius, ccw from `a` to `b`.
fn mark_path(a: f64, b: f64, radius: f64) -> String {
    let (x1, y1) = (radius * a.cos(), radius * a.sin());
    let (x2, y2) = (radius * b.cos(), radius * b.sin());
    if (a - b).abs() < 1e-12 {
        // degenerate arc: a short tick at the single direction
        return format!(
            "M {} {} L {} {}",
            fmt(0.98 * a.cos()),
            fmt(0.98 * a.sin()),
            fmt(1.02 * a.cos()),
            fmt(1.02 * a.sin())
        );
    }
    let span = hyperperc_core::geom::ccw_arc_len(a, b);
    let large = u32::from(span > std::f64::consts::PI);
    format!(
        "M {} {} A {} {} 0 {} 1 {} {}",
        fmt(x1),
        fmt(y1),
        fmt(radius),
        fmt(radius),
        large,
        fmt(x2),
        fmt(y2)
    )
}

fn scene(
    g: &TilingGraph,
    dec: Option<&ClusterDecomposition>,
    arcs: bool,
    tau: u32,
) -> String {
    let mut svg = String::new();
    svg.push_str(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-1.1 -1.1 2.2 2.2\" \
         width=\"800\" height=\"800\">\n",
    );
    svg.push_str(
        "<circle class=\"ideal\" cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" \
         stroke=\"#000000\" stroke-width=\"0.005\"/>\n",
    );

    // deterministic color per cluster: rank of the cluster label
    let color_of = |dec: &ClusterDecomposition, v: u32| -> &'static str {
        let label = dec.label(v);
        let rank = dec.cluster_ids().binary_search(&label).unwrap_or(0);
        PALETTE[rank % PALETTE.len()]
    };

    svg.push_str("<g fill=\"none\">\n");
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let d = edge_path(g.position(u), g.position(v));
        match dec {
            None => {
                let _ = writeln!(
                    svg,
                    "<path class=\"edge\" d=\"{d}\" stroke=\"#444444\" stroke-width=\"0.004\"/>"
                );
            }
            Some(dec) if dec.is_open(e as u32) => {
                let _ = writeln!(
                    svg,
                    "<path class=\"edge open\" d=\"{d}\" stroke=\"{}\" stroke-width=\"0.006\"/>",
                    color_of(dec, u)
                );
            }
            Some(_) => {
                let _ = writeln!(
                    svg,
                    "<path class=\"edge closed\" d=\"{d}\" stroke=\"#cccccc\" \
                     stroke-width=\"0.002\"/>"
                );
            }
        }
    }
    svg.push_str("</g>\n");

    for v in 0..g.vertex_count() as u32 {
        let z = g.position(v);
        let color = dec.map_or("#000000", |d| color_of(d, v));
        let _ = writeln!(
            svg,
            "<circle class=\"vertex\" cx=\"{}\" cy=\"{}\" r=\"0.008\" fill=\"{}\"/>",
            fmt(z.re),
            fmt(z.im),
            color
        );
    }

    if arcs {
        if let Some(dec) = dec {
            for cluster in dec.giant_candidates(tau) {
                let color = color_of(dec, cluster);
                for chain in end_chains(dec, g, cluster, &[0]) {
                    for &(a, b) in &chain.arcs[0] {
                        let _ = writeln!(
                            svg,
                            "<path class=\"arc-mark\" d=\"{}\" fill=\"none\" stroke=\"{}\" \
                             stroke-width=\"0.02\"/>",
                            mark_path(a, b, 1.04),
                            color
                        );
                    }
                }
            }
        }
    }

    svg.push_str("</svg>\n");
    svg
}

pub fn run(config: &ExperimentConfig, args: &RenderArgs) -> Result<(), AppError> {
    ensure_out_dir(config)?;
    let mut manifest = ManifestBuilder::new("render");

    let g = match &args.graph {
        Some(path) => {
            let file = std::fs::File::open(path)
                .map_err(|e| AppError::Io(format!("opening {}: {e}", path.display())))?;
            read_tiling(BufReader::new(file)).map_err(tiling_error)?
        }
        None => {
            let radius = *config.radii.iter().max().ok_or_else(|| {
                AppError::Invalid("render needs a radius or a graph file".into())
            })?;
            build_patch(config.symbol, radius)?
        }
    };
    let dec = match args.p {
        Some(p) => {
            if !(0.0..=1.0).contains(&p) {
                return Err(AppError::Invalid(format!("p value {p} outside [0, 1]")));
            }
            let seed = args.seed.unwrap_or_else(|| config.seeds[0]);
            Some(clusters(&sample(&g, p, seed), &g))
        }
        None => None,
    };
    let tau = config.tau.unwrap_or_else(|| default_tau(g.boundary_size()));

    let svg = scene(&g, dec.as_ref(), args.arcs, tau);
    let path = args
        .svg
        .clone()
        .unwrap_or_else(|| config.out.join("scene.svg"));
    std::fs::write(&path, svg)
        .map_err(|e| AppError::Io(format!("writing {}: {e}", path.display())))?;
    manifest.record(&path);
    manifest.write(&config.out, config)
}
