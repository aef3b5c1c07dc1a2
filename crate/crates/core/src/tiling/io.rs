//! Versioned textual serialization of tiling patches.
//!
//! Format (line oriented, whitespace separated):
//!
//! ```text
//! hyptile 1
//! symbol <p> <q>
//! radius <R>
//! counts <vertices> <edges> <faces>
//! v <layer> <x> <y>        (one per vertex, index implicit)
//! e <u> <v>                (one per edge, u < v, sorted)
//! f <v1> ... <vp>          (one per face, counterclockwise)
//! ```
//!
//! Coordinates use Rust's shortest round-trip float formatting, so
//! write-then-read restores the graph exactly.

use std::io::{BufRead, Write};

use super::{SchlafliSymbol, TilingError, TilingGraph};
use crate::geom::Point;

const MAGIC: &str = "hyptile";
const VERSION: u32 = 1;

pub fn write_tiling<W: Write>(g: &TilingGraph, mut out: W) -> Result<(), TilingError> {
    writeln!(out, "{} {}", MAGIC, VERSION)?;
    writeln!(out, "symbol {} {}", g.symbol.p, g.symbol.q)?;
    writeln!(out, "radius {}", g.radius)?;
    writeln!(
        out,
        "counts {} {} {}",
        g.vertex_count(),
        g.edge_count(),
        g.face_count()
    )?;
    for v in 0..g.vertex_count() {
        let z = g.positions[v];
        writeln!(out, "v {} {} {}", g.layers[v], z.re, z.im)?;
    }
    for &(u, v) in &g.edges {
        writeln!(out, "e {} {}", u, v)?;
    }
    for face in g.faces_iter() {
        write!(out, "f")?;
        for &v in face {
            write!(out, " {}", v)?;
        }
        writeln!(out)?;
    }
    Ok(())
}

pub fn read_tiling<R: BufRead>(input: R) -> Result<TilingGraph, TilingError> {
    let bad = |msg: &str| TilingError::Format(msg.to_string());
    let mut lines = input.lines();
    let mut next_line = move || -> Result<Vec<String>, TilingError> {
        let line = lines
            .next()
            .ok_or_else(|| TilingError::Format("unexpected end of file".into()))??;
        Ok(line.split_whitespace().map(str::to_string).collect())
    };

    let header = next_line()?;
    if header.len() != 2 || header[0] != MAGIC {
        return Err(bad("missing hyptile header"));
    }
    if header[1].parse::<u32>().map_err(|_| bad("bad version"))? != VERSION {
        return Err(bad("unsupported format version"));
    }
    let sym = next_line()?;
    if sym.len() != 3 || sym[0] != "symbol" {
        return Err(bad("missing symbol line"));
    }
    let p: u32 = sym[1].parse().map_err(|_| bad("bad symbol"))?;
    let q: u32 = sym[2].parse().map_err(|_| bad("bad symbol"))?;
    let symbol = SchlafliSymbol::new(p, q)?;
    let rad = next_line()?;
    if rad.len() != 2 || rad[0] != "radius" {
        return Err(bad("missing radius line"));
    }
    let radius: u32 = rad[1].parse().map_err(|_| bad("bad radius"))?;
    let counts = next_line()?;
    if counts.len() != 4 || counts[0] != "counts" {
        return Err(bad("missing counts line"));
    }
    let nv: usize = counts[1].parse().map_err(|_| bad("bad counts"))?;
    let ne: usize = counts[2].parse().map_err(|_| bad("bad counts"))?;
    let nf: usize = counts[3].parse().map_err(|_| bad("bad counts"))?;

    let mut layers = Vec::with_capacity(nv);
    let mut positions = Vec::with_capacity(nv);
    for _ in 0..nv {
        let row = next_line()?;
        if row.len() != 4 || row[0] != "v" {
            return Err(bad("malformed vertex row"));
        }
        layers.push(row[1].parse().map_err(|_| bad("bad layer"))?);
        let x: f64 = row[2].parse().map_err(|_| bad("bad coordinate"))?;
        let y: f64 = row[3].parse().map_err(|_| bad("bad coordinate"))?;
        positions.push(Point::new(x, y));
    }
    let mut edges = Vec::with_capacity(ne);
    for _ in 0..ne {
        let row = next_line()?;
        if row.len() != 3 || row[0] != "e" {
            return Err(bad("malformed edge row"));
        }
        let u: u32 = row[1].parse().map_err(|_| bad("bad edge"))?;
        let v: u32 = row[2].parse().map_err(|_| bad("bad edge"))?;
        if u >= v || v as usize >= nv {
            return Err(bad("edge endpoints out of order or range"));
        }
        edges.push((u, v));
    }
    let pp = p as usize;
    let mut faces = Vec::with_capacity(nf * pp);
    for _ in 0..nf {
        let row = next_line()?;
        if row.len() != pp + 1 || row[0] != "f" {
            return Err(bad("malformed face row"));
        }
        for s in &row[1..] {
            let v: u32 = s.parse().map_err(|_| bad("bad face vertex"))?;
            if v as usize >= nv {
                return Err(bad("face vertex out of range"));
            }
            faces.push(v);
        }
    }

    let (adj_off, adj_vert, adj_edge) = super::build_csr(nv, &edges);

    Ok(TilingGraph {
        symbol,
        radius,
        layers,
        positions,
        edges,
        faces,
        adj_off,
        adj_vert,
        adj_edge,
    })
}
