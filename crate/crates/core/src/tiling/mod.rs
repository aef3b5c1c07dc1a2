//! Finite combinatorial balls of regular {p,q} hyperbolic tilings, their
//! Poincaré-disc embedding, dual patches and isoperimetric measurements.

mod build;
mod dual;
mod io;

pub use dual::{dual_graph, DualPatch};
pub use io::{read_tiling, write_tiling};

use thiserror::Error;

use crate::geom::Point;
use crate::graph::LayeredGraph;
use crate::halfplane::Halfplane;

/// Default cap on generated patch size, in vertices.
pub const DEFAULT_VERTEX_CAP: usize = 5_000_000;

/// Schläfli symbol {p,q}: regular p-gons, q meeting at every vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SchlafliSymbol {
    pub p: u32,
    pub q: u32,
}

#[derive(Debug, Error)]
pub enum TilingError {
    /// `(p−2)(q−2) ≤ 4`: the symbol is Euclidean or spherical, not hyperbolic.
    #[error("InvalidSymbol: {{{p},{q}}} is not hyperbolic: (p-2)(q-2) = {product} <= 4")]
    InvalidSymbol { p: u32, q: u32, product: u32 },
    #[error("PatchTooLarge: generation exceeded the cap of {cap} vertices")]
    PatchTooLarge { cap: usize },
    #[error("EmptyDual: the patch has no closed faces")]
    EmptyDual,
    #[error("TruncatedBoundary: sampled set touches the outermost layer {layer}")]
    TruncatedBoundary { layer: u32 },
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed tiling file: {0}")]
    Format(String),
}

/// Compressed adjacency from an edge list: offsets, neighbor vertices and the
/// incident edge index for each entry.
pub(crate) fn build_csr(nv: usize, edges: &[(u32, u32)]) -> (Vec<u32>, Vec<u32>, Vec<u32>) {
    let mut degree = vec![0u32; nv];
    for &(u, v) in edges {
        degree[u as usize] += 1;
        degree[v as usize] += 1;
    }
    let mut adj_off = vec![0u32; nv + 1];
    for v in 0..nv {
        adj_off[v + 1] = adj_off[v] + degree[v];
    }
    let mut cursor: Vec<u32> = adj_off[..nv].to_vec();
    let mut adj_vert = vec![0u32; edges.len() * 2];
    let mut adj_edge = vec![0u32; edges.len() * 2];
    for (e, &(u, v)) in edges.iter().enumerate() {
        adj_vert[cursor[u as usize] as usize] = v;
        adj_edge[cursor[u as usize] as usize] = e as u32;
        cursor[u as usize] += 1;
        adj_vert[cursor[v as usize] as usize] = u;
        adj_edge[cursor[v as usize] as usize] = e as u32;
        cursor[v as usize] += 1;
    }
    (adj_off, adj_vert, adj_edge)
}

impl SchlafliSymbol {
    /// Validates the hyperbolic condition `(p−2)(q−2) > 4`.
    pub fn new(p: u32, q: u32) -> Result<SchlafliSymbol, TilingError> {
        let product = p.saturating_sub(2) * q.saturating_sub(2);
        if p < 3 || q < 3 || product <= 4 {
            return Err(TilingError::InvalidSymbol { p, q, product });
        }
        Ok(SchlafliSymbol { p, q })
    }

    /// The dual symbol {q,p}.
    pub fn dual(&self) -> SchlafliSymbol {
        SchlafliSymbol {
            p: self.q,
            q: self.p,
        }
    }
}

/// Immutable finite combinatorial ball of a {p,q} tiling.
///
/// Vertices are indexed by layer (graph distance from the root vertex 0),
/// then by construction order; the layered structure is exact combinatorics,
/// the disc coordinates are advisory. The patch consists of all closed tiles
/// around vertices at layers `< radius`, restricted to vertices at layers
/// `≤ radius`; consequently every vertex at layer `< radius` has degree
/// exactly `q` and every recorded face is a full p-gon.
#[derive(Clone, Debug)]
pub struct TilingGraph {
    pub(crate) symbol: SchlafliSymbol,
    pub(crate) radius: u32,
    /// Per-vertex layer; nondecreasing in the vertex index.
    pub(crate) layers: Vec<u32>,
    /// Advisory Poincaré-disc coordinates.
    pub(crate) positions: Vec<Point>,
    /// Edges `(u, v)` with `u < v`, sorted lexicographically.
    pub(crate) edges: Vec<(u32, u32)>,
    /// Closed faces as flat counterclockwise cycles of length `p`, each
    /// rotated to start at its smallest vertex, sorted lexicographically.
    pub(crate) faces: Vec<u32>,
    /// CSR adjacency: neighbor list offsets.
    pub(crate) adj_off: Vec<u32>,
    /// CSR adjacency: neighbor vertex, sorted per vertex.
    pub(crate) adj_vert: Vec<u32>,
    /// CSR adjacency: index into `edges` for each adjacency entry.
    pub(crate) adj_edge: Vec<u32>,
}

impl TilingGraph {
    /// Generate the combinatorial ball of the given radius with the default
    /// vertex cap.
    pub fn generate(symbol: SchlafliSymbol, radius: u32) -> Result<TilingGraph, TilingError> {
        build::generate(symbol, radius, DEFAULT_VERTEX_CAP)
    }

    /// Generate with an explicit cap on intermediate patch size.
    pub fn generate_capped(
        symbol: SchlafliSymbol,
        radius: u32,
        cap: usize,
    ) -> Result<TilingGraph, TilingError> {
        build::generate(symbol, radius, cap)
    }

    pub fn symbol(&self) -> SchlafliSymbol {
        self.symbol
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn vertex_count(&self) -> usize {
        self.layers.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn face_count(&self) -> usize {
        if self.symbol.p == 0 {
            0
        } else {
            self.faces.len() / self.symbol.p as usize
        }
    }

    pub fn layer(&self, v: u32) -> u32 {
        self.layers[v as usize]
    }

    pub fn layers(&self) -> &[u32] {
        &self.layers
    }

    pub fn position(&self, v: u32) -> Point {
        self.positions[v as usize]
    }

    /// Ideal angle of a vertex position seen from the origin.
    pub fn angle(&self, v: u32) -> f64 {
        crate::geom::wrap_angle(self.positions[v as usize].arg())
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    /// Layer tag of an edge: the larger endpoint layer (the edge belongs to
    /// every ball of at least that radius).
    pub fn edge_layer(&self, e: u32) -> u32 {
        let (u, v) = self.edges[e as usize];
        self.layers[u as usize].max(self.layers[v as usize])
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        let lo = self.adj_off[v as usize] as usize;
        let hi = self.adj_off[v as usize + 1] as usize;
        &self.adj_vert[lo..hi]
    }

    /// Edge indices incident to `v`, parallel to [`Self::neighbors`].
    pub fn incident_edges(&self, v: u32) -> &[u32] {
        let lo = self.adj_off[v as usize] as usize;
        let hi = self.adj_off[v as usize + 1] as usize;
        &self.adj_edge[lo..hi]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.neighbors(v).len()
    }

    /// Face `i` as a counterclockwise vertex cycle of length `p`.
    pub fn face(&self, i: usize) -> &[u32] {
        let p = self.symbol.p as usize;
        &self.faces[i * p..(i + 1) * p]
    }

    pub fn faces_iter(&self) -> impl Iterator<Item = &[u32]> {
        self.faces.chunks_exact(self.symbol.p as usize)
    }

    /// Number of vertices per layer, index 0 = root layer.
    pub fn layer_counts(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.radius as usize + 1];
        for &l in &self.layers {
            counts[l as usize] += 1;
        }
        counts
    }

    /// Vertices on the outermost layer, in index order.
    pub fn boundary_vertices(&self) -> impl Iterator<Item = u32> + '_ {
        let r = self.radius;
        (0..self.layers.len() as u32).filter(move |&v| self.layers[v as usize] == r)
    }

    /// All vertices whose coordinates lie in the closed halfplane.
    pub fn halfplane_vertices(&self, h: &Halfplane) -> Vec<u32> {
        (0..self.vertex_count() as u32)
            .filter(|&v| h.contains_point(self.position(v)))
            .collect()
    }

    /// Exact isoperimetric ratios `|∂V₀|/|V₀|` for the supplied vertex sets.
    ///
    /// Every set must be nonempty, connected and avoid the outermost layer,
    /// so that all its vertices carry the full tiling degree `q` and the
    /// boundary edge count is not truncated by the patch.
    pub fn isoperimetric_ratios<I>(&self, sets: I) -> Result<Vec<f64>, TilingError>
    where
        I: IntoIterator<Item = Vec<u32>>,
    {
        let q = self.symbol.q as usize;
        let mut ratios = Vec::new();
        for set in sets {
            assert!(!set.is_empty(), "sampled set must be nonempty");
            for &v in &set {
                if self.layer(v) >= self.radius {
                    return Err(TilingError::TruncatedBoundary { layer: self.radius });
                }
            }
            let members: std::collections::HashSet<u32> = set.iter().copied().collect();
            assert!(self.is_connected_set(&set, &members), "sampled set must be connected");
            let mut internal = 0usize;
            for &v in &set {
                for &w in self.neighbors(v) {
                    if w > v && members.contains(&w) {
                        internal += 1;
                    }
                }
            }
            let boundary = q * set.len() - 2 * internal;
            ratios.push(boundary as f64 / set.len() as f64);
        }
        Ok(ratios)
    }

    fn is_connected_set(&self, set: &[u32], members: &std::collections::HashSet<u32>) -> bool {
        let mut seen = std::collections::HashSet::new();
        let mut stack = vec![set[0]];
        seen.insert(set[0]);
        while let Some(v) = stack.pop() {
            for &w in self.neighbors(v) {
                if members.contains(&w) && seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen.len() == set.len()
    }

    /// Deterministic sampler of interior connected vertex sets: random
    /// connected growth from a random start, avoiding the outermost layer.
    pub fn sample_interior_connected_sets(
        &self,
        count: usize,
        max_size: usize,
        seed: u64,
    ) -> Vec<Vec<u32>> {
        let interior: Vec<u32> = (0..self.vertex_count() as u32)
            .filter(|&v| self.layer(v) < self.radius)
            .collect();
        let mut rng = crate::marks::SplitMix64::new(seed);
        let mut sets = Vec::with_capacity(count);
        while sets.len() < count {
            let start = interior[(rng.next_u64() % interior.len() as u64) as usize];
            let target = 1 + (rng.next_u64() as usize % max_size);
            let mut set = vec![start];
            let mut members: std::collections::HashSet<u32> = set.iter().copied().collect();
            let mut frontier: Vec<u32> = self
                .neighbors(start)
                .iter()
                .copied()
                .filter(|&w| self.layer(w) < self.radius)
                .collect();
            while set.len() < target && !frontier.is_empty() {
                let k = (rng.next_u64() % frontier.len() as u64) as usize;
                let v = frontier.swap_remove(k);
                if !members.insert(v) {
                    continue;
                }
                set.push(v);
                for &w in self.neighbors(v) {
                    if self.layer(w) < self.radius && !members.contains(&w) {
                        frontier.push(w);
                    }
                }
            }
            sets.push(set);
        }
        sets
    }
}

impl LayeredGraph for TilingGraph {
    fn vertex_count(&self) -> usize {
        self.layers.len()
    }

    fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    fn layer(&self, v: u32) -> u32 {
        self.layers[v as usize]
    }

    fn radius(&self) -> u32 {
        self.radius
    }

    /// Boundary anchors: `n` outermost-layer vertices equally spaced by
    /// ideal angle.
    fn boundary_anchors(&self, n: usize) -> Vec<u32> {
        let mut boundary: Vec<(f64, u32)> = self
            .boundary_vertices()
            .map(|v| (self.angle(v), v))
            .collect();
        if boundary.is_empty() {
            return Vec::new();
        }
        boundary.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mut anchors = Vec::with_capacity(n);
        for k in 0..n {
            let target = std::f64::consts::TAU * k as f64 / n as f64;
            let idx = boundary.partition_point(|probe| probe.0 < target) % boundary.len();
            let v = boundary[idx].1;
            if !anchors.contains(&v) {
                anchors.push(v);
            }
        }
        anchors
    }
}
