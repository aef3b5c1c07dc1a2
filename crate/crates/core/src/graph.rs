//! Common interface for layered graphs the percolation machinery runs on.

/// A finite graph organized in layers around a root vertex: combinatorial
/// tiling balls and abstract trees both implement this, so sweeps and
/// estimators are written once.
pub trait LayeredGraph {
    fn vertex_count(&self) -> usize;

    /// Edges `(u, v)` with `u < v`; the edge index used everywhere else is
    /// the position in this slice.
    fn edges(&self) -> &[(u32, u32)];

    /// Graph distance from the root.
    fn layer(&self, v: u32) -> u32;

    /// Largest layer present.
    fn radius(&self) -> u32;

    /// The root vertex.
    fn root(&self) -> u32 {
        0
    }

    /// Up to `n` well-spread vertices on the outermost layer, used as anchor
    /// pairs for two-point connectivity.
    fn boundary_anchors(&self, n: usize) -> Vec<u32>;

    /// Number of vertices on the outermost layer.
    fn boundary_size(&self) -> usize {
        let r = self.radius();
        (0..self.vertex_count() as u32)
            .filter(|&v| self.layer(v) == r)
            .count()
    }
}
