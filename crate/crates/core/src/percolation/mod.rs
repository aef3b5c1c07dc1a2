//! Bernoulli bond percolation on layered graphs: reproducible samples,
//! exact cluster decomposition, dual percolation and coupled sweeps.

mod estimate;
mod sweep;

pub use estimate::{estimate_pc, estimate_pu, rising_crossing, ThresholdEstimate};
pub use sweep::{default_tau, sweep, SweepResult, SweepRow};

use thiserror::Error;

use crate::graph::LayeredGraph;
use crate::marks::edge_mark;
use crate::tiling::DualPatch;
use crate::unionfind::UnionFind;

#[derive(Debug, Error)]
pub enum PercolationError {
    #[error("InvalidSweepSpec: {0}")]
    InvalidSweepSpec(String),
    #[error("EstimatorDegenerate: {0}")]
    EstimatorDegenerate(String),
}

/// One Bernoulli sample: each edge open independently with probability `p`,
/// fully determined by `(p, seed)` through the keyed edge marks.
#[derive(Clone, Debug)]
pub struct PercolationSample {
    pub vertex_count: usize,
    pub p: f64,
    pub seed: u64,
    open: Vec<u64>,
    edge_count: usize,
}

impl PercolationSample {
    /// Build a sample with an explicitly chosen open set; used to replay
    /// fixed configurations through the cluster machinery.
    pub fn from_open_edges(
        vertex_count: usize,
        edge_count: usize,
        open_edges: impl IntoIterator<Item = u32>,
    ) -> PercolationSample {
        let mut open = vec![0u64; edge_count.div_ceil(64)];
        for e in open_edges {
            assert!((e as usize) < edge_count);
            open[e as usize / 64] |= 1 << (e % 64);
        }
        PercolationSample {
            vertex_count,
            p: f64::NAN,
            seed: 0,
            open,
            edge_count,
        }
    }

    pub fn is_open(&self, edge: u32) -> bool {
        self.open[edge as usize / 64] >> (edge % 64) & 1 == 1
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn open_count(&self) -> usize {
        self.open.iter().map(|w| w.count_ones() as usize).sum()
    }
}

/// Sample bond percolation on `g`: edge `e` is open iff its uniform mark
/// `edge_mark(seed, e)` falls below `p`.
pub fn sample(g: &impl LayeredGraph, p: f64, seed: u64) -> PercolationSample {
    assert!((0.0..=1.0).contains(&p), "probability {p} outside [0, 1]");
    let ne = g.edges().len();
    let mut open = vec![0u64; ne.div_ceil(64)];
    for e in 0..ne {
        if edge_mark(seed, e as u32) < p {
            open[e / 64] |= 1 << (e % 64);
        }
    }
    PercolationSample {
        vertex_count: g.vertex_count(),
        p,
        seed,
        open,
        edge_count: ne,
    }
}

/// Connected components of the open subgraph over all vertices. A cluster's
/// label is the smallest vertex index it contains.
#[derive(Clone, Debug)]
pub struct ClusterDecomposition {
    labels: Vec<u32>,
    ids: Vec<u32>,
    sizes: Vec<u32>,
    boundary_incidence: Vec<u32>,
    offsets: Vec<u32>,
    members: Vec<u32>,
    open: Vec<u64>,
    edge_count: usize,
}

impl ClusterDecomposition {
    /// Cluster label (smallest member vertex) of `v`.
    pub fn label(&self, v: u32) -> u32 {
        self.labels[v as usize]
    }

    /// All cluster labels, ascending.
    pub fn cluster_ids(&self) -> &[u32] {
        &self.ids
    }

    pub fn cluster_count(&self) -> usize {
        self.ids.len()
    }

    fn index_of(&self, label: u32) -> usize {
        self.ids
            .binary_search(&label)
            .expect("not a cluster label")
    }

    pub fn size(&self, label: u32) -> u32 {
        self.sizes[self.index_of(label)]
    }

    /// Number of the cluster's vertices on the patch's outermost layer.
    pub fn boundary_incidence(&self, label: u32) -> u32 {
        self.boundary_incidence[self.index_of(label)]
    }

    /// Member vertices of a cluster, ascending.
    pub fn members(&self, label: u32) -> &[u32] {
        let i = self.index_of(label);
        &self.members[self.offsets[i] as usize..self.offsets[i + 1] as usize]
    }

    /// The open status of an edge in the sample this was built from.
    pub fn is_open(&self, edge: u32) -> bool {
        self.open[edge as usize / 64] >> (edge % 64) & 1 == 1
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Sizes of the largest and second-largest clusters.
    pub fn largest_sizes(&self) -> (u32, u32) {
        let mut best = (0, 0);
        for &s in &self.sizes {
            if s > best.0 {
                best = (s, best.0);
            } else if s > best.1 {
                best.1 = s;
            }
        }
        best
    }

    /// Labels of clusters with at least `tau` outermost-layer vertices.
    pub fn giant_candidates(&self, tau: u32) -> Vec<u32> {
        self.ids
            .iter()
            .zip(&self.boundary_incidence)
            .filter(|&(_, &b)| b >= tau)
            .map(|(&id, _)| id)
            .collect()
    }
}

/// Decompose a sample into clusters via union-find.
pub fn clusters(s: &PercolationSample, g: &impl LayeredGraph) -> ClusterDecomposition {
    let n = g.vertex_count();
    assert_eq!(n, s.vertex_count, "sample built from a different graph");
    let r = g.radius();
    let mut uf = UnionFind::with_marks(n, (0..n as u32).filter(|&v| g.layer(v) == r));
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        if s.is_open(e as u32) {
            uf.union(u, v);
        }
    }
    decomposition_from(&mut uf, n, s.open.clone(), s.edge_count)
}

fn decomposition_from(
    uf: &mut UnionFind,
    n: usize,
    open: Vec<u64>,
    edge_count: usize,
) -> ClusterDecomposition {
    let mut labels = vec![u32::MAX; n];
    let mut ids = Vec::new();
    let mut sizes = Vec::new();
    let mut boundary_incidence = Vec::new();
    let mut index = vec![u32::MAX; n];
    for v in 0..n as u32 {
        let root = uf.find(v);
        if index[root as usize] == u32::MAX {
            index[root as usize] = ids.len() as u32;
            ids.push(v);
            sizes.push(uf.component_size(root));
            boundary_incidence.push(uf.component_marked(root));
        }
        labels[v as usize] = ids[index[root as usize] as usize];
    }
    let mut offsets = vec![0u32; ids.len() + 1];
    for &l in &labels {
        let i = ids.partition_point(|&x| x < l);
        offsets[i + 1] += 1;
    }
    for i in 0..ids.len() {
        offsets[i + 1] += offsets[i];
    }
    let mut cursor = offsets[..ids.len()].to_vec();
    let mut members = vec![0u32; n];
    for v in 0..n as u32 {
        let i = ids.partition_point(|&x| x < labels[v as usize]);
        members[cursor[i] as usize] = v;
        cursor[i] += 1;
    }
    ClusterDecomposition {
        labels,
        ids,
        sizes,
        boundary_incidence,
        offsets,
        members,
        open,
        edge_count,
    }
}

/// Dual percolation: the dual of each primal edge in the bijection domain is
/// open exactly when the primal edge is closed.
pub fn dual_sample(s: &PercolationSample, d: &DualPatch) -> PercolationSample {
    let ne = d.graph.edge_count();
    let mut open = vec![0u64; ne.div_ceil(64)];
    for (e, de) in d.edge_bijection.iter().enumerate() {
        if let Some(de) = de {
            if !s.is_open(e as u32) {
                open[*de as usize / 64] |= 1 << (*de % 64);
            }
        }
    }
    PercolationSample {
        vertex_count: d.graph.vertex_count(),
        p: 1.0 - s.p,
        seed: s.seed,
        open,
        edge_count: ne,
    }
}
