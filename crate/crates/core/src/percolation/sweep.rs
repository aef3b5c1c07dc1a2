//! Coupled parameter sweeps: one uniform mark per edge and seed, edges
//! inserted into union-find in mark order, statistics recorded at each grid
//! point. The open set at `p` is exactly `{e : mark(e) < p}`, so per-seed
//! statistics are coupled monotonically across the grid.

use crate::graph::LayeredGraph;
use crate::marks::edge_mark;
use crate::unionfind::UnionFind;

use super::PercolationError;

/// Default giant-candidate threshold: at least two outermost-layer
/// vertices, scaling as the square root of the boundary layer. Linear
/// scaling is too harsh: in the nonuniqueness phase every unbounded cluster
/// owns a vanishing fraction of the boundary, so a fixed-percentage cut
/// suppresses giants as the patch grows, while a fixed count lets small
/// boundary-hugging clusters pollute the uniqueness statistic.
pub fn default_tau(boundary_size: usize) -> u32 {
    (boundary_size as f64).sqrt().ceil().max(2.0) as u32
}

/// Statistics of one `(p, seed)` cell of a sweep.
#[derive(Clone, Copy, Debug)]
pub struct SweepRow {
    pub p: f64,
    pub seed: u64,
    /// Largest and second-largest cluster sizes.
    pub largest: u32,
    pub second: u32,
    /// Clusters with at least `tau` outermost-layer vertices.
    pub giants: u32,
    /// Whether the root's cluster reaches the outermost layer.
    pub root_to_boundary: bool,
    /// Number of outermost-layer vertices in the root's cluster.
    pub root_boundary_count: u32,
    /// Connected pairs among the boundary anchor vertices.
    pub pairs_connected: u32,
    /// Exactly one giant candidate.
    pub unique_giant: bool,
}

/// Full sweep output: per-seed traces at every grid point, p-major.
#[derive(Clone, Debug)]
pub struct SweepResult {
    pub radius: u32,
    pub vertex_count: usize,
    pub edge_count: usize,
    pub boundary_size: usize,
    pub tau: u32,
    pub p_grid: Vec<f64>,
    pub seeds: Vec<u64>,
    /// Boundary anchor vertices probed for pair connectivity.
    pub anchors: Vec<u32>,
    /// `rows[pi * seeds.len() + si]` is the cell for `p_grid[pi]`, `seeds[si]`.
    pub rows: Vec<SweepRow>,
}

impl SweepResult {
    pub fn row(&self, pi: usize, si: usize) -> &SweepRow {
        &self.rows[pi * self.seeds.len() + si]
    }

    /// Total anchor pairs probed per cell.
    pub fn anchor_pairs(&self) -> u32 {
        let a = self.anchors.len() as u32;
        a * (a.saturating_sub(1)) / 2
    }

    fn mean_over_seeds(&self, f: impl Fn(&SweepRow) -> f64) -> Vec<f64> {
        let ns = self.seeds.len();
        (0..self.p_grid.len())
            .map(|pi| (0..ns).map(|si| f(self.row(pi, si))).sum::<f64>() / ns as f64)
            .collect()
    }

    /// Mean number of outermost-layer vertices in the root's cluster, per p.
    pub fn mean_root_boundary_count(&self) -> Vec<f64> {
        self.mean_over_seeds(|r| r.root_boundary_count as f64)
    }

    /// Fraction of seeds whose root cluster reaches the boundary, per p.
    pub fn prob_root_to_boundary(&self) -> Vec<f64> {
        self.mean_over_seeds(|r| f64::from(r.root_to_boundary))
    }

    /// Fraction of seeds with exactly one giant candidate, per p.
    pub fn prob_unique_giant(&self) -> Vec<f64> {
        self.mean_over_seeds(|r| f64::from(r.unique_giant))
    }

    /// Mean giant-candidate count, per p.
    pub fn mean_giants(&self) -> Vec<f64> {
        self.mean_over_seeds(|r| r.giants as f64)
    }
}

/// Run a coupled sweep over all `(p, seed)` cells.
pub fn sweep(
    g: &impl LayeredGraph,
    seeds: &[u64],
    p_grid: &[f64],
    tau: u32,
) -> Result<SweepResult, PercolationError> {
    if seeds.is_empty() || p_grid.is_empty() {
        return Err(PercolationError::InvalidSweepSpec(
            "empty seed list or probability grid".into(),
        ));
    }
    if tau < 1 {
        return Err(PercolationError::InvalidSweepSpec("tau must be >= 1".into()));
    }
    for w in p_grid.windows(2) {
        if w[0] >= w[1] {
            return Err(PercolationError::InvalidSweepSpec(format!(
                "probability grid not ascending at {} >= {}",
                w[0], w[1]
            )));
        }
    }
    if !(0.0..=1.0).contains(&p_grid[0]) || !(0.0..=1.0).contains(p_grid.last().unwrap()) {
        return Err(PercolationError::InvalidSweepSpec(
            "probability grid outside [0, 1]".into(),
        ));
    }

    let n = g.vertex_count();
    let ne = g.edges().len();
    let radius = g.radius();
    let boundary_size = g.boundary_size();
    let anchors = g.boundary_anchors(16);
    let root = g.root();

    let mut rows = vec![
        SweepRow {
            p: 0.0,
            seed: 0,
            largest: 0,
            second: 0,
            giants: 0,
            root_to_boundary: false,
            root_boundary_count: 0,
            pairs_connected: 0,
            unique_giant: false,
        };
        p_grid.len() * seeds.len()
    ];

    let mut order: Vec<u32> = Vec::with_capacity(ne);
    let mut marks: Vec<f64> = Vec::with_capacity(ne);
    for (si, &seed) in seeds.iter().enumerate() {
        marks.clear();
        marks.extend((0..ne as u32).map(|e| edge_mark(seed, e)));
        order.clear();
        order.extend(0..ne as u32);
        order.sort_unstable_by(|&a, &b| {
            marks[a as usize]
                .partial_cmp(&marks[b as usize])
                .unwrap()
                .then(a.cmp(&b))
        });

        let mut uf =
            UnionFind::with_marks(n, (0..n as u32).filter(|&v| g.layer(v) == radius));
        let mut next = 0usize;
        for (pi, &p) in p_grid.iter().enumerate() {
            while next < ne && marks[order[next] as usize] < p {
                let (u, v) = g.edges()[order[next] as usize];
                uf.union(u, v);
                next += 1;
            }

            let mut largest = 0u32;
            let mut second = 0u32;
            let mut giants = 0u32;
            for v in 0..n as u32 {
                if uf.find(v) != v {
                    continue;
                }
                let s = uf.component_size(v);
                if s > largest {
                    second = largest;
                    largest = s;
                } else if s > second {
                    second = s;
                }
                if uf.component_marked(v) >= tau {
                    giants += 1;
                }
            }
            let root_boundary_count = uf.component_marked(root);
            let mut pairs_connected = 0u32;
            for i in 0..anchors.len() {
                for j in i + 1..anchors.len() {
                    if uf.connected(anchors[i], anchors[j]) {
                        pairs_connected += 1;
                    }
                }
            }
            rows[pi * seeds.len() + si] = SweepRow {
                p,
                seed,
                largest,
                second,
                giants,
                root_to_boundary: root_boundary_count >= 1,
                root_boundary_count,
                pairs_connected,
                unique_giant: giants == 1,
            };
        }
    }

    Ok(SweepResult {
        radius,
        vertex_count: n,
        edge_count: ne,
        boundary_size,
        tau,
        p_grid: p_grid.to_vec(),
        seeds: seeds.to_vec(),
        anchors,
        rows,
    })
}
