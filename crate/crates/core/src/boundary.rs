//! Finite-scale ends of percolation clusters and their traces on the ideal
//! circle: components of a cluster beyond a ball, nested chains of such
//! components across growing ball radii, the minimal arc covers of their
//! boundary angles, and the direction-density and halfplane statistics.

use std::f64::consts::TAU;

use crate::geom::ccw_arc_len;
use crate::halfplane::Halfplane;
use crate::percolation::ClusterDecomposition;
use crate::tiling::TilingGraph;

/// A connected component of a cluster restricted to layers strictly beyond
/// `radius`: the finite approximation of an end, with the ball of that
/// radius playing the compact set.
#[derive(Clone, Debug)]
pub struct EndApproximation {
    pub cluster: u32,
    pub radius: u32,
    /// Component vertices, ascending.
    pub vertices: Vec<u32>,
}

impl EndApproximation {
    /// Smallest vertex index, the component's deterministic name.
    pub fn anchor(&self) -> u32 {
        self.vertices[0]
    }

    pub fn contains(&self, v: u32) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }
}

/// One maximal chain of nested end approximations over ascending radii,
/// with the per-radius arc covers of its outermost-layer angles.
#[derive(Clone, Debug)]
pub struct BoundaryArcEstimate {
    pub cluster: u32,
    /// The radii of the chain, ascending.
    pub radii: Vec<u32>,
    /// Anchor of the chain's end approximation at each radius.
    pub anchors: Vec<u32>,
    /// Minimal arc cover (at most two closed ccw arcs) of the component's
    /// outermost-layer vertex angles, per radius.
    pub arcs: Vec<Vec<(f64, f64)>>,
    /// Total angular measure of the cover, per radius; nonincreasing.
    pub angular_diameter: Vec<f64>,
}

impl BoundaryArcEstimate {
    /// Angular diameter at the deepest radius.
    pub fn terminal_diameter(&self) -> f64 {
        *self.angular_diameter.last().unwrap()
    }
}

/// Ideal angles of outermost-layer vertices lying in large clusters, with
/// the largest angular gap between consecutive directions.
#[derive(Clone, Debug)]
pub struct LimitDirectionSet {
    /// Sorted ascending; one entry per qualifying outermost-layer vertex.
    pub angles: Vec<f64>,
    /// Largest cyclic gap; `2π` when no direction qualifies.
    pub largest_gap: f64,
}

/// Connected components of the cluster's vertices at layers `> r`, in the
/// open subgraph, ordered by anchor.
pub fn ends_at_radius(
    dec: &ClusterDecomposition,
    g: &TilingGraph,
    cluster: u32,
    r: u32,
) -> Vec<EndApproximation> {
    assert!(r < g.radius(), "cut radius {r} not below patch radius");
    let mut in_set = vec![false; g.vertex_count()];
    for &v in dec.members(cluster) {
        if g.layer(v) > r {
            in_set[v as usize] = true;
        }
    }
    let mut seen = vec![false; g.vertex_count()];
    let mut out = Vec::new();
    for &start in dec.members(cluster) {
        if !in_set[start as usize] || seen[start as usize] {
            continue;
        }
        let mut component = vec![start];
        seen[start as usize] = true;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            let (nbrs, edges) = (g.neighbors(v), g.incident_edges(v));
            for (&w, &e) in nbrs.iter().zip(edges) {
                if in_set[w as usize] && !seen[w as usize] && dec.is_open(e) {
                    seen[w as usize] = true;
                    component.push(w);
                    stack.push(w);
                }
            }
        }
        component.sort_unstable();
        out.push(EndApproximation {
            cluster,
            radius: r,
            vertices: component,
        });
    }
    // members() is ascending, so components already come out anchor-ordered,
    // but keep the contract explicit
    out.sort_by_key(|e| e.anchor());
    out
}

/// Minimal closed arc cover of a set of ideal angles, using at most two
/// disjoint arcs: the complement of the two largest cyclic gaps.
fn arc_cover(mut angles: Vec<f64>) -> (Vec<(f64, f64)>, f64) {
    let k = angles.len();
    if k == 0 {
        return (Vec::new(), 0.0);
    }
    angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
    if k == 1 {
        return (vec![(angles[0], angles[0])], 0.0);
    }
    let gap = |i: usize| ccw_arc_len(angles[i], angles[(i + 1) % k]);
    let mut g1 = 0usize; // largest gap
    let mut g2 = usize::MAX; // second largest
    for i in 1..k {
        if gap(i) > gap(g1) {
            g2 = g1;
            g1 = i;
        } else if g2 == usize::MAX || gap(i) > gap(g2) {
            g2 = i;
        }
    }
    let (lo, hi) = (g1.min(g2), g1.max(g2));
    let arcs = vec![
        (angles[(hi + 1) % k], angles[lo]),
        (angles[lo + 1], angles[hi]),
    ];
    let diameter = TAU - gap(g1) - gap(g2);
    (arcs, diameter.max(0.0))
}

/// Angles of an end's vertices on the patch's outermost layer.
fn outer_angles(g: &TilingGraph, end: &EndApproximation) -> Vec<f64> {
    let r = g.radius();
    end.vertices
        .iter()
        .filter(|&&v| g.layer(v) == r)
        .map(|&v| g.angle(v))
        .collect()
}

/// Build the nested chains of end approximations of one cluster across the
/// given ascending radii. Each end at the deepest radius determines one
/// chain (its ancestors are unique); chains that die earlier are dropped.
pub fn end_chains(
    dec: &ClusterDecomposition,
    g: &TilingGraph,
    cluster: u32,
    radii: &[u32],
) -> Vec<BoundaryArcEstimate> {
    assert!(!radii.is_empty());
    for w in radii.windows(2) {
        assert!(w[0] < w[1], "radii must be ascending");
    }
    let levels: Vec<Vec<EndApproximation>> = radii
        .iter()
        .map(|&r| ends_at_radius(dec, g, cluster, r))
        .collect();
    let deepest = levels.len() - 1;
    let mut chains = Vec::new();
    for end in &levels[deepest] {
        let mut anchors = vec![0u32; levels.len()];
        let mut arcs = vec![Vec::new(); levels.len()];
        let mut diameters = vec![0.0; levels.len()];
        anchors[deepest] = end.anchor();
        (arcs[deepest], diameters[deepest]) = arc_cover(outer_angles(g, end));
        // a deeper component's vertex set is contained in exactly one
        // component at each shallower radius: follow the anchor
        for (li, level) in levels[..deepest].iter().enumerate() {
            let parent = level
                .iter()
                .find(|c| c.contains(end.anchor()))
                .expect("nesting: deeper end escaped every shallower component");
            anchors[li] = parent.anchor();
            (arcs[li], diameters[li]) = arc_cover(outer_angles(g, parent));
        }
        chains.push(BoundaryArcEstimate {
            cluster,
            radii: radii.to_vec(),
            anchors,
            arcs,
            angular_diameter: diameters,
        });
    }
    chains
}

/// One chain-level record of the end statistic, in CSV row order.
#[derive(Clone, Copy, Debug)]
pub struct ChainRow {
    pub p: f64,
    pub seed: u64,
    pub cluster: u32,
    pub chain: u32,
    pub radius: u32,
    pub arc_count: u32,
    pub angular_diameter: f64,
}

/// Aggregate of terminal angular diameters at one probability.
#[derive(Clone, Copy, Debug)]
pub struct OnePointSummary {
    pub p: f64,
    /// Number of chains over all seeds and giant candidates at this p.
    pub chains: usize,
    pub median_terminal: Option<f64>,
    pub p90_terminal: Option<f64>,
}

#[derive(Clone, Debug)]
pub struct OnePointStatistic {
    pub rows: Vec<ChainRow>,
    pub per_p: Vec<OnePointSummary>,
}

fn percentile(sorted: &[f64], q: f64) -> Option<f64> {
    if sorted.is_empty() {
        return None;
    }
    let t = q * (sorted.len() - 1) as f64;
    let (i, f) = (t.floor() as usize, t.fract());
    Some(if f == 0.0 {
        sorted[i]
    } else {
        sorted[i] * (1.0 - f) + sorted[i + 1] * f
    })
}

/// Terminal-diameter statistic over samples: for every giant candidate of
/// every sample, every chain's per-radius arc data, with per-p medians and
/// 90th percentiles of the deepest-radius diameters.
pub fn one_point_end_statistic<'a>(
    g: &TilingGraph,
    samples: impl IntoIterator<Item = (f64, u64, &'a ClusterDecomposition)>,
    radii: &[u32],
    tau: u32,
) -> OnePointStatistic {
    let mut rows = Vec::new();
    let mut terminal: Vec<(f64, f64)> = Vec::new();
    for (p, seed, dec) in samples {
        for cluster in dec.giant_candidates(tau) {
            for (ci, chain) in end_chains(dec, g, cluster, radii).iter().enumerate() {
                for (li, &r) in chain.radii.iter().enumerate() {
                    rows.push(ChainRow {
                        p,
                        seed,
                        cluster,
                        chain: ci as u32,
                        radius: r,
                        arc_count: chain.arcs[li].len() as u32,
                        angular_diameter: chain.angular_diameter[li],
                    });
                }
                terminal.push((p, chain.terminal_diameter()));
            }
        }
    }
    let mut ps: Vec<f64> = terminal.iter().map(|&(p, _)| p).collect();
    ps.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ps.dedup();
    let per_p = ps
        .into_iter()
        .map(|p| {
            let mut ds: Vec<f64> = terminal
                .iter()
                .filter(|&&(q, _)| q == p)
                .map(|&(_, d)| d)
                .collect();
            ds.sort_by(|a, b| a.partial_cmp(b).unwrap());
            OnePointSummary {
                p,
                chains: ds.len(),
                median_terminal: percentile(&ds, 0.5),
                p90_terminal: percentile(&ds, 0.9),
            }
        })
        .collect();
    OnePointStatistic { rows, per_p }
}

/// Ideal angles of outermost-layer vertices in clusters of size at least
/// `sigma`, with the largest cyclic gap between consecutive directions.
pub fn limit_direction_density(
    dec: &ClusterDecomposition,
    g: &TilingGraph,
    sigma: u32,
) -> LimitDirectionSet {
    assert!(sigma >= 1);
    let mut angles: Vec<f64> = g
        .boundary_vertices()
        .filter(|&v| dec.size(dec.label(v)) >= sigma)
        .map(|v| g.angle(v))
        .collect();
    angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let largest_gap = if angles.is_empty() {
        TAU
    } else {
        (0..angles.len())
            .map(|i| ccw_arc_len(angles[i], angles[(i + 1) % angles.len()]))
            .fold(0.0, f64::max)
    };
    LimitDirectionSet {
        angles,
        largest_gap,
    }
}

/// Number of distinct clusters of size at least `sigma` meeting the
/// halfplane.
pub fn halfplane_cluster_count(
    dec: &ClusterDecomposition,
    g: &TilingGraph,
    h: &Halfplane,
    sigma: u32,
) -> usize {
    let mut labels: Vec<u32> = g
        .halfplane_vertices(h)
        .into_iter()
        .map(|v| dec.label(v))
        .filter(|&l| dec.size(l) >= sigma)
        .collect();
    labels.sort_unstable();
    labels.dedup();
    labels.len()
}
