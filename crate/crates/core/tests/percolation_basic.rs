//! Sampling, cluster decomposition and dual percolation against direct
//! oracles: DFS components, binomial concentration bands and the duality
//! involution.

use std::collections::HashMap;

use hyperperc_core::percolation::{clusters, dual_sample, sample, PercolationSample};
use hyperperc_core::tiling::dual_graph;
use hyperperc_core::{LayeredGraph, SchlafliSymbol, TilingGraph};

fn patch(radius: u32) -> TilingGraph {
    TilingGraph::generate(SchlafliSymbol::new(5, 5).unwrap(), radius).unwrap()
}

/// Minimal layered graph over an explicit edge list, for hand-built cases.
struct FixtureGraph {
    edges: Vec<(u32, u32)>,
    layers: Vec<u32>,
}

impl FixtureGraph {
    fn new(n: usize, edges: Vec<(u32, u32)>) -> FixtureGraph {
        // layers by BFS from vertex 0; isolated vertices park at the far end
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            assert!(u < v);
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        let mut layers = vec![u32::MAX; n];
        layers[0] = 0;
        let mut queue = std::collections::VecDeque::from([0u32]);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v as usize] {
                if layers[w as usize] == u32::MAX {
                    layers[w as usize] = layers[v as usize] + 1;
                    queue.push_back(w);
                }
            }
        }
        let far = layers.iter().filter(|&&l| l != u32::MAX).max().copied().unwrap();
        for l in layers.iter_mut() {
            if *l == u32::MAX {
                *l = far;
            }
        }
        FixtureGraph { edges, layers }
    }
}

impl LayeredGraph for FixtureGraph {
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
        *self.layers.iter().max().unwrap()
    }
    fn boundary_anchors(&self, n: usize) -> Vec<u32> {
        let r = self.radius();
        (0..self.layers.len() as u32)
            .filter(|&v| self.layers[v as usize] == r)
            .take(n)
            .collect()
    }
}

/// Independent component labels by DFS over the open subgraph.
fn dfs_labels(g: &impl LayeredGraph, s: &PercolationSample) -> Vec<u32> {
    let n = g.vertex_count();
    let mut adj = vec![Vec::new(); n];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        if s.is_open(e as u32) {
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
    }
    let mut labels = vec![u32::MAX; n];
    for start in 0..n as u32 {
        if labels[start as usize] != u32::MAX {
            continue;
        }
        let mut stack = vec![start];
        labels[start as usize] = start;
        while let Some(v) = stack.pop() {
            for &w in &adj[v as usize] {
                if labels[w as usize] == u32::MAX {
                    labels[w as usize] = start;
                    stack.push(w);
                }
            }
        }
    }
    labels
}

#[test]
fn trivial_probabilities() {
    let g = patch(3);
    let s0 = sample(&g, 0.0, 7);
    assert_eq!(s0.open_count(), 0);
    let s1 = sample(&g, 1.0, 7);
    assert_eq!(s1.open_count(), g.edge_count());

    let d0 = clusters(&s0, &g);
    assert_eq!(d0.cluster_count(), g.vertex_count());
    for v in 0..g.vertex_count() as u32 {
        assert_eq!(d0.label(v), v);
        assert_eq!(d0.size(v), 1);
    }
    let d1 = clusters(&s1, &g);
    assert_eq!(d1.cluster_count(), 1);
    assert_eq!(d1.size(0), g.vertex_count() as u32);
    assert_eq!(d1.members(0).len(), g.vertex_count());
}

#[test]
fn open_fraction_in_binomial_band() {
    let g = patch(9);
    let ne = g.edge_count();
    assert!(ne > 100_000, "patch too small for the band check: {ne} edges");
    let p = 0.5;
    let s = sample(&g, p, 20260823);
    let sigma = (ne as f64 * p * (1.0 - p)).sqrt();
    let dev = (s.open_count() as f64 - ne as f64 * p).abs();
    assert!(dev < 4.0 * sigma, "open count off by {dev} (sigma {sigma})");
}

#[test]
fn per_edge_frequency_in_band() {
    let g = patch(2);
    let ne = g.edge_count();
    let n_samples = 600;
    for p in [0.1, 0.5, 0.9] {
        let mut freq = vec![0u32; ne];
        for seed in 0..n_samples {
            let s = sample(&g, p, 900_000 + seed);
            for (e, f) in freq.iter_mut().enumerate() {
                *f += u32::from(s.is_open(e as u32));
            }
        }
        let sigma = (n_samples as f64 * p * (1.0 - p)).sqrt();
        for (e, &f) in freq.iter().enumerate() {
            let dev = (f as f64 - n_samples as f64 * p).abs();
            assert!(dev < 4.0 * sigma, "edge {e} at p {p}: deviation {dev}");
        }
    }
}

#[test]
fn hand_built_graph_matches_dfs() {
    // 8 vertices: a path 0-1-2, a triangle 3-4-5 attached by 2-3, isolated 6
    // and 7, with some closed edges interleaved
    let g = FixtureGraph::new(
        8,
        vec![(0, 1), (1, 2), (2, 3), (3, 4), (3, 5), (4, 5), (6, 7)],
    );
    let s = PercolationSample::from_open_edges(8, 7, [0u32, 1, 3, 4, 5]);
    let dec = clusters(&s, &g);
    assert_eq!(dec.label(0), 0);
    assert_eq!(dec.label(2), 0);
    assert_eq!(dec.label(3), 3);
    assert_eq!(dec.label(5), 3);
    assert_eq!(dec.label(6), 6);
    assert_eq!(dec.label(7), 7);
    assert_eq!(dec.size(0), 3);
    assert_eq!(dec.size(3), 3);
    let oracle = dfs_labels(&g, &s);
    for v in 0..8u32 {
        assert_eq!(dec.label(v), oracle[v as usize]);
    }
}

#[test]
fn random_samples_match_dfs_oracle() {
    let g = patch(3);
    for i in 0..1000u64 {
        let p = (i % 11) as f64 / 10.0;
        let s = sample(&g, p, 31 + i);
        let dec = clusters(&s, &g);
        let oracle = dfs_labels(&g, &s);
        let mut sizes: HashMap<u32, u32> = HashMap::new();
        for v in 0..g.vertex_count() as u32 {
            assert_eq!(dec.label(v), oracle[v as usize], "sample {i} vertex {v}");
            *sizes.entry(oracle[v as usize]).or_insert(0) += 1;
        }
        assert_eq!(dec.cluster_count(), sizes.len());
        let mut total = 0;
        for (&l, &sz) in &sizes {
            assert_eq!(dec.size(l), sz);
            total += sz;
        }
        assert_eq!(total as usize, g.vertex_count());
    }
}

#[test]
fn boundary_incidence_counts_outermost_vertices() {
    let g = patch(3);
    let s = sample(&g, 0.55, 99);
    let dec = clusters(&s, &g);
    let r = g.radius();
    for &l in dec.cluster_ids() {
        let direct = dec
            .members(l)
            .iter()
            .filter(|&&v| g.layer(v) == r)
            .count() as u32;
        assert_eq!(dec.boundary_incidence(l), direct);
    }
}

#[test]
fn dual_sample_trivial_cases() {
    let g = patch(3);
    let d = dual_graph(&g).unwrap();
    let s1 = sample(&g, 1.0, 5);
    assert_eq!(dual_sample(&s1, &d).open_count(), 0);
    let s0 = sample(&g, 0.0, 5);
    assert_eq!(dual_sample(&s0, &d).open_count(), d.graph.edge_count());
}

#[test]
fn dual_open_frequency_is_one_minus_p() {
    let g = patch(3);
    let d = dual_graph(&g).unwrap();
    let p = 0.3;
    let n_samples = 2000u64;
    let ne = d.graph.edge_count();
    let mut freq = vec![0u32; ne];
    for seed in 0..n_samples {
        let ds = dual_sample(&sample(&g, p, seed), &d);
        for (e, f) in freq.iter_mut().enumerate() {
            *f += u32::from(ds.is_open(e as u32));
        }
    }
    let sigma = (n_samples as f64 * p * (1.0 - p)).sqrt();
    for (e, &f) in freq.iter().enumerate() {
        let dev = (f as f64 - n_samples as f64 * (1.0 - p)).abs();
        assert!(dev < 4.0 * sigma, "dual edge {e}: deviation {dev}");
    }
}

#[test]
fn dual_of_dual_restores_primal_status() {
    let g = patch(5);
    let d = dual_graph(&g).unwrap();
    let dd = dual_graph(&d.graph).unwrap();
    for seed in 0..20u64 {
        let s = sample(&g, 0.45, seed);
        let back = dual_sample(&dual_sample(&s, &d), &dd);
        let mut checked = 0;
        for e in 0..g.edge_count() as u32 {
            let Some(de) = d.edge_bijection[e as usize] else {
                continue;
            };
            let Some(dde) = dd.edge_bijection[de as usize] else {
                continue;
            };
            assert_eq!(back.is_open(dde), s.is_open(e), "edge {e}");
            checked += 1;
        }
        assert!(checked > 100);
    }
}
