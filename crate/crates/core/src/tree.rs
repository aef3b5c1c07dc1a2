//! Complete binary trees, both as abstract layered graphs (the reference
//! graph with critical probability exactly 1/2) and embedded into {5,5}
//! patches as systems of vertex-disjoint descending paths.

use thiserror::Error;

use crate::geom::wrap_angle;
use crate::graph::LayeredGraph;
use crate::tiling::TilingGraph;

#[derive(Debug, Error)]
pub enum TreeError {
    /// The patch cannot host the requested depth; `needed` is the smallest
    /// sufficient patch radius.
    #[error("PatchTooLarge: depth {depth} needs patch radius >= {needed}, have {radius}")]
    PatchTooLarge { depth: u32, needed: u32, radius: u32 },
}

/// Complete binary tree of the given depth in heap order: root 0, children
/// of `v` at `2v+1` and `2v+2`, layer = tree level.
#[derive(Clone, Debug)]
pub struct BinaryTreeGraph {
    depth: u32,
    edges: Vec<(u32, u32)>,
    layers: Vec<u32>,
}

impl BinaryTreeGraph {
    pub fn new(depth: u32) -> BinaryTreeGraph {
        assert!(depth < 30, "tree of depth {depth} would not fit in memory");
        let n = (1u32 << (depth + 1)) - 1;
        let mut edges = Vec::with_capacity(n as usize - 1);
        let mut layers = vec![0u32; n as usize];
        for v in 0..n {
            if v > 0 {
                layers[v as usize] = layers[((v - 1) / 2) as usize] + 1;
            }
            if 2 * v + 2 < n {
                edges.push((v, 2 * v + 1));
                edges.push((v, 2 * v + 2));
            }
        }
        BinaryTreeGraph {
            depth,
            edges,
            layers,
        }
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    /// First vertex of the deepest level.
    pub fn first_leaf(&self) -> u32 {
        (1u32 << self.depth) - 1
    }
}

impl LayeredGraph for BinaryTreeGraph {
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
        self.depth
    }

    fn boundary_anchors(&self, n: usize) -> Vec<u32> {
        let leaves = 1usize << self.depth;
        let first = self.first_leaf();
        let take = n.min(leaves);
        (0..take)
            .map(|i| first + (i * leaves / take) as u32)
            .collect()
    }
}

/// An embedding of the complete binary tree into a tiling patch: branch
/// vertices in heap order, joined by vertex-disjoint descending paths of
/// length [`LAYERS_PER_LEVEL`].
#[derive(Clone, Debug)]
pub struct TreeEmbedding {
    pub depth: u32,
    /// Patch vertex of each tree node, heap order; node at level k sits at
    /// patch layer `LAYERS_PER_LEVEL * k`.
    pub branch_vertices: Vec<u32>,
    /// For each non-root node `v >= 1`, the patch path from the parent's
    /// branch vertex to this node's, endpoints included.
    pub paths: Vec<Vec<u32>>,
}

/// Patch layers consumed per tree level; two layers give sibling subtrees
/// room to separate angularly before they branch again.
pub const LAYERS_PER_LEVEL: u32 = 2;

impl TreeEmbedding {
    /// All patch vertices used by the embedding, deduplicated and sorted.
    pub fn vertices(&self) -> Vec<u32> {
        let mut out: Vec<u32> = self.paths.iter().flatten().copied().collect();
        out.push(self.branch_vertices[0]);
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Embed the complete binary tree of the given depth into a {5,5} patch.
///
/// Each tree edge becomes a strictly descending path of two patch edges, so
/// depth `d` needs patch radius at least `2d`. Children branch along
/// angularly separated outward directions; a backtracking search over the
/// candidate paths guarantees the disjointness invariants whenever the
/// greedy order runs into a collision.
pub fn embed_binary_tree(g: &TilingGraph, depth: u32) -> Result<TreeEmbedding, TreeError> {
    let needed = depth * LAYERS_PER_LEVEL;
    let too_small = || TreeError::PatchTooLarge {
        depth,
        needed,
        radius: g.radius(),
    };
    if g.radius() < needed {
        return Err(too_small());
    }
    let n_nodes = (1usize << (depth + 1)) - 1;
    let mut branch = vec![u32::MAX; n_nodes];
    let mut paths: Vec<Vec<u32>> = vec![Vec::new(); n_nodes];
    let mut used = vec![false; g.vertex_count()];
    branch[0] = 0;
    used[0] = true;
    if place_children(g, depth, 0, 0, &mut branch, &mut paths, &mut used) {
        Ok(TreeEmbedding {
            depth,
            branch_vertices: branch,
            paths: paths.into_iter().skip(1).collect(),
        })
    } else {
        Err(too_small())
    }
}

/// Candidate two-edge descending paths from `v`, each returned as `(x, y)`.
fn descending_paths(g: &TilingGraph, v: u32, used: &[bool]) -> Vec<(u32, u32)> {
    let lv = g.layer(v);
    let mut out = Vec::new();
    for &x in g.neighbors(v) {
        if used[x as usize] || g.layer(x) != lv + 1 {
            continue;
        }
        for &y in g.neighbors(x) {
            if !used[y as usize] && g.layer(y) == lv + 2 {
                out.push((x, y));
            }
        }
    }
    out
}

fn circular_distance(a: f64, b: f64) -> f64 {
    let d = wrap_angle(a - b);
    d.min(std::f64::consts::TAU - d)
}

fn place_children(
    g: &TilingGraph,
    depth: u32,
    node: usize,
    level: u32,
    branch: &mut Vec<u32>,
    paths: &mut Vec<Vec<u32>>,
    used: &mut Vec<bool>,
) -> bool {
    if level == depth {
        return true;
    }
    let v = branch[node];
    let cands = descending_paths(g, v, used);
    // candidate pairs, widest angular separation between endpoints first
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..cands.len() {
        for j in 0..cands.len() {
            if i == j {
                continue;
            }
            let (xi, yi) = cands[i];
            let (xj, yj) = cands[j];
            if xi != xj && xi != yj && yi != xj && yi != yj {
                pairs.push((i, j));
            }
        }
    }
    pairs.sort_by(|&(i, j), &(k, l)| {
        let si = circular_distance(g.angle(cands[i].1), g.angle(cands[j].1));
        let sk = circular_distance(g.angle(cands[k].1), g.angle(cands[l].1));
        sk.partial_cmp(&si)
            .unwrap()
            .then_with(|| (cands[i], cands[j]).cmp(&(cands[k], cands[l])))
    });
    for (i, j) in pairs {
        let (left, right) = (cands[i], cands[j]);
        for (slot, (x, y)) in [(2 * node + 1, left), (2 * node + 2, right)] {
            branch[slot] = y;
            paths[slot] = vec![v, x, y];
            used[x as usize] = true;
            used[y as usize] = true;
        }
        if place_children(g, depth, 2 * node + 1, level + 1, branch, paths, used)
            && place_children(g, depth, 2 * node + 2, level + 1, branch, paths, used)
        {
            return true;
        }
        for slot in [2 * node + 1, 2 * node + 2] {
            undo_subtree(slot, depth, level + 1, branch, paths, used);
        }
    }
    false
}

/// Roll back every placement in the subtree rooted at `node`.
fn undo_subtree(
    node: usize,
    depth: u32,
    level: u32,
    branch: &mut Vec<u32>,
    paths: &mut Vec<Vec<u32>>,
    used: &mut Vec<bool>,
) {
    if branch[node] == u32::MAX {
        return;
    }
    if level < depth {
        undo_subtree(2 * node + 1, depth, level + 1, branch, paths, used);
        undo_subtree(2 * node + 2, depth, level + 1, branch, paths, used);
    }
    for &w in &paths[node][1..] {
        used[w as usize] = false;
    }
    branch[node] = u32::MAX;
    paths[node].clear();
}
