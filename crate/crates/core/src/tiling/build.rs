//! Layer-by-layer combinatorial growth of {p,q} patches.
//!
//! The patch is grown as a planar map: every vertex keeps its incident edges
//! in counterclockwise rotation order, and every pair of rotation-consecutive
//! edges has the face in the corner between them recorded as soon as the pair
//! becomes adjacent. Growth proceeds by completing vertices in breadth-first
//! layer order; completing a vertex closes the faces remaining around it,
//! attaching chains of fresh vertices where the face boundary does not exist
//! yet. No floating point is involved in the combinatorics; disc coordinates
//! are assigned afterwards by propagating Möbius frames over the rotation
//! structure.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};
use std::f64::consts::{PI, TAU};

use super::{SchlafliSymbol, TilingError, TilingGraph};
use crate::geom::{self, Point};
use crate::mobius::MobiusIsometry;

/// Largest supported vertex degree (rotation corners are a u64 bitmask).
const MAX_Q: u32 = 64;

const UNSET_LAYER: u32 = u32::MAX - 1;

struct Builder {
    p: usize,
    q: usize,
    /// Rotation fans, `q` slots per vertex, counterclockwise.
    nbr: Vec<u32>,
    deg: Vec<u8>,
    /// Bit `i` set = the face in the corner between rotation slots `i` and
    /// `i+1` exists (slot `q-1` wraps to slot 0 once the fan is full).
    corners: Vec<u64>,
    layer: Vec<u32>,
    done: Vec<bool>,
    /// Closed faces, flat counterclockwise cycles of stride `p`.
    faces: Vec<u32>,
    /// Completion queue keyed by (tentative layer, vertex id); lazy deletion.
    queue: BinaryHeap<Reverse<(u32, u32)>>,
}

pub(super) fn generate(
    symbol: SchlafliSymbol,
    radius: u32,
    cap: usize,
) -> Result<TilingGraph, TilingError> {
    let symbol = SchlafliSymbol::new(symbol.p, symbol.q)?;
    if symbol.q > MAX_Q {
        return Err(TilingError::InvalidSymbol {
            p: symbol.p,
            q: symbol.q,
            product: u32::MAX,
        });
    }
    let mut b = Builder {
        p: symbol.p as usize,
        q: symbol.q as usize,
        nbr: Vec::new(),
        deg: Vec::new(),
        corners: Vec::new(),
        layer: Vec::new(),
        done: Vec::new(),
        faces: Vec::new(),
        queue: BinaryHeap::new(),
    };
    b.new_vertex(0);
    while let Some(Reverse((l, v))) = b.queue.pop() {
        if b.done[v as usize] || l != b.layer[v as usize] {
            continue;
        }
        if l >= radius {
            break;
        }
        b.complete(v);
        b.done[v as usize] = true;
        if b.layer.len() > cap {
            return Err(TilingError::PatchTooLarge { cap });
        }
    }
    Ok(b.finish(symbol, radius))
}

impl Builder {
    fn new_vertex(&mut self, layer: u32) -> u32 {
        let id = self.layer.len() as u32;
        self.nbr.extend(std::iter::repeat(0).take(self.q));
        self.deg.push(0);
        self.corners.push(0);
        self.layer.push(layer);
        self.done.push(false);
        if layer != UNSET_LAYER {
            self.queue.push(Reverse((layer, id)));
        }
        id
    }

    fn fan(&self, v: u32) -> &[u32] {
        let d = self.deg[v as usize] as usize;
        &self.nbr[v as usize * self.q..v as usize * self.q + d]
    }

    fn idx_of(&self, v: u32, u: u32) -> usize {
        self.fan(v)
            .iter()
            .position(|&x| x == u)
            .expect("edge missing from rotation fan")
    }

    fn push_back_nbr(&mut self, v: u32, u: u32) {
        let d = self.deg[v as usize] as usize;
        debug_assert!(d < self.q);
        self.nbr[v as usize * self.q + d] = u;
        self.deg[v as usize] += 1;
    }

    fn push_front_nbr(&mut self, v: u32, u: u32) {
        let d = self.deg[v as usize] as usize;
        debug_assert!(d < self.q);
        let base = v as usize * self.q;
        self.nbr.copy_within(base..base + d, base + 1);
        self.nbr[base] = u;
        self.corners[v as usize] <<= 1;
        self.deg[v as usize] += 1;
    }

    fn corner_filled(&self, v: u32, i: usize) -> bool {
        self.corners[v as usize] >> i & 1 == 1
    }

    /// Close every face still missing around `v`.
    fn complete(&mut self, v: u32) {
        while (self.deg[v as usize] as usize) < self.q {
            self.close(v, false);
        }
        if !self.corner_filled(v, self.q - 1) {
            self.close(v, true);
        }
        debug_assert_eq!(self.corners[v as usize].count_ones() as usize, self.q);
    }

    /// Counterclockwise face walk starting along `w → a`, collecting at most
    /// `p` vertices. The walk continues only through the unfilled wrap corner
    /// of full-degree vertices; at a partial fan it stops (the incoming edge
    /// sits at slot 0 there, with the outer region clockwise-before it).
    fn walk_ccw(&self, w: u32, a: u32, path: &mut Vec<u32>) {
        path.clear();
        path.push(w);
        path.push(a);
        while path.len() < self.p {
            let cur = path[path.len() - 1];
            let prev = path[path.len() - 2];
            let j = self.idx_of(cur, prev);
            assert_eq!(j, 0, "face walk entered a fan away from its end");
            let d = self.deg[cur as usize] as usize;
            if d == self.q && !self.corner_filled(cur, self.q - 1) {
                path.push(self.nbr[cur as usize * self.q + self.q - 1]);
            } else {
                break;
            }
        }
    }

    /// Mirror of [`Self::walk_ccw`]: clockwise walk along `w → b`, where the
    /// incoming edge sits at the last fan slot.
    fn walk_cw(&self, w: u32, b: u32, limit: usize, path: &mut Vec<u32>) {
        path.clear();
        path.push(w);
        path.push(b);
        while path.len() < limit {
            let cur = path[path.len() - 1];
            let prev = path[path.len() - 2];
            let j = self.idx_of(cur, prev);
            let d = self.deg[cur as usize] as usize;
            assert_eq!(j, d - 1, "face walk entered a fan away from its end");
            if d == self.q && !self.corner_filled(cur, self.q - 1) {
                path.push(self.nbr[cur as usize * self.q]);
            } else {
                break;
            }
        }
    }

    /// Close one face at `w`: the next gap face at the counterclockwise end
    /// of the fan (`wrap = false`), or the final face between the last and
    /// first fan edges (`wrap = true`, requires a full fan).
    fn close(&mut self, w: u32, wrap: bool) {
        let d = self.deg[w as usize] as usize;
        let mut left = Vec::with_capacity(self.p);
        if d == 0 {
            left.push(w);
        } else {
            let a = self.nbr[w as usize * self.q + d - 1];
            self.walk_ccw(w, a, &mut left);
        }
        if left.len() == self.p {
            // every edge of the face already exists
            let cycle = left;
            self.record_face(&cycle);
            return;
        }
        let mut right = Vec::with_capacity(self.p);
        if wrap {
            let b = self.nbr[w as usize * self.q];
            // allow one extra vertex so walks that meet can be recognized
            let limit = self.p + 2 - left.len();
            self.walk_cw(w, b, limit, &mut right);
            if left.last() == right.last() {
                // walks met: the cycle is complete from both sides
                assert_eq!(left.len() + right.len() - 2, self.p);
                let mut cycle = left;
                cycle.extend(right[1..right.len() - 1].iter().rev());
                self.record_face(&cycle);
                return;
            }
        } else {
            right.push(w);
        }
        let existing = left.len() + right.len() - 1;
        assert!(existing <= self.p, "face walks overran the face size");
        let m = self.p - existing;
        let xs = *left.last().unwrap();
        let yt = *right.last().unwrap();

        let mut cycle = left;
        if m == 0 {
            self.push_front_nbr(xs, yt);
            self.push_back_nbr(yt, xs);
        } else {
            let chain: Vec<u32> = (0..m).map(|_| self.new_vertex(UNSET_LAYER)).collect();
            self.push_front_nbr(xs, chain[0]);
            self.push_back_nbr(yt, chain[m - 1]);
            for (i, &n) in chain.iter().enumerate() {
                let succ = if i + 1 < m { chain[i + 1] } else { yt };
                let pred = if i > 0 { chain[i - 1] } else { xs };
                self.push_back_nbr(n, succ);
                self.push_back_nbr(n, pred);
            }
            cycle.extend(&chain);
        }
        cycle.extend(right[1..].iter().rev());
        debug_assert_eq!(cycle.len(), self.p);
        self.record_face(&cycle);
        self.relax_layers(&cycle);
    }

    /// Mark the corner of every face vertex and append the face record. The
    /// rotation-adjacency assertions certify the planar-map invariants.
    fn record_face(&mut self, cycle: &[u32]) {
        let p = self.p;
        for i in 0..p {
            let v = cycle[i];
            let succ = cycle[(i + 1) % p];
            let pred = cycle[(i + p - 1) % p];
            let js = self.idx_of(v, succ);
            let d = self.deg[v as usize] as usize;
            let jp = (js + 1) % d;
            assert_eq!(
                self.nbr[v as usize * self.q + jp],
                pred,
                "face corner is not rotation-consecutive"
            );
            assert!(
                !self.corner_filled(v, js),
                "two faces claim the same corner"
            );
            assert!(js + 1 < d || d == self.q, "face uses a wrap corner of a partial fan");
            self.corners[v as usize] |= 1 << js;
        }
        self.faces.extend_from_slice(cycle);
    }

    /// Settle tentative layers around a freshly closed face and propagate any
    /// decrease through the whole current graph (Dijkstra-style relaxation;
    /// decreases outside the new chain are possible when a closing edge
    /// shortcuts two walk ends).
    fn relax_layers(&mut self, cycle: &[u32]) {
        let p = self.p;
        let mut dq: VecDeque<u32> = VecDeque::new();
        loop {
            let mut changed = false;
            for i in 0..p {
                let v = cycle[i];
                let best = self.layer[cycle[(i + 1) % p] as usize]
                    .min(self.layer[cycle[(i + p - 1) % p] as usize])
                    .saturating_add(1);
                if best < self.layer[v as usize] {
                    self.layer[v as usize] = best;
                    self.queue.push(Reverse((best, v)));
                    dq.push_back(v);
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        while let Some(v) = dq.pop_front() {
            let lv = self.layer[v as usize];
            for k in 0..self.deg[v as usize] as usize {
                let u = self.nbr[v as usize * self.q + k];
                if self.layer[u as usize] > lv + 1 {
                    self.layer[u as usize] = lv + 1;
                    self.queue.push(Reverse((lv + 1, u)));
                    dq.push_back(u);
                }
            }
        }
    }

    /// Verify layers by BFS, restrict to the ball, reindex, canonicalize
    /// faces, build adjacency and assign disc coordinates.
    fn finish(self, symbol: SchlafliSymbol, radius: u32) -> TilingGraph {
        let n = self.layer.len();
        let q = self.q;
        let p = self.p;

        let mut dist = vec![u32::MAX; n];
        let mut bfs = VecDeque::new();
        dist[0] = 0;
        bfs.push_back(0u32);
        while let Some(v) = bfs.pop_front() {
            let dv = dist[v as usize];
            for k in 0..self.deg[v as usize] as usize {
                let u = self.nbr[v as usize * q + k];
                if dist[u as usize] == u32::MAX {
                    dist[u as usize] = dv + 1;
                    bfs.push_back(u);
                }
            }
        }
        for v in 0..n {
            if dist[v] <= radius {
                assert_eq!(dist[v], self.layer[v], "tentative layer disagrees with BFS");
            }
        }

        let mut kept: Vec<u32> = (0..n as u32).filter(|&v| dist[v as usize] <= radius).collect();
        kept.sort_by_key(|&v| (dist[v as usize], v));
        let mut remap = vec![u32::MAX; n];
        for (new, &old) in kept.iter().enumerate() {
            remap[old as usize] = new as u32;
        }

        let layers: Vec<u32> = kept.iter().map(|&v| dist[v as usize]).collect();

        let mut edges: Vec<(u32, u32)> = Vec::new();
        for &old in &kept {
            let nu = remap[old as usize];
            for k in 0..self.deg[old as usize] as usize {
                let w = self.nbr[old as usize * q + k];
                let nw = remap[w as usize];
                if nw != u32::MAX && nu < nw {
                    edges.push((nu, nw));
                }
            }
        }
        edges.sort_unstable();
        edges.dedup();

        let mut faces: Vec<u32> = Vec::new();
        for cycle in self.faces.chunks_exact(p) {
            if cycle.iter().all(|&v| remap[v as usize] != u32::MAX) {
                let mapped: Vec<u32> = cycle.iter().map(|&v| remap[v as usize]).collect();
                let start = mapped
                    .iter()
                    .enumerate()
                    .min_by_key(|&(_, &v)| v)
                    .map(|(i, _)| i)
                    .unwrap();
                for i in 0..p {
                    faces.push(mapped[(start + i) % p]);
                }
            }
        }
        let mut face_order: Vec<usize> = (0..faces.len() / p).collect();
        face_order.sort_by(|&a, &b| faces[a * p..a * p + p].cmp(&faces[b * p..b * p + p]));
        let faces: Vec<u32> = face_order
            .iter()
            .flat_map(|&i| faces[i * p..i * p + p].iter().copied())
            .collect();

        let positions = self.assign_positions(symbol, &kept, &remap);
        let (adj_off, adj_vert, adj_edge) = super::build_csr(kept.len(), &edges);

        TilingGraph {
            symbol,
            radius,
            layers,
            positions,
            edges,
            faces,
            adj_off,
            adj_vert,
            adj_edge,
        }
    }

    /// Poincaré-disc coordinates by frame propagation: the frame of a
    /// directed edge maps the origin to the source vertex and the positive
    /// real axis toward the target; sibling edges differ by rotations of
    /// 2π/q, the reverse edge by a translation of one edge length and a
    /// half-turn.
    fn assign_positions(
        &self,
        symbol: SchlafliSymbol,
        kept: &[u32],
        remap: &[u32],
    ) -> Vec<Point> {
        let q = self.q;
        let el = geom::edge_length(symbol.p, symbol.q);
        let step = MobiusIsometry::translation(el)
            .compose(&MobiusIsometry::rotation(PI));
        let reach = Point::new(geom::euclidean_radius(el), 0.0);

        let mut positions = vec![Point::new(0.0, 0.0); kept.len()];
        let mut visited = vec![false; self.layer.len()];
        visited[0] = true;
        // queue of (vertex, parent, frame of the directed edge parent → vertex)
        let mut bfs: VecDeque<(u32, u32, MobiusIsometry)> = VecDeque::new();
        for k in 0..self.deg[0] as usize {
            let w = self.nbr[k];
            if remap[w as usize] != u32::MAX {
                bfs.push_back((w, 0, MobiusIsometry::rotation(TAU * k as f64 / q as f64)));
            }
        }
        while let Some((v, parent, frame)) = bfs.pop_front() {
            if visited[v as usize] {
                continue;
            }
            visited[v as usize] = true;
            positions[remap[v as usize] as usize] = frame.apply(reach);
            // frame points from the parent to v; flip it to sit at v,
            // aiming back along the incoming edge
            let at_v = frame.compose(&step);
            let parent_slot = self.idx_of(v, parent);
            for k in 0..self.deg[v as usize] as usize {
                let u = self.nbr[v as usize * q + k];
                if !visited[u as usize] && remap[u as usize] != u32::MAX {
                    let turns = (k + q - parent_slot) % q;
                    let f = at_v.compose(&MobiusIsometry::rotation(TAU * turns as f64 / q as f64));
                    bfs.push_back((u, v, f));
                }
            }
        }
        positions
    }
}
