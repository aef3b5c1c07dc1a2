//! Dual patches: the graph over closed faces, two faces adjacent when they
//! share a primal edge, together with the bijection e ↦ e† on its domain.

use std::collections::VecDeque;
use std::f64::consts::PI;

use super::{TilingError, TilingGraph};
use crate::geom::{self, Point};
use crate::mobius::MobiusIsometry;

/// Dual of a [`TilingGraph`] patch.
///
/// `graph` is a TilingGraph-shaped structure whose vertices are the closed
/// faces of the primal; its own interior-degree invariant is weaker than a
/// generated patch's, since faces near the primal boundary can miss dual
/// neighbours at any dual layer.
#[derive(Clone, Debug)]
pub struct DualPatch {
    pub graph: TilingGraph,
    /// Primal face index of each dual vertex.
    pub face_of_vertex: Vec<u32>,
    /// Primal edge index → dual edge index, defined exactly on primal edges
    /// shared by two closed faces.
    pub edge_bijection: Vec<Option<u32>>,
}

impl DualPatch {
    /// Inverse of the bijection: primal edge crossed by a dual edge.
    pub fn primal_edge(&self, dual_edge: u32) -> u32 {
        self.edge_bijection
            .iter()
            .position(|&d| d == Some(dual_edge))
            .expect("dual edge outside bijection range") as u32
    }
}

/// Build the dual patch over the closed faces of `g`.
pub fn dual_graph(g: &TilingGraph) -> Result<DualPatch, TilingError> {
    let nf = g.face_count();
    if nf == 0 {
        return Err(TilingError::EmptyDual);
    }
    let p = g.symbol().p as usize;

    // faces incident to each primal edge (at most two, by planarity)
    let mut edge_faces: Vec<[u32; 2]> = vec![[u32::MAX; 2]; g.edge_count()];
    let edge_of = |u: u32, v: u32| -> u32 {
        let slot = g.neighbors(u).iter().position(|&x| x == v).unwrap();
        g.incident_edges(u)[slot]
    };
    for (f, cycle) in g.faces_iter().enumerate() {
        for i in 0..p {
            let e = edge_of(cycle[i], cycle[(i + 1) % p]) as usize;
            let slot = &mut edge_faces[e];
            if slot[0] == u32::MAX {
                slot[0] = f as u32;
            } else {
                assert_eq!(slot[1], u32::MAX, "primal edge on more than two faces");
                slot[1] = f as u32;
            }
        }
    }

    // adjacency between faces, remembering the shared primal edge
    let mut raw_edges: Vec<(u32, u32, u32)> = Vec::new();
    for (e, fs) in edge_faces.iter().enumerate() {
        if fs[1] != u32::MAX {
            let (a, b) = (fs[0].min(fs[1]), fs[0].max(fs[1]));
            raw_edges.push((a, b, e as u32));
        }
    }

    // dual layers by BFS from the face listed first
    let mut adj: Vec<Vec<u32>> = vec![Vec::new(); nf];
    for &(a, b, _) in &raw_edges {
        adj[a as usize].push(b);
        adj[b as usize].push(a);
    }
    let mut dist = vec![u32::MAX; nf];
    let mut bfs = VecDeque::new();
    dist[0] = 0;
    bfs.push_back(0u32);
    while let Some(v) = bfs.pop_front() {
        for &w in &adj[v as usize] {
            if dist[w as usize] == u32::MAX {
                dist[w as usize] = dist[v as usize] + 1;
                bfs.push_back(w);
            }
        }
    }
    // a disconnected closed face cannot occur in a generated ball, but keep
    // unreachable faces at the far end rather than panicking
    let far = dist.iter().filter(|&&d| d != u32::MAX).max().copied().unwrap_or(0) + 1;
    for d in dist.iter_mut() {
        if *d == u32::MAX {
            *d = far;
        }
    }

    let mut order: Vec<u32> = (0..nf as u32).collect();
    order.sort_by_key(|&f| (dist[f as usize], f));
    let mut remap = vec![u32::MAX; nf];
    for (new, &f) in order.iter().enumerate() {
        remap[f as usize] = new as u32;
    }

    let layers: Vec<u32> = order.iter().map(|&f| dist[f as usize]).collect();
    let radius = layers.last().copied().unwrap_or(0);
    let positions: Vec<Point> = order.iter().map(|&f| face_center(g, f as usize)).collect();

    let mut edges: Vec<(u32, u32)> = Vec::new();
    let mut mapped: Vec<(u32, u32, u32)> = raw_edges
        .iter()
        .map(|&(a, b, e)| {
            let (na, nb) = (remap[a as usize], remap[b as usize]);
            (na.min(nb), na.max(nb), e)
        })
        .collect();
    mapped.sort_unstable();
    let mut edge_bijection: Vec<Option<u32>> = vec![None; g.edge_count()];
    for (de, &(a, b, e)) in mapped.iter().enumerate() {
        edges.push((a, b));
        edge_bijection[e as usize] = Some(de as u32);
    }

    // dual faces: the cycle of faces around each primal vertex whose full
    // ring of q faces is closed
    let q = g.symbol().q as usize;
    let mut corner_next: Vec<std::collections::HashMap<u32, (u32, u32)>> =
        vec![std::collections::HashMap::new(); g.vertex_count()];
    for (f, cycle) in g.faces_iter().enumerate() {
        for i in 0..p {
            let v = cycle[i];
            let succ = cycle[(i + 1) % p];
            let pred = cycle[(i + p - 1) % p];
            // at v the face occupies the corner from `succ` to `pred`
            corner_next[v as usize].insert(succ, (pred, f as u32));
        }
    }
    let mut dual_faces: Vec<u32> = Vec::new();
    for v in 0..g.vertex_count() {
        if corner_next[v].len() != q {
            continue;
        }
        let start = *corner_next[v].keys().min().unwrap();
        let mut ring = Vec::with_capacity(q);
        let mut s = start;
        loop {
            let Some(&(pred, f)) = corner_next[v].get(&s) else {
                ring.clear();
                break;
            };
            ring.push(remap[f as usize]);
            s = pred;
            if s == start {
                break;
            }
            if ring.len() > q {
                ring.clear();
                break;
            }
        }
        if ring.len() == q {
            let mstart = ring
                .iter()
                .enumerate()
                .min_by_key(|&(_, &x)| x)
                .map(|(i, _)| i)
                .unwrap();
            for i in 0..q {
                dual_faces.push(ring[(mstart + i) % q]);
            }
        }
    }
    let mut face_order: Vec<usize> = (0..dual_faces.len() / q).collect();
    face_order.sort_by(|&a, &b| dual_faces[a * q..a * q + q].cmp(&dual_faces[b * q..b * q + q]));
    let dual_faces: Vec<u32> = face_order
        .iter()
        .flat_map(|&i| dual_faces[i * q..i * q + q].iter().copied())
        .collect();

    let (adj_off, adj_vert, adj_edge) = super::build_csr(nf, &edges);

    let graph = TilingGraph {
        symbol: g.symbol().dual(),
        radius,
        layers,
        positions,
        edges,
        faces: dual_faces,
        adj_off,
        adj_vert,
        adj_edge,
    };
    Ok(DualPatch {
        graph,
        face_of_vertex: order,
        edge_bijection,
    })
}

/// Circumcenter of a closed face: the Möbius image of the canonical face
/// center, carried by the frame of the face's first corner.
fn face_center(g: &TilingGraph, f: usize) -> Point {
    let cycle = g.face(f);
    let p0 = g.position(cycle[0]);
    let p1 = g.position(cycle[1]);
    let t = MobiusIsometry::translation_to(p0);
    let alpha = t.inverse().apply(p1).arg();
    let rho = geom::face_circumradius(g.symbol().p, g.symbol().q);
    // center on the corner bisector, π/q counterclockwise of the first edge
    let local = Point::from_polar(
        geom::euclidean_radius(rho),
        alpha + PI / g.symbol().q as f64,
    );
    t.apply(local)
}
