//! Structural invariants of generated patches, checked exactly as stated:
//! connected, simple, planar-embedded, interior degrees q, faces p-gons,
//! layers equal to graph distance.

use std::collections::VecDeque;

use hyperperc_core::geom::{self, Point};
use hyperperc_core::mobius::MobiusIsometry;
use hyperperc_core::tiling::TilingError;
use hyperperc_core::{SchlafliSymbol, TilingGraph};

fn bfs_distances(g: &TilingGraph) -> Vec<u32> {
    let mut dist = vec![u32::MAX; g.vertex_count()];
    let mut queue = VecDeque::new();
    dist[0] = 0;
    queue.push_back(0u32);
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            if dist[w as usize] == u32::MAX {
                dist[w as usize] = dist[v as usize] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

fn check_invariants(g: &TilingGraph) {
    let p = g.symbol().p;
    let q = g.symbol().q as usize;
    let r = g.radius();

    // simple: strictly sorted edge list without loops
    for w in g.edges().windows(2) {
        assert!(w[0] < w[1]);
    }
    for &(u, v) in g.edges() {
        assert_ne!(u, v);
    }

    // connected, and layer == graph distance from the root
    let dist = bfs_distances(g);
    for v in 0..g.vertex_count() {
        assert_eq!(dist[v], g.layer(v as u32), "vertex {v}");
        assert!(g.layer(v as u32) <= r);
    }

    // interior degree exactly q; boundary at most q
    for v in 0..g.vertex_count() as u32 {
        if g.layer(v) < r {
            assert_eq!(g.degree(v), q, "interior vertex {v}");
        } else {
            assert!(g.degree(v) <= q);
        }
    }

    // faces are simple p-cycles along existing edges
    for face in g.faces_iter() {
        assert_eq!(face.len(), p as usize);
        let mut sorted = face.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), p as usize, "face repeats a vertex");
        for i in 0..face.len() {
            let a = face[i];
            let b = face[(i + 1) % face.len()];
            assert!(g.neighbors(a).contains(&b), "face edge {a}-{b} missing");
        }
    }

    // embedding: every edge has the {p,q} edge length, all positions distinct
    let el = geom::edge_length(g.symbol().p, g.symbol().q);
    for &(u, v) in g.edges() {
        let d = geom::hyperbolic_distance(g.position(u), g.position(v));
        assert!(
            (d - el).abs() < 1e-6,
            "edge {u}-{v} has length {d}, expected {el}"
        );
    }
    for v in 0..g.vertex_count() as u32 {
        assert!(g.position(v).norm() < 1.0);
    }
}

/// Maps edge (a, b) so that a sits at the origin and b on the positive real
/// axis; returns the image of z and the image abscissa of b.
fn edge_frame(g: &TilingGraph, a: u32, b: u32) -> (MobiusIsometry, f64) {
    let t = MobiusIsometry::translation_to(g.position(a)).inverse();
    let phi = t.apply(g.position(b)).arg();
    let m = MobiusIsometry::rotation(-phi).compose(&t);
    let xb = m.apply(g.position(b)).re;
    (m, xb)
}

/// Exact-geometry crossing test for two disjoint geodesic edges.
fn edges_cross(g: &TilingGraph, e1: (u32, u32), e2: (u32, u32)) -> bool {
    let (m, xb) = edge_frame(g, e1.0, e1.1);
    let c = m.apply(g.position(e2.0));
    let d = m.apply(g.position(e2.1));
    if c.im * d.im >= 0.0 {
        return false;
    }
    // geodesic through c and d: circle with center (x0, y0) orthogonal to
    // the unit circle, satisfying 2 Re(z̄ z0) = |z|² + 1 for z in {c, d}
    let nc = c.norm_sqr() + 1.0;
    let nd = d.norm_sqr() + 1.0;
    let det = c.re * d.im - d.re * c.im;
    if det.abs() < 1e-12 {
        // a diameter: crosses the real axis only at the origin, which is
        // the image of e1's endpoint and excluded by the tolerance below
        return false;
    }
    let x0 = (nc * d.im - nd * c.im) / (2.0 * det);
    // real-axis hits x0 ± s multiply to 1, so only the in-disc one matters
    let disc = x0 * x0 - 1.0;
    if disc <= 0.0 {
        return false;
    }
    let s = disc.sqrt();
    [x0 - s, x0 + s]
        .iter()
        .any(|&x| x.abs() < 1.0 && x > 1e-9 && x < xb - 1e-9)
}

#[test]
fn ball_radius_zero_and_one() {
    let g = TilingGraph::generate(SchlafliSymbol::new(5, 5).unwrap(), 0).unwrap();
    assert_eq!(g.vertex_count(), 1);
    assert_eq!(g.edge_count(), 0);
    assert_eq!(g.face_count(), 0);

    let g = TilingGraph::generate(SchlafliSymbol::new(5, 5).unwrap(), 1).unwrap();
    assert_eq!(g.vertex_count(), 6);
    assert_eq!(g.edge_count(), 5);
    assert_eq!(g.degree(0), 5);
    check_invariants(&g);
}

#[test]
fn non_hyperbolic_symbols_rejected() {
    for (p, q) in [(4, 4), (3, 6), (6, 3), (3, 3), (4, 3), (3, 5), (2, 9)] {
        assert!(matches!(
            SchlafliSymbol::new(p, q),
            Err(TilingError::InvalidSymbol { .. })
        ));
    }
    assert!(SchlafliSymbol::new(3, 7).is_ok());
    assert!(SchlafliSymbol::new(7, 3).is_ok());
    assert!(SchlafliSymbol::new(4, 5).is_ok());
}

#[test]
fn patch_cap_is_enforced() {
    let sym = SchlafliSymbol::new(5, 5).unwrap();
    assert!(matches!(
        TilingGraph::generate_capped(sym, 6, 500),
        Err(TilingError::PatchTooLarge { .. })
    ));
}

#[test]
fn invariants_across_symbols() {
    for (p, q, r) in [
        (5u32, 5u32, 4u32),
        (7, 3, 6),
        (3, 7, 5),
        (4, 5, 4),
        (5, 4, 4),
        (6, 4, 3),
        (8, 3, 5),
        (3, 8, 4),
        (4, 6, 3),
    ] {
        let g = TilingGraph::generate(SchlafliSymbol::new(p, q).unwrap(), r).unwrap();
        check_invariants(&g);
        assert_eq!(g.radius(), r);
    }
}

#[test]
fn geodesic_edges_do_not_cross() {
    let g = TilingGraph::generate(SchlafliSymbol::new(5, 5).unwrap(), 3).unwrap();
    let edges = g.edges();
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            let (a, b) = edges[i];
            let (c, d) = edges[j];
            if a == c || a == d || b == c || b == d {
                continue;
            }
            assert!(
                !edges_cross(&g, edges[i], edges[j]),
                "edges {:?} and {:?} cross",
                edges[i],
                edges[j]
            );
        }
    }
}

#[test]
fn determinism_byte_identical() {
    let sym = SchlafliSymbol::new(5, 5).unwrap();
    let mut s1 = Vec::new();
    let mut s2 = Vec::new();
    hyperperc_core::tiling::write_tiling(
        &TilingGraph::generate(sym, 4).unwrap(),
        &mut s1,
    )
    .unwrap();
    hyperperc_core::tiling::write_tiling(
        &TilingGraph::generate(sym, 4).unwrap(),
        &mut s2,
    )
    .unwrap();
    assert_eq!(s1, s2);
}

#[test]
fn serialization_round_trip() {
    for (p, q, r) in [(5u32, 5u32, 3u32), (7, 3, 5), (3, 7, 4)] {
        let g = TilingGraph::generate(SchlafliSymbol::new(p, q).unwrap(), r).unwrap();
        let mut buf = Vec::new();
        hyperperc_core::tiling::write_tiling(&g, &mut buf).unwrap();
        let h = hyperperc_core::tiling::read_tiling(buf.as_slice()).unwrap();
        let mut buf2 = Vec::new();
        hyperperc_core::tiling::write_tiling(&h, &mut buf2).unwrap();
        assert_eq!(buf, buf2, "round trip not lossless for {{{p},{q}}}");
        assert_eq!(g.edges(), h.edges());
        assert_eq!(g.layers(), h.layers());
    }
}

#[test]
fn layer_metric_agreement_on_random_pairs() {
    let g = TilingGraph::generate(SchlafliSymbol::new(5, 5).unwrap(), 4).unwrap();
    let mut rng = 0x12345u64;
    for _ in 0..1000 {
        rng = rng.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let a = (rng >> 33) as usize % g.vertex_count();
        rng = rng.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let b = (rng >> 33) as usize % g.vertex_count();
        // distance from the root obeys the triangle inequality, so any
        // path between a and b has at least |layer(a) - layer(b)| edges
        let (la, lb) = (g.layer(a as u32) as i64, g.layer(b as u32) as i64);
        let bound = (la - lb).unsigned_abs() as u32;
        let d = pair_distance(&g, a as u32, b as u32);
        assert!(d >= bound);
    }
}

fn pair_distance(g: &TilingGraph, a: u32, b: u32) -> u32 {
    let mut dist = vec![u32::MAX; g.vertex_count()];
    let mut queue = VecDeque::new();
    dist[a as usize] = 0;
    queue.push_back(a);
    while let Some(v) = queue.pop_front() {
        if v == b {
            return dist[v as usize];
        }
        for &w in g.neighbors(v) {
            if dist[w as usize] == u32::MAX {
                dist[w as usize] = dist[v as usize] + 1;
                queue.push_back(w);
            }
        }
    }
    u32::MAX
}

#[test]
fn positions_respect_root_symmetry() {
    // the root's neighbors sit at angles 2πk/q, all at the same radius
    let g = TilingGraph::generate(SchlafliSymbol::new(5, 5).unwrap(), 2).unwrap();
    let el = geom::edge_length(5, 5);
    let r = geom::euclidean_radius(el);
    let expect: Vec<Point> = (0..5)
        .map(|k| Point::from_polar(r, 2.0 * std::f64::consts::PI * k as f64 / 5.0))
        .collect();
    let mut actual: Vec<Point> = (1..6).map(|v| g.position(v)).collect();
    actual.sort_by(|a, b| a.arg().partial_cmp(&b.arg()).unwrap());
    let mut expect = expect;
    expect.sort_by(|a, b| a.arg().partial_cmp(&b.arg()).unwrap());
    for (a, e) in actual.iter().zip(&expect) {
        assert!((a - e).norm() < 1e-9);
    }
}
