//! Poincaré-disc geometry helpers shared by the tiling and boundary code.
//!
//! Points of the hyperbolic plane are complex numbers in the open unit disc;
//! ideal points are angles on the boundary circle. Coordinates are advisory:
//! the combinatorial layer structure of a patch is the source of truth and all
//! side-of-geodesic tests carry the documented tolerance [`COORD_TOL`].

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

/// A point of the Poincaré disc.
pub type Point = Complex64;

/// Tolerance for side-of-geodesic and on-circle tests on disc coordinates.
pub const COORD_TOL: f64 = 1e-9;

/// Normalize an angle into `[0, 2π)`.
pub fn wrap_angle(theta: f64) -> f64 {
    let t = theta % TAU;
    if t < 0.0 {
        t + TAU
    } else {
        t
    }
}

/// Length of the counterclockwise arc from `a` to `b`.
pub fn ccw_arc_len(a: f64, b: f64) -> f64 {
    wrap_angle(b - a)
}

/// True if angle `x` lies on the closed counterclockwise arc from `a` to `b`.
pub fn angle_on_ccw_arc(a: f64, b: f64, x: f64) -> bool {
    ccw_arc_len(a, x) <= ccw_arc_len(a, b) + COORD_TOL
}

/// Hyperbolic distance between two disc points.
pub fn hyperbolic_distance(z: Point, w: Point) -> f64 {
    let num = (z - w).norm_sqr();
    let den = (1.0 - z.norm_sqr()) * (1.0 - w.norm_sqr());
    let delta = 2.0 * num / den;
    (1.0 + delta).acosh()
}

/// Euclidean radius of the disc point at hyperbolic distance `d` from the origin.
pub fn euclidean_radius(d: f64) -> f64 {
    (d / 2.0).tanh()
}

/// Edge length `L` of the regular {p,q} tiling:
/// `cosh L = (cos²(π/q) + cos(2π/p)) / sin²(π/q)`.
pub fn edge_length(p: u32, q: u32) -> f64 {
    let sp = PI / p as f64;
    let sq = PI / q as f64;
    let cosh_l = (sq.cos().powi(2) + (2.0 * sp).cos()) / sq.sin().powi(2);
    cosh_l.acosh()
}

/// Circumradius of a {p,q} face (vertex-to-face-center distance):
/// `cosh ρ = cot(π/p)·cot(π/q)`.
pub fn face_circumradius(p: u32, q: u32) -> f64 {
    let sp = PI / p as f64;
    let sq = PI / q as f64;
    (1.0 / (sp.tan() * sq.tan())).acosh()
}

/// The geodesic through two distinct ideal points, as a Euclidean circle
/// orthogonal to the unit circle, or a diameter when the points are antipodal
/// within [`COORD_TOL`].
#[derive(Clone, Copy, Debug)]
pub enum Geodesic {
    /// Circular arc: center (outside the disc) and radius.
    Arc { center: Point, radius: f64 },
    /// Diameter through the origin in direction `e^{iθ}`.
    Diameter { theta: f64 },
}

impl Geodesic {
    /// Geodesic with ideal endpoints at angles `a` and `b`.
    pub fn through_ideal(a: f64, b: f64) -> Geodesic {
        let u = Point::from_polar(1.0, a);
        let v = Point::from_polar(1.0, b);
        let denom = 1.0 + (u * v.conj()).re;
        if denom.abs() < COORD_TOL {
            Geodesic::Diameter { theta: a }
        } else {
            let center = (u + v) / denom;
            let radius = (center.norm_sqr() - 1.0).max(0.0).sqrt();
            Geodesic::Arc { center, radius }
        }
    }
}
