//! Orientation-preserving isometries of the Poincaré disc and their
//! classification by boundary fixed points.
//!
//! An isometry is stored as the SU(1,1) matrix `[[a, b], [b̄, ā]]` with
//! `|a|² − |b|² = 1`, acting by `z ↦ (az + b)/(b̄z + ā)`. The classification
//! follows the fixed-point quadratic `b̄z² + (ā − a)z − b = 0` on the ideal
//! circle; the trace criterion is equivalent (`tr² − 4 = 4(|b|² − Im²a)`) and
//! is used as a cross-check in tests only.

use std::f64::consts::PI;

use num_complex::Complex64;
use thiserror::Error;

use crate::geom::{self, wrap_angle, Point};
use crate::tiling::SchlafliSymbol;

/// Determinant normalization tolerance, `|a|² − |b|² = 1` within this.
pub const DET_TOL: f64 = 1e-12;
/// Tolerance for root coincidence in the fixed-point quadratic.
pub const CLASSIFY_TOL: f64 = 1e-9;

/// An orientation-preserving isometry of the hyperbolic plane in the disc
/// model: `z ↦ (az + b)/(b̄z + ā)` with `|a|² − |b|² = 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MobiusIsometry {
    a: Complex64,
    b: Complex64,
}

/// Kind of an orientation-preserving isometry, by fixed points on the ideal
/// circle: two — hyperbolic, one — parabolic, none — elliptic.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IsometryKind {
    Identity,
    Hyperbolic,
    Parabolic,
    Elliptic,
}

/// Classification result: kind, boundary fixed points (as ideal angles) and
/// the attracting/repelling designation for hyperbolic isometries.
#[derive(Clone, Debug)]
pub struct IsometryClass {
    pub kind: IsometryKind,
    /// Ideal angles of boundary fixed points: 2 (hyperbolic), 1 (parabolic),
    /// 0 (elliptic or identity).
    pub fixed_points: Vec<f64>,
    /// Attracting boundary fixed point of a hyperbolic isometry.
    pub attracting: Option<f64>,
    /// Repelling boundary fixed point of a hyperbolic isometry.
    pub repelling: Option<f64>,
}

#[derive(Debug, Error)]
pub enum IsometryError {
    /// The fixed-point quadratic is too close to a double root to tell the
    /// kinds apart within [`CLASSIFY_TOL`]; both candidates are reported.
    #[error("classification ambiguous within tolerance: {candidates:?}")]
    UnstableClassification { candidates: [IsometryKind; 2] },
    #[error("matrix does not preserve the disc: |a|^2 - |b|^2 = {norm}")]
    NotDiscPreserving { norm: f64 },
}

impl MobiusIsometry {
    /// Build from the two defining components, normalizing the determinant.
    pub fn new(a: Complex64, b: Complex64) -> Result<MobiusIsometry, IsometryError> {
        let n = a.norm_sqr() - b.norm_sqr();
        if n <= DET_TOL {
            return Err(IsometryError::NotDiscPreserving { norm: n });
        }
        let s = n.sqrt();
        Ok(MobiusIsometry { a: a / s, b: b / s })
    }

    pub fn identity() -> MobiusIsometry {
        MobiusIsometry {
            a: Complex64::new(1.0, 0.0),
            b: Complex64::new(0.0, 0.0),
        }
    }

    /// Rotation by `phi` about the origin.
    pub fn rotation(phi: f64) -> MobiusIsometry {
        MobiusIsometry {
            a: Complex64::from_polar(1.0, phi / 2.0),
            b: Complex64::new(0.0, 0.0),
        }
    }

    /// Hyperbolic translation by distance `t` along the positive real axis.
    pub fn translation(t: f64) -> MobiusIsometry {
        MobiusIsometry {
            a: Complex64::new((t / 2.0).cosh(), 0.0),
            b: Complex64::new((t / 2.0).sinh(), 0.0),
        }
    }

    /// The isometry taking the origin to `w` without rotation at `w`.
    pub fn translation_to(w: Point) -> MobiusIsometry {
        let s = (1.0 - w.norm_sqr()).sqrt();
        MobiusIsometry {
            a: Complex64::new(1.0 / s, 0.0),
            b: w / s,
        }
    }

    /// Rotation by `phi` about the disc point `w`.
    pub fn rotation_about(w: Point, phi: f64) -> MobiusIsometry {
        let t = MobiusIsometry::translation_to(w);
        t.compose(&MobiusIsometry::rotation(phi)).compose(&t.inverse())
    }

    pub fn a(&self) -> Complex64 {
        self.a
    }

    pub fn b(&self) -> Complex64 {
        self.b
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &MobiusIsometry) -> MobiusIsometry {
        let a = self.a * other.a + self.b * other.b.conj();
        let b = self.a * other.b + self.b * other.a.conj();
        // renormalize against drift in long words
        MobiusIsometry::new(a, b).expect("composition of disc isometries preserves the disc")
    }

    pub fn inverse(&self) -> MobiusIsometry {
        MobiusIsometry {
            a: self.a.conj(),
            b: -self.b,
        }
    }

    /// Möbius action on a disc point (`|z| ≤ 1`; the unit circle maps to itself).
    pub fn apply(&self, z: Point) -> Point {
        (self.a * z + self.b) / (self.b.conj() * z + self.a.conj())
    }

    /// Continuous extension to the ideal circle: image angle of `e^{iθ}`.
    pub fn apply_angle(&self, theta: f64) -> f64 {
        let z = Point::from_polar(1.0, theta);
        wrap_angle(self.apply(z).arg())
    }

    /// Serialize as four real components `(Re a, Im a, Re b, Im b)`.
    pub fn components(&self) -> [f64; 4] {
        [self.a.re, self.a.im, self.b.re, self.b.im]
    }

    pub fn from_components(c: [f64; 4]) -> Result<MobiusIsometry, IsometryError> {
        MobiusIsometry::new(Complex64::new(c[0], c[1]), Complex64::new(c[2], c[3]))
    }

    /// Classify by the number of fixed points on the ideal circle.
    pub fn classify(&self) -> Result<IsometryClass, IsometryError> {
        let im_a = self.a.im;
        let tr = 2.0 * self.a.re;
        if self.b.norm_sqr() < DET_TOL {
            // z ↦ (a/ā) z, a rotation about the origin
            let kind = if im_a.abs() < CLASSIFY_TOL && tr > 0.0 || (tr + 2.0).abs() < DET_TOL {
                // ±identity act identically on the disc
                IsometryKind::Identity
            } else {
                IsometryKind::Elliptic
            };
            return Ok(IsometryClass {
                kind,
                fixed_points: vec![],
                attracting: None,
                repelling: None,
            });
        }
        // roots of b̄z² + (ā − a)z − b = 0; discriminant is tr² − 4, real.
        let disc = 4.0 * (self.b.norm_sqr() - im_a * im_a);
        let scale = (tr * tr).max(1.0);
        if disc.abs() <= DET_TOL * scale {
            let z = Complex64::new(0.0, im_a) / self.b.conj();
            return Ok(IsometryClass {
                kind: IsometryKind::Parabolic,
                fixed_points: vec![wrap_angle(z.arg())],
                attracting: None,
                repelling: None,
            });
        }
        if disc.abs() < CLASSIFY_TOL * scale {
            let other = if disc > 0.0 {
                IsometryKind::Hyperbolic
            } else {
                IsometryKind::Elliptic
            };
            return Err(IsometryError::UnstableClassification {
                candidates: [IsometryKind::Parabolic, other],
            });
        }
        if disc < 0.0 {
            return Ok(IsometryClass {
                kind: IsometryKind::Elliptic,
                fixed_points: vec![],
                attracting: None,
                repelling: None,
            });
        }
        let sqrt_disc = disc.sqrt();
        let two_bc = 2.0 * self.b.conj();
        let z1 = (Complex64::new(0.0, 2.0 * im_a) + sqrt_disc) / two_bc;
        let z2 = (Complex64::new(0.0, 2.0 * im_a) - sqrt_disc) / two_bc;
        // attracting where |f'(z)| = |b̄z + ā|⁻² < 1
        let deriv_denom = |z: Complex64| (self.b.conj() * z + self.a.conj()).norm_sqr();
        let (att, rep) = if deriv_denom(z1) > deriv_denom(z2) {
            (z1, z2)
        } else {
            (z2, z1)
        };
        let att = wrap_angle(att.arg());
        let rep = wrap_angle(rep.arg());
        Ok(IsometryClass {
            kind: IsometryKind::Hyperbolic,
            fixed_points: vec![att, rep],
            attracting: Some(att),
            repelling: Some(rep),
        })
    }
}

/// Rotation by `2π/q` about the root vertex of a {p,q} tiling at the origin.
pub fn vertex_rotation(symbol: SchlafliSymbol) -> MobiusIsometry {
    MobiusIsometry::rotation(2.0 * PI / symbol.q as f64)
}

/// Rotation by `2π/p` about the center of the canonical root face (the face
/// between the root edges at angles `0` and `2π/q`).
pub fn face_rotation(symbol: SchlafliSymbol) -> MobiusIsometry {
    let rho = geom::face_circumradius(symbol.p, symbol.q);
    let c = Point::from_polar(geom::euclidean_radius(rho), PI / symbol.q as f64);
    MobiusIsometry::rotation_about(c, 2.0 * PI / symbol.p as f64)
}

/// Rotation by `π` about the midpoint of the root edge along the positive
/// real axis.
pub fn edge_flip(symbol: SchlafliSymbol) -> MobiusIsometry {
    let l = geom::edge_length(symbol.p, symbol.q);
    let m = Point::new(geom::euclidean_radius(l / 2.0), 0.0);
    MobiusIsometry::rotation_about(m, PI)
}

/// Orientation-preserving symmetry generators of the {p,q} tiling (the von
/// Dyck rotations and their inverses). Products of these contain hyperbolic
/// elements with fixed points dense on the ideal circle.
pub fn symmetry_generators(symbol: SchlafliSymbol) -> Vec<MobiusIsometry> {
    let v = vertex_rotation(symbol);
    let f = face_rotation(symbol);
    let e = edge_flip(symbol);
    vec![v, v.inverse(), f, f.inverse(), e]
}
