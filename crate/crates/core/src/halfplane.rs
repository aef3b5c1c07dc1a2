//! Closed halfplanes of the hyperbolic plane, bounded by a complete geodesic
//! with two ideal endpoints.
//!
//! A halfplane is stored by the counterclockwise ideal arc it subtends:
//! containment of halfplanes is equivalent to containment of their ideal
//! arcs, which keeps the halfplane-into-halfplane certification exact on
//! angles.

use thiserror::Error;

use crate::geom::{self, ccw_arc_len, wrap_angle, Geodesic, Point, COORD_TOL};
use crate::mobius::MobiusIsometry;

/// A closed halfplane, as the side of the geodesic through two ideal points.
#[derive(Clone, Copy, Debug)]
pub struct Halfplane {
    /// Start of the subtended ideal arc (counterclockwise).
    start: f64,
    /// End of the subtended ideal arc.
    end: f64,
}

#[derive(Debug, Error)]
pub enum HalfplaneError {
    #[error("halfplane endpoints coincide: theta = {theta}")]
    DegenerateEndpoints { theta: f64 },
}

impl Halfplane {
    /// Halfplane bounded by the geodesic with ideal endpoints `theta1`,
    /// `theta2`. With `side = false` the halfplane subtends the
    /// counterclockwise arc from `theta1` to `theta2`; with `side = true`,
    /// the complementary arc.
    pub fn new(theta1: f64, theta2: f64, side: bool) -> Result<Halfplane, HalfplaneError> {
        let t1 = wrap_angle(theta1);
        let t2 = wrap_angle(theta2);
        if ccw_arc_len(t1, t2).min(ccw_arc_len(t2, t1)) < COORD_TOL {
            return Err(HalfplaneError::DegenerateEndpoints { theta: t1 });
        }
        Ok(if side {
            Halfplane { start: t2, end: t1 }
        } else {
            Halfplane { start: t1, end: t2 }
        })
    }

    /// Start angle of the subtended counterclockwise ideal arc.
    pub fn arc_start(&self) -> f64 {
        self.start
    }

    /// End angle of the subtended counterclockwise ideal arc.
    pub fn arc_end(&self) -> f64 {
        self.end
    }

    /// Angular measure of the subtended ideal arc.
    pub fn arc_len(&self) -> f64 {
        ccw_arc_len(self.start, self.end)
    }

    /// The bounding geodesic.
    pub fn geodesic(&self) -> Geodesic {
        Geodesic::through_ideal(self.start, self.end)
    }

    /// Closed membership test for a disc point, within [`COORD_TOL`].
    pub fn contains_point(&self, z: Point) -> bool {
        match self.geodesic() {
            Geodesic::Diameter { .. } => {
                // arc from start to start + π: the side where z·e^{-i·start}
                // has nonnegative imaginary part
                let w = z * Point::from_polar(1.0, -self.start);
                w.im >= -COORD_TOL
            }
            Geodesic::Arc { center, radius } => {
                let d = (z - center).norm();
                if self.arc_len() < std::f64::consts::PI {
                    d <= radius + COORD_TOL
                } else {
                    d >= radius - COORD_TOL
                }
            }
        }
    }

    /// Closed membership test for an ideal angle.
    pub fn contains_angle(&self, theta: f64) -> bool {
        geom::angle_on_ccw_arc(self.start, self.end, wrap_angle(theta))
    }

    /// True if `other` is contained in `self` (equivalently, `other`'s ideal
    /// arc lies inside `self`'s).
    pub fn contains_halfplane(&self, other: &Halfplane) -> bool {
        self.contains_angle(other.start)
            && self.contains_angle(other.end)
            && ccw_arc_len(self.start, other.start) + other.arc_len()
                <= self.arc_len() + COORD_TOL
    }

    /// Image halfplane under an orientation-preserving isometry (which maps
    /// counterclockwise arcs to counterclockwise arcs).
    pub fn image_under(&self, m: &MobiusIsometry) -> Halfplane {
        Halfplane {
            start: m.apply_angle(self.start),
            end: m.apply_angle(self.end),
        }
    }
}
