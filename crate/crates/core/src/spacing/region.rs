use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom2d::{ConvexPolygon, Point2};

/// A bounded convex region: the known support of a simulation or the hull
/// of a sample.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum ConvexRegion {
    Polygon(ConvexPolygon),
    Disk { center: Point2, radius: f64 },
    Rectangle { corner: Point2, width: f64, height: f64 },
}

impl ConvexRegion {
    pub fn disk(center: Point2, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite() && center.is_finite()) {
            return Err(Error::InvalidShape(format!("disk radius {radius}")));
        }
        Ok(Self::Disk { center, radius })
    }

    pub fn unit_disk() -> Self {
        Self::Disk {
            center: Point2::new(0.0, 0.0),
            radius: 1.0,
        }
    }

    pub fn rectangle(corner: Point2, width: f64, height: f64) -> Result<Self> {
        ConvexPolygon::rectangle(corner, width, height)?;
        Ok(Self::Rectangle {
            corner,
            width,
            height,
        })
    }

    pub fn unit_square() -> Self {
        Self::Rectangle {
            corner: Point2::new(0.0, 0.0),
            width: 1.0,
            height: 1.0,
        }
    }

    /// The polygon behind `Polygon` and `Rectangle`; `None` for a disk.
    pub fn as_polygon(&self) -> Option<ConvexPolygon> {
        match self {
            Self::Polygon(p) => Some(p.clone()),
            Self::Rectangle {
                corner,
                width,
                height,
            } => ConvexPolygon::rectangle(*corner, *width, *height).ok(),
            Self::Disk { .. } => None,
        }
    }

    pub fn area(&self) -> f64 {
        match self {
            Self::Polygon(p) => p.area(),
            Self::Disk { radius, .. } => std::f64::consts::PI * radius * radius,
            Self::Rectangle { width, height, .. } => width * height,
        }
    }

    /// Distance to the boundary, negated outside.
    pub fn signed_boundary_distance(&self, p: Point2) -> f64 {
        match self {
            Self::Polygon(poly) => poly.signed_boundary_distance(p),
            Self::Disk { center, radius } => radius - p.dist(*center),
            Self::Rectangle {
                corner,
                width,
                height,
            } => {
                let dx = (p.x - corner.x).min(corner.x + width - p.x);
                let dy = (p.y - corner.y).min(corner.y + height - p.y);
                if dx >= 0.0 && dy >= 0.0 {
                    dx.min(dy)
                } else {
                    // outside: distance to the box
                    let ox = (corner.x - p.x).max(p.x - corner.x - width).max(0.0);
                    let oy = (corner.y - p.y).max(p.y - corner.y - height).max(0.0);
                    -ox.hypot(oy)
                }
            }
        }
    }

    /// Unsigned boundary distance plus closed-membership flag.
    pub fn boundary_distance(&self, p: Point2) -> (f64, bool) {
        let s = self.signed_boundary_distance(p);
        (s.abs(), self.contains(p))
    }

    pub fn contains(&self, p: Point2) -> bool {
        match self {
            Self::Polygon(poly) => poly.contains(p),
            _ => self.signed_boundary_distance(p) >= 0.0,
        }
    }

    pub fn bounding_box(&self) -> (Point2, Point2) {
        match self {
            Self::Polygon(p) => crate::geom2d::bounding_box(p.vertices()).expect("non-empty"),
            Self::Disk { center, radius } => (
                *center - Point2::new(*radius, *radius),
                *center + Point2::new(*radius, *radius),
            ),
            Self::Rectangle {
                corner,
                width,
                height,
            } => (*corner, *corner + Point2::new(*width, *height)),
        }
    }

    pub fn diameter(&self) -> f64 {
        match self {
            Self::Polygon(p) => p.diameter(),
            Self::Disk { radius, .. } => 2.0 * radius,
            Self::Rectangle { width, height, .. } => width.hypot(*height),
        }
    }
}

impl From<ConvexPolygon> for ConvexRegion {
    fn from(p: ConvexPolygon) -> Self {
        Self::Polygon(p)
    }
}
