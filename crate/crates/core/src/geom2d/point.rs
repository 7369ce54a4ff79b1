use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// A point (or vector) in the plane.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn dot(self, other: Self) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 3-D cross product.
    pub fn cross(self, other: Self) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn norm2(self) -> f64 {
        self.dot(self)
    }

    pub fn dist(self, other: Self) -> f64 {
        (self - other).norm()
    }

    pub fn dist2(self, other: Self) -> f64 {
        (self - other).norm2()
    }

    /// Counter-clockwise rotation by a right angle.
    pub fn perp(self) -> Self {
        Self::new(-self.y, self.x)
    }

    pub fn midpoint(self, other: Self) -> Self {
        Self::new(0.5 * (self.x + other.x), 0.5 * (self.y + other.y))
    }

    pub fn lerp(self, other: Self, t: f64) -> Self {
        self + (other - self) * t
    }
}

impl Add for Point2 {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point2 {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        Self::new(self.x * rhs, self.y * rhs)
    }
}

impl Neg for Point2 {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y)
    }
}

impl From<(f64, f64)> for Point2 {
    fn from((x, y): (f64, f64)) -> Self {
        Self::new(x, y)
    }
}

/// Absolute tolerance used to merge coincident points.
pub const DEDUP_TOLERANCE: f64 = 1e-12;

/// Removes points lying within `tol` (Euclidean) of an earlier point,
/// keeping first occurrences in input order. Returns the kept points and the
/// number removed.
pub fn dedup_points(points: &[Point2], tol: f64) -> (Vec<Point2>, usize) {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| {
        points[a]
            .x
            .total_cmp(&points[b].x)
            .then(points[a].y.total_cmp(&points[b].y))
    });
    let mut dropped = vec![false; points.len()];
    for (k, &i) in order.iter().enumerate() {
        if dropped[i] {
            continue;
        }
        for &j in &order[k + 1..] {
            if points[j].x - points[i].x > tol {
                break;
            }
            if !dropped[j] && points[i].dist(points[j]) <= tol {
                // keep whichever came first in the input
                if j < i {
                    dropped[i] = true;
                    break;
                }
                dropped[j] = true;
            }
        }
    }
    let kept: Vec<Point2> = points
        .iter()
        .zip(&dropped)
        .filter(|(_, &d)| !d)
        .map(|(p, _)| *p)
        .collect();
    let removed = points.len() - kept.len();
    (kept, removed)
}

/// Axis-aligned bounding box `(min, max)`; `None` for an empty slice.
pub fn bounding_box(points: &[Point2]) -> Option<(Point2, Point2)> {
    let first = *points.first()?;
    Some(points.iter().fold((first, first), |(lo, hi), p| {
        (
            Point2::new(lo.x.min(p.x), lo.y.min(p.y)),
            Point2::new(hi.x.max(p.x), hi.y.max(p.y)),
        )
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dedup_keeps_first_occurrence() {
        let pts = [
            Point2::new(1.0, 1.0),
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 1.0 + 1e-14),
            Point2::new(0.0, 0.0),
            Point2::new(2.0, 0.0),
        ];
        let (kept, removed) = dedup_points(&pts, DEDUP_TOLERANCE);
        assert_eq!(removed, 2);
        assert_eq!(kept, vec![pts[0], pts[1], pts[4]]);
    }

    #[test]
    fn dedup_leaves_separated_points() {
        let pts = [Point2::new(0.0, 0.0), Point2::new(1e-9, 0.0)];
        assert_eq!(dedup_points(&pts, DEDUP_TOLERANCE).1, 0);
    }
}
