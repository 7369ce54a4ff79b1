//! Adaptive-precision orientation and incircle tests.

use robust::Coord;

use super::Point2;

fn coord(p: Point2) -> Coord<f64> {
    Coord { x: p.x, y: p.y }
}

/// Positive when `a, b, c` make a counter-clockwise turn, zero when collinear.
/// The sign is exact.
pub fn orient2d(a: Point2, b: Point2, c: Point2) -> f64 {
    robust::orient2d(coord(a), coord(b), coord(c))
}

/// Positive when `d` lies strictly inside the circle through the
/// counter-clockwise triangle `a, b, c`. The sign is exact.
pub fn incircle(a: Point2, b: Point2, c: Point2, d: Point2) -> f64 {
    robust::incircle(coord(a), coord(b), coord(c), coord(d))
}

/// Circumcenter of a non-degenerate triangle, computed relative to `a`.
pub fn circumcenter(a: Point2, b: Point2, c: Point2) -> Point2 {
    let ab = b - a;
    let ac = c - a;
    let d = 2.0 * ab.cross(ac);
    let (b2, c2) = (ab.norm2(), ac.norm2());
    let ux = (ac.y * b2 - ab.y * c2) / d;
    let uy = (ab.x * c2 - ac.x * b2) / d;
    a + Point2::new(ux, uy)
}
