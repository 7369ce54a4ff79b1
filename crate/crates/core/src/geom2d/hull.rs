//! Andrew's monotone chain hull on the exact orientation predicate.

use super::point::{dedup_points, DEDUP_TOLERANCE};
use super::predicates::orient2d;
use super::{ConvexPolygon, Point2};
use crate::error::{Error, Result};

/// Convex hull of `points`, dropping interior and collinear boundary points.
pub fn convex_hull(points: &[Point2]) -> Result<ConvexPolygon> {
    if let Some(i) = points.iter().position(|p| !p.is_finite()) {
        return Err(Error::NonFinite(i));
    }
    let (mut pts, _) = dedup_points(points, DEDUP_TOLERANCE);
    if pts.len() < 3 {
        return Err(Error::DegenerateInput(format!(
            "convex hull needs 3 distinct points, got {}",
            pts.len()
        )));
    }
    pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));

    let mut hull: Vec<Point2> = Vec::with_capacity(2 * pts.len());
    for &p in &pts {
        while hull.len() >= 2 && orient2d(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    let lower = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower && orient2d(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0
        {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    if hull.len() < 3 {
        return Err(Error::DegenerateInput("all points are collinear".into()));
    }
    ConvexPolygon::new(hull)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[(f64, f64)]) -> Vec<Point2> {
        v.iter().map(|&p| p.into()).collect()
    }

    #[test]
    fn square_drops_interior_point() {
        let h = convex_hull(&pts(&[(0., 0.), (1., 0.), (1., 1.), (0., 1.), (0.5, 0.5)])).unwrap();
        assert_eq!(h.len(), 4);
        assert_eq!(h.area(), 1.0);
        assert!(!h.vertices().contains(&Point2::new(0.5, 0.5)));
    }

    #[test]
    fn collinear_is_degenerate() {
        let e = convex_hull(&pts(&[(0., 0.), (1., 1.), (2., 2.)])).unwrap_err();
        assert!(matches!(e, Error::DegenerateInput(_)));
        assert!(convex_hull(&pts(&[(0., 0.), (1., 1.)])).is_err());
    }

    #[test]
    fn collinear_boundary_points_removed() {
        let h = convex_hull(&pts(&[(0., 0.), (0.5, 0.), (1., 0.), (1., 1.), (0., 1.), (0., 0.5)]))
            .unwrap();
        assert_eq!(h.len(), 4);
    }

    #[test]
    fn idempotent_on_own_vertices() {
        let h = convex_hull(&pts(&[(0., 0.), (3., 1.), (2., 4.), (-1., 2.), (1., 1.), (0.5, 2.)]))
            .unwrap();
        let again = convex_hull(h.vertices()).unwrap();
        let mut a = h.vertices().to_vec();
        let mut b = again.vertices().to_vec();
        let key = |p: &Point2| (p.x.to_bits(), p.y.to_bits());
        a.sort_by_key(key);
        b.sort_by_key(key);
        assert_eq!(a, b);
    }
}
