//! Largest empty ball inside a convex region that avoids a point set.
//!
//! The objective `g(x) = min(dist(x, sites), dist(x, boundary))` is
//! maximised cell by cell over the Voronoi diagram of the sites, clipped to
//! the region. Inside the cell of site `s`, `g = min(|x - s|, beta(x))` with
//! `beta` the concave boundary distance, so a maximiser is one of:
//!
//! * a cell vertex (`|x - s|` binds and is maximal on the cell),
//! * a maximiser of `beta` over the cell (`beta` binds),
//! * a critical point of the curve `|x - s| = beta(x)`: its crossings with
//!   the cell edges, and its breakpoints (two boundary pieces active) or,
//!   for a disk, the far vertex of the ellipse it traces.
//!
//! Every candidate is evaluated exactly, so the per-cell maxima are exact up
//! to floating-point round-off.

use serde::{Deserialize, Serialize};

use super::ConvexRegion;
use crate::error::{Error, Result};
use crate::geom2d::polygon::clip_half_plane;
use crate::geom2d::{dedup_points, delaunay, EdgeLine, Point2, DEDUP_TOLERANCE};

/// Relative tolerance (times the region diameter) for accepting sample
/// points on the region boundary and for certifying the returned ball.
pub const CONTAINMENT_TOLERANCE: f64 = 1e-9;

/// A ball inside the region with no sample point in its interior.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EmptyBall {
    pub center: Point2,
    pub radius: f64,
}

/// Best empty ball within each clipped Voronoi cell.
#[derive(Debug, Clone)]
pub struct CellBalls {
    pub sites: Vec<Point2>,
    /// `balls[i]` maximises `g` over the closed cell of `sites[i]`.
    pub balls: Vec<EmptyBall>,
    pub duplicates_removed: usize,
}

impl CellBalls {
    pub fn best(&self) -> (usize, EmptyBall) {
        let mut best = 0;
        for (i, b) in self.balls.iter().enumerate() {
            if b.radius > self.balls[best].radius {
                best = i;
            }
        }
        (best, self.balls[best])
    }
}

enum Boundary {
    Lines {
        lines: Vec<EdgeLine>,
        medial_vertices: Vec<Point2>,
    },
    Disk {
        center: Point2,
        radius: f64,
    },
}

impl Boundary {
    fn beta(&self, x: Point2) -> f64 {
        match self {
            Boundary::Lines { lines, .. } => lines
                .iter()
                .map(|l| l.signed_distance(x))
                .fold(f64::INFINITY, f64::min),
            Boundary::Disk { center, radius } => radius - x.dist(*center),
        }
    }
}

/// Points where three edge lines are equidistant and nearest: the vertices
/// of the polygon's medial axis, which include its inscribed-circle centres.
fn medial_vertices(lines: &[EdgeLine], origin: Point2) -> Vec<Point2> {
    let lines: Vec<EdgeLine> = lines.iter().map(|l| shifted(l, origin)).collect();
    let m = lines.len();
    let scale = lines.iter().map(|l| l.offset.abs()).fold(0.0f64, f64::max);
    let beta = |x: Point2| {
        lines
            .iter()
            .map(|l| l.signed_distance(x))
            .fold(f64::INFINITY, f64::min)
    };
    let mut out = Vec::new();
    for a in 0..m {
        for b in a + 1..m {
            let u = lines[a].normal - lines[b].normal;
            let ru = lines[b].offset - lines[a].offset;
            for c in b + 1..m {
                let v = lines[a].normal - lines[c].normal;
                let rv = lines[c].offset - lines[a].offset;
                let det = u.cross(v);
                if det.abs() < 1e-14 {
                    continue;
                }
                let x = Point2::new((ru * v.y - rv * u.y) / det, (u.x * rv - v.x * ru) / det);
                let da = lines[a].signed_distance(x);
                if da > 0.0 && beta(x) >= da - 1e-12 * da.max(scale) {
                    out.push(origin + x);
                }
            }
        }
    }
    out
}

/// Real roots of `a t^2 + b t + c = 0`.
fn quadratic_roots(a: f64, b: f64, c: f64) -> ([f64; 2], usize) {
    let scale = a.abs().max(b.abs()).max(c.abs());
    if scale == 0.0 {
        return ([0.0; 2], 0);
    }
    if a.abs() <= 1e-14 * scale {
        if b.abs() <= 1e-300 {
            return ([0.0; 2], 0);
        }
        return ([-c / b, 0.0], 1);
    }
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        // tangency lost to round-off
        if disc > -1e-12 * b * b {
            return ([-b / (2.0 * a), 0.0], 1);
        }
        return ([0.0; 2], 0);
    }
    let sq = disc.sqrt();
    let q = -0.5 * (b + b.signum() * sq);
    if q == 0.0 {
        return ([0.0, 0.0], 1);
    }
    ([q / a, c / q], 2)
}

/// Parameters `t` where `A + B t = |w + t e|` with `A + B t >= 0`.
fn line_point_balance(a0: f64, b0: f64, w: Point2, e: Point2) -> impl Iterator<Item = f64> {
    let (roots, k) = quadratic_roots(
        b0 * b0 - e.norm2(),
        2.0 * (a0 * b0 - w.dot(e)),
        a0 * a0 - w.norm2(),
    );
    roots
        .into_iter()
        .take(k)
        .filter(move |&t| a0 + b0 * t >= 0.0)
}

fn in_cell(cell: &[Point2], x: Point2, tol: f64) -> bool {
    let n = cell.len();
    (0..n).all(|i| {
        let p = cell[i];
        let q = cell[(i + 1) % n];
        let e = q - p;
        e.cross(x - p) >= -tol * e.norm()
    })
}

struct CellSearch<'a> {
    site: Point2,
    cell: &'a [Point2],
    boundary: &'a Boundary,
    tol: f64,
    best: EmptyBall,
}

impl CellSearch<'_> {
    fn offer(&mut self, x: Point2) {
        let g = x.dist(self.site).min(self.boundary.beta(x));
        if g > self.best.radius {
            self.best = EmptyBall {
                center: x,
                radius: g,
            };
        }
    }

    fn offer_checked(&mut self, x: Point2) {
        if x.is_finite() && in_cell(self.cell, x, self.tol) {
            self.offer(x);
        }
    }

    fn edges(&self) -> impl Iterator<Item = (Point2, Point2)> + '_ {
        let n = self.cell.len();
        (0..n).map(move |i| (self.cell[i], self.cell[(i + 1) % n]))
    }
}

/// `l` in coordinates relative to `origin`.
fn shifted(l: &EdgeLine, origin: Point2) -> EdgeLine {
    EdgeLine {
        normal: l.normal,
        offset: l.signed_distance(origin),
    }
}

/// Works in coordinates centred on the site, so that offsets stay
/// comparable to the cell size wherever the sample sits.
fn search_line_cell(search: &mut CellSearch<'_>, lines: &[EdgeLine], medial: &[Point2]) {
    let s = search.site;
    let cell: Vec<Point2> = search.cell.iter().map(|&v| v - s).collect();
    let max_phi = cell.iter().map(|v| v.norm()).fold(0.0f64, f64::max);
    let slack = max_phi * 1e-12 + search.tol;
    let relevant: Vec<EdgeLine> = lines
        .iter()
        .map(|l| shifted(l, s))
        .filter(|l| {
            let low = cell
                .iter()
                .map(|&v| l.signed_distance(v))
                .fold(f64::INFINITY, f64::min);
            low <= max_phi + slack
        })
        .collect();
    if relevant.is_empty() {
        return;
    }
    let n = cell.len();
    let cell_edges: Vec<(Point2, Point2)> = (0..n).map(|i| (cell[i], cell[(i + 1) % n])).collect();
    let tol = search.tol;

    // balance points |y| = l_k(y) on the cell edges
    for &(p, q) in &cell_edges {
        let e = q - p;
        for l in &relevant {
            for t in line_point_balance(l.signed_distance(p), l.normal.dot(e), p, e) {
                if (-1e-12..=1.0 + 1e-12).contains(&t) {
                    search.offer(s + (p + e * t.clamp(0.0, 1.0)));
                }
            }
        }
    }

    for (ia, la) in relevant.iter().enumerate() {
        for lb in &relevant[ia + 1..] {
            let m = la.normal - lb.normal;
            let m2 = m.norm2();
            if m2 < 1e-24 {
                continue;
            }
            let dc = la.offset - lb.offset;
            // bisector of the two lines crossing the cell edges
            for &(p, q) in &cell_edges {
                let e = q - p;
                let denom = m.dot(e);
                if denom.abs() < 1e-300 {
                    continue;
                }
                let t = -(m.dot(p) + dc) / denom;
                if (0.0..=1.0).contains(&t) {
                    search.offer(s + (p + e * t));
                }
            }
            // points on the bisector also at distance l_a from the site
            let x0 = m * (-dc / m2);
            let d = m.perp() * (1.0 / m2.sqrt());
            let a0 = la.signed_distance(x0);
            let b0 = la.normal.dot(d);
            for t in line_point_balance(a0, b0, x0, d) {
                let y = x0 + d * t;
                if y.is_finite() && in_cell(&cell, y, tol) {
                    search.offer(s + y);
                }
            }
        }
    }

    for &x in medial {
        search.offer_checked(x);
    }
}

fn search_disk_cell(search: &mut CellSearch<'_>, center: Point2, radius: f64) {
    let s = search.site;
    let (mut max_phi, mut min_beta) = (0.0f64, f64::INFINITY);
    for &v in search.cell {
        max_phi = max_phi.max(v.dist(s));
        min_beta = min_beta.min(radius - v.dist(center));
    }
    if min_beta > max_phi {
        return;
    }
    let cell_edges: Vec<(Point2, Point2)> = search.edges().collect();
    let excess = |x: Point2| x.dist(s) + x.dist(center) - radius;
    for &(p, q) in &cell_edges {
        // excess is convex along the edge: bracket its minimum, then its roots
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        let phi = 0.5 * (5f64.sqrt() - 1.0);
        let at = |t: f64| excess(p.lerp(q, t));
        for _ in 0..80 {
            let m1 = hi - phi * (hi - lo);
            let m2 = lo + phi * (hi - lo);
            if at(m1) < at(m2) {
                hi = m2;
            } else {
                lo = m1;
            }
        }
        let tmin = 0.5 * (lo + hi);
        let fmin = at(tmin);
        search.offer(p.lerp(q, tmin));
        if fmin > 0.0 {
            continue;
        }
        for (mut a, mut b) in [(0.0, tmin), (1.0, tmin)] {
            if at(a) < 0.0 {
                continue;
            }
            // at(a) >= 0 >= at(b)
            for _ in 0..64 {
                let mid = 0.5 * (a + b);
                if at(mid) >= 0.0 {
                    a = mid;
                } else {
                    b = mid;
                }
            }
            search.offer(p.lerp(q, a));
            search.offer(p.lerp(q, b));
        }
    }
    let off = center - s;
    let dist_c = off.norm();
    if dist_c < radius {
        let dir = if dist_c > 1e-15 * radius {
            off * (1.0 / dist_c)
        } else {
            Point2::new(1.0, 0.0)
        };
        search.offer_checked(s + dir * (0.5 * (radius + dist_c)));
    }
    // maximiser of the boundary distance: the cell point nearest the centre
    if in_cell(search.cell, center, 0.0) {
        search.offer(center);
    } else {
        for &(p, q) in &cell_edges {
            let e = q - p;
            let t = ((center - p).dot(e) / e.norm2()).clamp(0.0, 1.0);
            search.offer(p + e * t);
        }
    }
}

fn validate(points: &[Point2], region: &ConvexRegion) -> Result<()> {
    if points.is_empty() {
        return Err(Error::EmptyInput);
    }
    let tol = CONTAINMENT_TOLERANCE * region.diameter();
    for (index, p) in points.iter().enumerate() {
        if !p.is_finite() {
            return Err(Error::NonFinite(index));
        }
        if !region.contains(*p) && region.signed_boundary_distance(*p) < -tol {
            return Err(Error::PointOutsideRegion {
                index,
                x: p.x,
                y: p.y,
            });
        }
    }
    Ok(())
}

/// Maximises `g` over every clipped Voronoi cell. Points closer than 1e-12
/// are merged first.
pub fn cell_balls(points: &[Point2], region: &ConvexRegion) -> Result<CellBalls> {
    validate(points, region)?;
    let (sites, duplicates_removed) = dedup_points(points, DEDUP_TOLERANCE);
    let n = sites.len();
    let neighbors: Vec<Vec<usize>> = match delaunay(&sites) {
        Ok(tri) => tri.site_neighbors(),
        Err(Error::DegenerateInput(_)) => (0..n)
            .map(|i| (0..n).filter(|&j| j != i).collect())
            .collect(),
        Err(e) => return Err(e),
    };

    let (clip, boundary) = match region.as_polygon() {
        Some(poly) => {
            let lines = poly.edge_lines();
            let medial_vertices = medial_vertices(&lines, poly.centroid());
            (
                poly.vertices().to_vec(),
                Boundary::Lines {
                    lines,
                    medial_vertices,
                },
            )
        }
        None => {
            let ConvexRegion::Disk { center, radius } = *region else {
                unreachable!("only disks lack a polygon")
            };
            let r = radius * 1.01;
            let square = vec![
                center + Point2::new(-r, -r),
                center + Point2::new(r, -r),
                center + Point2::new(r, r),
                center + Point2::new(-r, r),
            ];
            (square, Boundary::Disk { center, radius })
        }
    };
    let tol = 1e-12 * region.diameter();

    let mut balls = Vec::with_capacity(n);
    for (i, &s) in sites.iter().enumerate() {
        let mut cell = clip.clone();
        let mut order = neighbors[i].clone();
        order.sort_by(|&a, &b| sites[a].dist2(s).total_cmp(&sites[b].dist2(s)));
        for &j in &order {
            let o = sites[j];
            let normal = o - s;
            cell = clip_half_plane(&cell, normal, normal.dot(s.midpoint(o)));
            if cell.is_empty() {
                break;
            }
        }
        let mut search = CellSearch {
            site: s,
            cell: &cell,
            boundary: &boundary,
            tol,
            best: EmptyBall {
                center: s,
                radius: 0.0,
            },
        };
        for &v in &cell {
            search.offer(v);
        }
        match &boundary {
            Boundary::Lines {
                lines,
                medial_vertices,
            } => search_line_cell(&mut search, lines, medial_vertices),
            Boundary::Disk { center, radius } => search_disk_cell(&mut search, *center, *radius),
        }
        balls.push(search.best);
    }
    Ok(CellBalls {
        sites,
        balls,
        duplicates_removed,
    })
}

/// Radius of the largest ball centred at `x` that avoids all `points` and
/// stays in `region`; negative outside the region.
pub fn empty_radius(points: &[Point2], region: &ConvexRegion, x: Point2) -> f64 {
    let near = points
        .iter()
        .map(|p| p.dist2(x))
        .fold(f64::INFINITY, f64::min)
        .sqrt();
    near.min(region.signed_boundary_distance(x))
}

/// Re-evaluates a ball against every point and the boundary, failing when
/// the certified radius falls short of the claimed one.
pub fn certify(points: &[Point2], region: &ConvexRegion, ball: EmptyBall) -> Result<EmptyBall> {
    let radius = empty_radius(points, region, ball.center);
    let tol = CONTAINMENT_TOLERANCE * region.diameter();
    if radius < ball.radius - tol {
        return Err(Error::Numerical(format!(
            "empty ball certificate failed: claimed {}, certified {}",
            ball.radius, radius
        )));
    }
    Ok(EmptyBall {
        center: ball.center,
        radius: radius.max(0.0),
    })
}

/// Largest ball contained in `region` whose interior misses every point.
pub fn largest_empty_ball(points: &[Point2], region: &ConvexRegion) -> Result<EmptyBall> {
    let cells = cell_balls(points, region)?;
    let (_, ball) = cells.best();
    certify(&cells.sites, region, ball)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom2d::ConvexPolygon;

    fn square_corners() -> Vec<Point2> {
        vec![
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(1.0, 1.0),
            Point2::new(0.0, 1.0),
        ]
    }

    #[test]
    fn square_corners_give_inscribed_circle() {
        let b = largest_empty_ball(&square_corners(), &ConvexRegion::unit_square()).unwrap();
        assert!((b.radius - 0.5).abs() < 1e-12);
        assert!(b.center.dist(Point2::new(0.5, 0.5)) < 1e-9);
    }

    #[test]
    fn corners_plus_center() {
        let mut pts = square_corners();
        pts.push(Point2::new(0.5, 0.5));
        let region = ConvexRegion::Polygon(ConvexPolygon::unit_square());
        let b = largest_empty_ball(&pts, &region).unwrap();
        let expected = (2.0 - 2f64.sqrt()) / 2.0;
        assert!((b.radius - expected).abs() < 1e-12, "{b:?}");
    }

    #[test]
    fn single_point_at_disk_center() {
        let b =
            largest_empty_ball(&[Point2::new(0.0, 0.0)], &ConvexRegion::unit_disk()).unwrap();
        assert!((b.radius - 0.5).abs() < 1e-12, "{b:?}");
        assert!((b.center.norm() - 0.5).abs() < 1e-9);
    }

    #[test]
    fn two_points_in_disk() {
        // sites at (+-0.5, 0): best ball sits on the y axis touching both
        // sites and the circle, centre (0, y) with 1 - y = sqrt(0.25 + y^2)
        let pts = [Point2::new(-0.5, 0.0), Point2::new(0.5, 0.0)];
        let b = largest_empty_ball(&pts, &ConvexRegion::unit_disk()).unwrap();
        let y = 0.375;
        assert!((b.radius - (1.0 - y)).abs() < 1e-10, "{b:?}");
    }

    #[test]
    fn collinear_sites_fall_back() {
        let pts: Vec<Point2> = (0..5).map(|k| Point2::new(0.2 * k as f64, 0.0)).collect();
        let region = ConvexRegion::rectangle(Point2::new(0.0, -1.0), 0.8, 2.0).unwrap();
        let b = largest_empty_ball(&pts, &region).unwrap();
        // the side walls at x = 0 and x = 0.8 bind first
        assert!((b.radius - 0.4).abs() < 1e-12, "{b:?}");
    }

    #[test]
    fn corner_wedge_needs_two_edges_and_a_site() {
        // one site in the middle of a long thin triangle: the largest ball
        // sits against two edges away from the site
        let tri = ConvexPolygon::new(vec![
            Point2::new(0.0, 0.0),
            Point2::new(10.0, 0.0),
            Point2::new(0.0, 1.0),
        ])
        .unwrap();
        let region = ConvexRegion::Polygon(tri);
        let pts = [Point2::new(0.3, 0.3)];
        let b = largest_empty_ball(&pts, &region).unwrap();
        // brute force on a fine grid as a sanity bound
        let mut grid_best = 0.0f64;
        for i in 0..=2000 {
            for j in 0..=200 {
                let x = Point2::new(10.0 * i as f64 / 2000.0, j as f64 / 200.0);
                grid_best = grid_best.max(empty_radius(&pts, &region, x));
            }
        }
        assert!(b.radius >= grid_best - 1e-12, "{} < {}", b.radius, grid_best);
        assert!(b.radius - grid_best < 0.01);
    }

    #[test]
    fn rejects_points_outside() {
        let e = largest_empty_ball(&[Point2::new(2.0, 0.5)], &ConvexRegion::unit_square())
            .unwrap_err();
        assert!(matches!(e, Error::PointOutsideRegion { index: 0, .. }));
        assert!(matches!(
            largest_empty_ball(&[], &ConvexRegion::unit_square()),
            Err(Error::EmptyInput)
        ));
    }

    #[test]
    fn quadratic_roots_cases() {
        let (r, k) = quadratic_roots(1.0, -3.0, 2.0);
        let mut v = r[..k].to_vec();
        v.sort_by(f64::total_cmp);
        assert_eq!(v, vec![1.0, 2.0]);
        assert_eq!(quadratic_roots(0.0, 2.0, -1.0), ([0.5, 0.0], 1));
        assert_eq!(quadratic_roots(1.0, 0.0, 1.0).1, 0);
    }
}
