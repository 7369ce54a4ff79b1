use serde::{Deserialize, Serialize};

use super::predicates::orient2d;
use super::Point2;
use crate::error::{Error, Result};

/// A supporting line of a convex polygon, stored as `normal . x + offset`
/// with a unit normal pointing into the polygon, so the value is the signed
/// distance to the line (positive inside).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeLine {
    pub normal: Point2,
    pub offset: f64,
}

impl EdgeLine {
    pub fn through(a: Point2, b: Point2) -> Self {
        let d = b - a;
        let normal = d.perp() * (1.0 / d.norm());
        Self {
            normal,
            offset: -normal.dot(a),
        }
    }

    pub fn signed_distance(&self, p: Point2) -> f64 {
        self.normal.dot(p) + self.offset
    }
}

/// Strictly convex polygon with counter-clockwise vertex order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Point2>", into = "Vec<Point2>")]
pub struct ConvexPolygon {
    vertices: Vec<Point2>,
    area: f64,
}

impl ConvexPolygon {
    /// Builds a polygon from a vertex loop in either orientation. The loop
    /// must be strictly convex: no repeated vertices and no three
    /// consecutive collinear vertices.
    pub fn new(mut vertices: Vec<Point2>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::DegenerateInput(format!(
                "polygon needs at least 3 vertices, got {}",
                vertices.len()
            )));
        }
        if let Some(i) = vertices.iter().position(|p| !p.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        if shoelace(&vertices) < 0.0 {
            vertices.reverse();
        }
        let n = vertices.len();
        for i in 0..n {
            let turn = orient2d(vertices[i], vertices[(i + 1) % n], vertices[(i + 2) % n]);
            if turn <= 0.0 {
                return Err(Error::DegenerateInput(
                    "vertex loop is not strictly convex".into(),
                ));
            }
        }
        // a strictly left-turning loop may still wind more than once
        let winding: f64 = (0..n)
            .map(|i| {
                let a = vertices[(i + 1) % n] - vertices[i];
                let b = vertices[(i + 2) % n] - vertices[(i + 1) % n];
                a.cross(b).atan2(a.dot(b))
            })
            .sum();
        if (winding - std::f64::consts::TAU).abs() > 1e-6 {
            return Err(Error::DegenerateInput("vertex loop self-intersects".into()));
        }
        let area = shoelace(&vertices);
        Ok(Self { vertices, area })
    }

    /// Axis-aligned rectangle with lower-left `corner`.
    pub fn rectangle(corner: Point2, width: f64, height: f64) -> Result<Self> {
        if !(width > 0.0 && height > 0.0) {
            return Err(Error::InvalidShape(format!(
                "rectangle sides must be positive, got {width} x {height}"
            )));
        }
        Self::new(vec![
            corner,
            corner + Point2::new(width, 0.0),
            corner + Point2::new(width, height),
            corner + Point2::new(0.0, height),
        ])
    }

    pub fn unit_square() -> Self {
        Self::rectangle(Point2::new(0.0, 0.0), 1.0, 1.0).expect("unit square is valid")
    }

    pub fn regular(n: usize, center: Point2, circumradius: f64) -> Result<Self> {
        let verts = (0..n)
            .map(|k| {
                let t = std::f64::consts::TAU * k as f64 / n as f64;
                center + Point2::new(t.cos(), t.sin()) * circumradius
            })
            .collect();
        Self::new(verts)
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn area(&self) -> f64 {
        self.area
    }

    pub fn edges(&self) -> impl Iterator<Item = (Point2, Point2)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    pub fn edge_lines(&self) -> Vec<EdgeLine> {
        self.edges().map(|(a, b)| EdgeLine::through(a, b)).collect()
    }

    /// Closed-set membership, exact up to the orientation predicate.
    pub fn contains(&self, p: Point2) -> bool {
        self.edges().all(|(a, b)| orient2d(a, b, p) >= 0.0)
    }

    /// Distance from `p` to the polygon boundary together with the closed
    /// membership flag.
    pub fn boundary_distance(&self, p: Point2) -> (f64, bool) {
        let d = self
            .edges()
            .map(|(a, b)| segment_distance(p, a, b))
            .fold(f64::INFINITY, f64::min);
        (d, self.contains(p))
    }

    /// Boundary distance, negated outside.
    pub fn signed_boundary_distance(&self, p: Point2) -> f64 {
        let (d, inside) = self.boundary_distance(p);
        if inside {
            d
        } else {
            -d
        }
    }

    pub fn diameter(&self) -> f64 {
        let v = &self.vertices;
        let mut best = 0.0f64;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                best = best.max(v[i].dist2(v[j]));
            }
        }
        best.sqrt()
    }

    pub fn centroid(&self) -> Point2 {
        let v = &self.vertices;
        let n = v.len();
        let (mut cx, mut cy) = (0.0, 0.0);
        for i in 0..n {
            let (a, b) = (v[i] - v[0], v[(i + 1) % n] - v[0]);
            let w = a.cross(b);
            cx += (a.x + b.x) * w;
            cy += (a.y + b.y) * w;
        }
        v[0] + Point2::new(cx, cy) * (1.0 / (6.0 * self.area))
    }

    pub fn map(&self, f: impl Fn(Point2) -> Point2) -> Result<Self> {
        Self::new(self.vertices.iter().map(|&p| f(p)).collect())
    }
}

impl TryFrom<Vec<Point2>> for ConvexPolygon {
    type Error = Error;
    fn try_from(v: Vec<Point2>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<ConvexPolygon> for Vec<Point2> {
    fn from(p: ConvexPolygon) -> Self {
        p.vertices
    }
}

/// Shoelace area of the free polygon. Positive for counter-clockwise loops.
pub fn shoelace(v: &[Point2]) -> f64 {
    if v.len() < 3 {
        return 0.0;
    }
    let o = v[0];
    let mut s = 0.0;
    for i in 1..v.len() - 1 {
        s += (v[i] - o).cross(v[i + 1] - o);
    }
    0.5 * s
}

pub fn polygon_area(poly: &ConvexPolygon) -> f64 {
    poly.area()
}

pub fn segment_distance(p: Point2, a: Point2, b: Point2) -> f64 {
    let ab = b - a;
    let len2 = ab.norm2();
    if len2 == 0.0 {
        return p.dist(a);
    }
    let t = ((p - a).dot(ab) / len2).clamp(0.0, 1.0);
    p.dist(a + ab * t)
}

/// Clips a convex polygon (counter-clockwise vertex list) to the half-plane
/// `normal . x <= bound`.
pub fn clip_half_plane(poly: &[Point2], normal: Point2, bound: f64) -> Vec<Point2> {
    let n = poly.len();
    let mut out = Vec::with_capacity(n + 1);
    for i in 0..n {
        let p = poly[i];
        let q = poly[(i + 1) % n];
        let fp = normal.dot(p) - bound;
        let fq = normal.dot(q) - bound;
        if fp <= 0.0 {
            out.push(p);
        }
        if (fp < 0.0 && fq > 0.0) || (fp > 0.0 && fq < 0.0) {
            let t = fp / (fp - fq);
            out.push(p.lerp(q, t));
        }
    }
    out
}
