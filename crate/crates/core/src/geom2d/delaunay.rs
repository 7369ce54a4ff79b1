//! Incremental Delaunay triangulation (Bowyer-Watson cavity insertion).
//!
//! The convex hull is closed off by "ghost" triangles that share a single
//! vertex at infinity, so points outside the current hull need no special
//! handling: a ghost triangle conflicts with a point lying strictly outside
//! its hull edge, or on the open edge itself. All conflict decisions use the
//! exact predicates from [`super::predicates`].
//!
//! A point exactly on an existing circumcircle is not in conflict with that
//! triangle, so cocircular ties keep the configuration built from the
//! earlier-inserted sites.

use std::collections::HashMap;

use super::point::{dedup_points, DEDUP_TOLERANCE};
use super::predicates::{incircle, orient2d};
use super::Point2;
use crate::error::{Error, Result};

const GHOST: usize = usize::MAX;
const NONE: usize = usize::MAX;

/// A Delaunay triangulation of a deduplicated site list.
#[derive(Debug, Clone)]
pub struct Triangulation {
    sites: Vec<Point2>,
    triangles: Vec<[usize; 3]>,
    /// `neighbors[t][k]` is the triangle across the edge opposite vertex `k`.
    neighbors: Vec<[Option<usize>; 3]>,
    duplicates_removed: usize,
}

impl Triangulation {
    pub fn sites(&self) -> &[Point2] {
        &self.sites
    }

    /// Counter-clockwise index triples into [`Self::sites`].
    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn neighbors(&self) -> &[[Option<usize>; 3]] {
        &self.neighbors
    }

    pub fn duplicates_removed(&self) -> usize {
        self.duplicates_removed
    }

    pub fn triangle_points(&self, t: usize) -> [Point2; 3] {
        self.triangles[t].map(|i| self.sites[i])
    }

    /// Delaunay neighbours of every site, sorted.
    pub fn site_neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.sites.len()];
        for t in &self.triangles {
            for k in 0..3 {
                let (a, b) = (t[k], t[(k + 1) % 3]);
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        for v in &mut adj {
            v.sort_unstable();
            v.dedup();
        }
        adj
    }

    /// Hull edges `(a, b)` oriented so the triangulation lies to their left.
    pub fn hull_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (t, nb) in self.neighbors.iter().enumerate() {
            for k in 0..3 {
                if nb[k].is_none() {
                    let v = self.triangles[t];
                    out.push((v[(k + 1) % 3], v[(k + 2) % 3]));
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy)]
struct Tri {
    v: [usize; 3],
    n: [usize; 3],
}

impl Tri {
    fn ghost_slot(&self) -> Option<usize> {
        self.v.iter().position(|&x| x == GHOST)
    }
}

struct Builder<'a> {
    pts: &'a [Point2],
    tris: Vec<Tri>,
    alive: Vec<bool>,
    free: Vec<usize>,
    mark: Vec<u32>,
    epoch: u32,
    last: usize,
    steps: usize,
}

impl<'a> Builder<'a> {
    fn new(pts: &'a [Point2], a: usize, b: usize, c: usize) -> Self {
        let (b, c) = if orient2d(pts[a], pts[b], pts[c]) > 0.0 {
            (b, c)
        } else {
            (c, b)
        };
        let faces = [[a, b, c], [c, b, GHOST], [a, c, GHOST], [b, a, GHOST]];
        let mut tris: Vec<Tri> = faces.iter().map(|&v| Tri { v, n: [NONE; 3] }).collect();
        let mut edges = HashMap::new();
        for (t, tri) in tris.iter().enumerate() {
            for k in 0..3 {
                edges.insert((tri.v[(k + 1) % 3], tri.v[(k + 2) % 3]), (t, k));
            }
        }
        for t in 0..tris.len() {
            for k in 0..3 {
                let (u, w) = (tris[t].v[(k + 1) % 3], tris[t].v[(k + 2) % 3]);
                tris[t].n[k] = edges[&(w, u)].0;
            }
        }
        Self {
            pts,
            alive: vec![true; 4],
            mark: vec![0; 4],
            tris,
            free: Vec::new(),
            epoch: 0,
            last: 0,
            steps: 0,
        }
    }

    fn conflicts(&self, t: usize, p: Point2) -> bool {
        let tri = &self.tris[t];
        match tri.ghost_slot() {
            None => {
                let [a, b, c] = tri.v.map(|i| self.pts[i]);
                incircle(a, b, c, p) > 0.0
            }
            Some(k) => {
                let a = self.pts[tri.v[(k + 1) % 3]];
                let b = self.pts[tri.v[(k + 2) % 3]];
                let o = orient2d(a, b, p);
                o > 0.0 || (o == 0.0 && (p - a).dot(b - a) > 0.0 && (p - b).dot(a - b) > 0.0)
            }
        }
    }

    /// Visibility walk towards `p`, ending at a triangle in conflict with it.
    fn locate(&mut self, p: Point2) -> usize {
        let mut t = self.last;
        if let Some(k) = self.tris[t].ghost_slot() {
            t = self.tris[t].n[k];
        }
        'walk: loop {
            if self.tris[t].ghost_slot().is_some() {
                return t;
            }
            self.steps = self.steps.wrapping_add(1);
            let off = self.steps % 3;
            let v = self.tris[t].v;
            for j in 0..3 {
                let k = (j + off) % 3;
                let a = self.pts[v[(k + 1) % 3]];
                let b = self.pts[v[(k + 2) % 3]];
                if orient2d(a, b, p) < 0.0 {
                    t = self.tris[t].n[k];
                    continue 'walk;
                }
            }
            return t;
        }
    }

    fn alloc(&mut self, tri: Tri) -> usize {
        if let Some(t) = self.free.pop() {
            self.tris[t] = tri;
            self.alive[t] = true;
            t
        } else {
            self.tris.push(tri);
            self.alive.push(true);
            self.mark.push(0);
            self.tris.len() - 1
        }
    }

    fn insert(&mut self, pi: usize) {
        let p = self.pts[pi];
        let start = self.locate(p);
        debug_assert!(self.conflicts(start, p));

        self.epoch += 1;
        let epoch = self.epoch;
        // mark: epoch = in cavity, epoch | high bit = tested and outside
        let outside = epoch | (1 << 31);
        let mut cavity = vec![start];
        let mut stack = vec![start];
        self.mark[start] = epoch;
        // (a, b, outer triangle) for each cavity boundary edge
        let mut boundary: Vec<(usize, usize, usize)> = Vec::new();
        while let Some(t) = stack.pop() {
            let tri = self.tris[t];
            for k in 0..3 {
                let nb = tri.n[k];
                let in_cavity = if self.mark[nb] == epoch {
                    true
                } else if self.mark[nb] == outside {
                    false
                } else if self.conflicts(nb, p) {
                    self.mark[nb] = epoch;
                    cavity.push(nb);
                    stack.push(nb);
                    true
                } else {
                    self.mark[nb] = outside;
                    false
                };
                if !in_cavity {
                    boundary.push((tri.v[(k + 1) % 3], tri.v[(k + 2) % 3], nb));
                }
            }
        }

        for &t in &cavity {
            self.alive[t] = false;
            self.free.push(t);
        }
        let mut by_first: HashMap<usize, usize> = HashMap::with_capacity(boundary.len());
        let mut by_second: HashMap<usize, usize> = HashMap::with_capacity(boundary.len());
        let mut created = Vec::with_capacity(boundary.len());
        for &(a, b, outer) in &boundary {
            let t = self.alloc(Tri {
                v: [a, b, pi],
                n: [NONE, NONE, outer],
            });
            // located by vertices: a reused slot may already equal `old`
            let slot = self.tris[outer]
                .v
                .iter()
                .position(|&x| x != a && x != b)
                .expect("outer triangle shares the edge");
            self.tris[outer].n[slot] = t;
            by_first.insert(a, t);
            by_second.insert(b, t);
            created.push(t);
        }
        for &t in &created {
            let [a, b, _] = self.tris[t].v;
            self.tris[t].n[0] = by_first[&b];
            self.tris[t].n[1] = by_second[&a];
        }
        self.last = created
            .iter()
            .copied()
            .find(|&t| self.tris[t].ghost_slot().is_none())
            .unwrap_or(created[0]);
    }

    fn finish(self, sites: Vec<Point2>, duplicates_removed: usize) -> Triangulation {
        let mut index = vec![NONE; self.tris.len()];
        let mut triangles = Vec::new();
        for (t, tri) in self.tris.iter().enumerate() {
            if self.alive[t] && tri.ghost_slot().is_none() {
                index[t] = triangles.len();
                triangles.push(tri.v);
            }
        }
        let mut neighbors = Vec::with_capacity(triangles.len());
        for (t, tri) in self.tris.iter().enumerate() {
            if index[t] != NONE {
                neighbors.push(tri.n.map(|nb| {
                    let j = index[nb];
                    (j != NONE).then_some(j)
                }));
            }
        }
        Triangulation {
            sites,
            triangles,
            neighbors,
            duplicates_removed,
        }
    }
}

/// Hilbert-curve index of `(x, y)` on a `2^16` grid.
fn hilbert_index(mut x: u32, mut y: u32) -> u64 {
    let n: u32 = 1 << 16;
    let mut d: u64 = 0;
    let mut s = n / 2;
    while s > 0 {
        let rx = u32::from(x & s > 0);
        let ry = u32::from(y & s > 0);
        d += u64::from(s) * u64::from(s) * u64::from((3 * rx) ^ ry);
        if ry == 0 {
            if rx == 1 {
                x = n - 1 - x;
                y = n - 1 - y;
            }
            std::mem::swap(&mut x, &mut y);
        }
        s /= 2;
    }
    d
}

/// Delaunay triangulation of `points`. Points closer than 1e-12 to an
/// earlier point are merged first; the count is available from
/// [`Triangulation::duplicates_removed`].
pub fn delaunay(points: &[Point2]) -> Result<Triangulation> {
    if let Some(i) = points.iter().position(|p| !p.is_finite()) {
        return Err(Error::NonFinite(i));
    }
    let (sites, removed) = dedup_points(points, DEDUP_TOLERANCE);
    if sites.len() < 3 {
        return Err(Error::DegenerateInput(format!(
            "triangulation needs 3 distinct points, got {}",
            sites.len()
        )));
    }
    let (a, b) = (0, 1);
    let c = (2..sites.len())
        .find(|&k| orient2d(sites[a], sites[b], sites[k]) != 0.0)
        .ok_or_else(|| Error::DegenerateInput("all points are collinear".into()))?;

    let (lo, hi) = super::point::bounding_box(&sites).expect("non-empty");
    let span = (hi.x - lo.x).max(hi.y - lo.y).max(f64::MIN_POSITIVE);
    let scale = f64::from((1u32 << 16) - 1) / span;
    let mut order: Vec<(u64, usize)> = (0..sites.len())
        .filter(|&k| k != a && k != b && k != c)
        .map(|k| {
            let p = sites[k];
            let gx = ((p.x - lo.x) * scale) as u32;
            let gy = ((p.y - lo.y) * scale) as u32;
            (hilbert_index(gx, gy), k)
        })
        .collect();
    order.sort_unstable();

    let mut builder = Builder::new(&sites, a, b, c);
    for &(_, k) in &order {
        builder.insert(k);
    }
    let out = builder.finish(sites.clone(), removed);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[(f64, f64)]) -> Vec<Point2> {
        v.iter().map(|&p| p.into()).collect()
    }

    #[test]
    fn single_triangle() {
        let t = delaunay(&pts(&[(0., 0.), (2., 0.), (1., 2.)])).unwrap();
        assert_eq!(t.triangles().len(), 1);
        assert_eq!(t.hull_edges().len(), 3);
    }

    #[test]
    fn square_has_two_triangles() {
        let t = delaunay(&pts(&[(0., 0.), (1., 0.), (1., 1.), (0., 1.)])).unwrap();
        assert_eq!(t.triangles().len(), 2);
        let shared: usize = t.neighbors().iter().flatten().filter(|n| n.is_some()).count();
        assert_eq!(shared, 2);
    }

    #[test]
    fn collinear_rejected() {
        assert!(matches!(
            delaunay(&pts(&[(0., 0.), (1., 1.), (2., 2.), (3., 3.)])),
            Err(Error::DegenerateInput(_))
        ));
    }

    #[test]
    fn collinear_prefix_then_off_line() {
        let t = delaunay(&pts(&[(0., 0.), (1., 0.), (2., 0.), (3., 0.), (1.5, 1.)])).unwrap();
        assert_eq!(t.triangles().len(), 3);
        let area: f64 = (0..3)
            .map(|k| {
                let [a, b, c] = t.triangle_points(k);
                0.5 * orient2d(a, b, c)
            })
            .sum();
        assert!((area - 1.5).abs() < 1e-12);
    }

    #[test]
    fn duplicates_are_counted() {
        let t = delaunay(&pts(&[(0., 0.), (1., 0.), (0., 1.), (1., 0.), (0., 0.)])).unwrap();
        assert_eq!(t.duplicates_removed(), 2);
        assert_eq!(t.sites().len(), 3);
    }

    #[test]
    fn regular_grid_is_consistent() {
        let mut v = Vec::new();
        for i in 0..12 {
            for j in 0..9 {
                v.push(Point2::new(i as f64, j as f64));
            }
        }
        let t = delaunay(&v).unwrap();
        // Euler: 2n - h - 2 triangles, h = hull vertices (all boundary grid points)
        let h = 2 * (12 + 9) - 4;
        assert_eq!(t.triangles().len(), 2 * v.len() - h - 2);
        for k in 0..t.triangles().len() {
            let [a, b, c] = t.triangle_points(k);
            assert!(orient2d(a, b, c) > 0.0);
        }
    }
}
