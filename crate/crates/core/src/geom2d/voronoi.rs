use super::polygon::clip_half_plane;
use super::predicates::circumcenter;
use super::{Point2, Triangulation};

/// Relative tolerance on distances when deciding that a query point is
/// equidistant from several sites.
pub const TIE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EdgeGeometry {
    /// Segment between two Voronoi vertices.
    Segment { from: usize, to: usize },
    /// Ray from a Voronoi vertex, unit direction pointing away from the hull.
    Ray { origin: usize, direction: Point2 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VoronoiEdge {
    pub geometry: EdgeGeometry,
    /// Sites whose cells this edge separates.
    pub sites: (usize, usize),
}

/// Voronoi dual of a Delaunay triangulation. Vertex `t` is the circumcenter
/// of triangle `t`.
#[derive(Debug, Clone)]
pub struct VoronoiDiagram {
    sites: Vec<Point2>,
    vertices: Vec<Point2>,
    vertex_sites: Vec<[usize; 3]>,
    edges: Vec<VoronoiEdge>,
    cells: Vec<Vec<usize>>,
    site_neighbors: Vec<Vec<usize>>,
}

pub fn voronoi(tri: &Triangulation) -> VoronoiDiagram {
    let sites = tri.sites().to_vec();
    let vertices: Vec<Point2> = (0..tri.triangles().len())
        .map(|t| {
            let [a, b, c] = tri.triangle_points(t);
            circumcenter(a, b, c)
        })
        .collect();
    let mut edges = Vec::new();
    let mut cells = vec![Vec::new(); sites.len()];
    for (t, nb) in tri.neighbors().iter().enumerate() {
        let v = tri.triangles()[t];
        for k in 0..3 {
            let (a, b) = (v[(k + 1) % 3], v[(k + 2) % 3]);
            let geometry = match nb[k] {
                Some(u) if u > t => EdgeGeometry::Segment { from: t, to: u },
                Some(_) => continue,
                None => {
                    // hull edge a -> b has the triangulation on its left
                    let d = sites[b] - sites[a];
                    let out = Point2::new(d.y, -d.x) * (1.0 / d.norm());
                    EdgeGeometry::Ray {
                        origin: t,
                        direction: out,
                    }
                }
            };
            let e = edges.len();
            edges.push(VoronoiEdge {
                geometry,
                sites: (a, b),
            });
            cells[a].push(e);
            cells[b].push(e);
        }
    }
    VoronoiDiagram {
        sites,
        vertices,
        vertex_sites: tri.triangles().to_vec(),
        edges,
        cells,
        site_neighbors: tri.site_neighbors(),
    }
}

impl VoronoiDiagram {
    pub fn sites(&self) -> &[Point2] {
        &self.sites
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    /// The three sites defining each vertex.
    pub fn vertex_sites(&self) -> &[[usize; 3]] {
        &self.vertex_sites
    }

    pub fn edges(&self) -> &[VoronoiEdge] {
        &self.edges
    }

    /// Edge indices bounding the cell of `site`.
    pub fn cell_edges(&self, site: usize) -> &[usize] {
        &self.cells[site]
    }

    pub fn site_neighbors(&self, site: usize) -> &[usize] {
        &self.site_neighbors[site]
    }

    /// The cell of `site` intersected with the convex polygon `clip`
    /// (counter-clockwise). Empty when they do not meet.
    pub fn clipped_cell(&self, site: usize, clip: &[Point2]) -> Vec<Point2> {
        let s = self.sites[site];
        let mut cell = clip.to_vec();
        for &j in &self.site_neighbors[site] {
            let o = self.sites[j];
            let normal = o - s;
            let bound = normal.dot(s.midpoint(o));
            cell = clip_half_plane(&cell, normal, bound);
            if cell.is_empty() {
                break;
            }
        }
        cell
    }
}

/// All sites at minimal distance from `p`, ties within [`TIE_TOLERANCE`].
pub fn nearest_site(vd: &VoronoiDiagram, p: Point2) -> Vec<usize> {
    nearest_sites(vd.sites(), p)
}

pub fn nearest_sites(sites: &[Point2], p: Point2) -> Vec<usize> {
    let d2: Vec<f64> = sites.iter().map(|s| s.dist2(p)).collect();
    let best = d2.iter().copied().fold(f64::INFINITY, f64::min);
    let cut = best * (1.0 + TIE_TOLERANCE).powi(2);
    (0..sites.len()).filter(|&i| d2[i] <= cut).collect()
}
