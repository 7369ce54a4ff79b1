//! Planar primitives: hull, polygon measures, Delaunay triangulation and
//! its Voronoi dual.

mod delaunay;
pub mod hull;
mod point;
pub mod polygon;
pub mod predicates;
pub mod voronoi;

pub use delaunay::{delaunay, Triangulation};
pub use hull::convex_hull;
pub use point::{bounding_box, dedup_points, Point2, DEDUP_TOLERANCE};
pub use polygon::{polygon_area, ConvexPolygon, EdgeLine};
pub use voronoi::{nearest_site, voronoi, EdgeGeometry, VoronoiDiagram, VoronoiEdge};
