//! Convex hull, Delaunay triangulation and Voronoi cells of a small sample.
//!
//! cargo run --example hull_and_voronoi

use maxspace::geom2d::{convex_hull, delaunay, nearest_site, voronoi, EdgeGeometry, Point2};
use maxspace::sampling::{SeededRng, ShapeSpec};

fn main() -> anyhow::Result<()> {
    let sample = ShapeSpec::Disk { radius: 1.0 }.generate(12, &mut SeededRng::new(3, 0))?;
    let pts = sample.points();

    let hull = convex_hull(pts)?;
    println!("hull: {} of {} points, area {:.4}", hull.len(), pts.len(), hull.area());

    let tri = delaunay(pts)?;
    println!("delaunay: {} triangles", tri.triangles().len());

    let vd = voronoi(&tri);
    let (mut segments, mut rays) = (0, 0);
    for e in vd.edges() {
        match e.geometry {
            EdgeGeometry::Segment { .. } => segments += 1,
            EdgeGeometry::Ray { .. } => rays += 1,
        }
    }
    println!("voronoi: {} vertices, {segments} segments, {rays} rays", vd.vertices().len());

    // cells clipped to the hull tile it exactly
    let total: f64 = (0..vd.sites().len())
        .map(|i| maxspace::geom2d::polygon::shoelace(&vd.clipped_cell(i, hull.vertices())))
        .sum();
    println!("clipped cell areas sum to {total:.12}");

    let q = Point2::new(0.1, -0.2);
    println!("nearest site to {q:?}: {:?}", nearest_site(&vd, q));
    Ok(())
}
