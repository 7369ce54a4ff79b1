//! Largest disk that fits in a region without covering a sample point.
//!
//! cargo run --example largest_empty_ball

use maxspace::geom2d::{convex_hull, Point2};
use maxspace::spacing::{largest_empty_ball, ConvexRegion};

fn main() -> anyhow::Result<()> {
    let square = ConvexRegion::unit_square();
    let mut pts = vec![
        Point2::new(0.0, 0.0),
        Point2::new(1.0, 0.0),
        Point2::new(1.0, 1.0),
        Point2::new(0.0, 1.0),
    ];
    let ball = largest_empty_ball(&pts, &square)?;
    println!("corners:          r = {:.6} at {:?}", ball.radius, ball.center);

    pts.push(Point2::new(0.5, 0.5));
    let ball = largest_empty_ball(&pts, &square)?;
    println!("corners + centre: r = {:.6} (exact {:.6})", ball.radius, (2.0 - 2f64.sqrt()) / 2.0);

    // the same points with their own hull as the region
    let hull = ConvexRegion::Polygon(convex_hull(&pts)?);
    println!("hull region:      r = {:.6}", largest_empty_ball(&pts, &hull)?.radius);

    let disk = ConvexRegion::unit_disk();
    let ball = largest_empty_ball(&[Point2::new(0.0, 0.0)], &disk)?;
    println!("disk centre:      r = {:.6} at distance {:.6}", ball.radius, ball.center.norm());
    Ok(())
}
