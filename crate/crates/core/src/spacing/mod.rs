//! Maximal inner radius of a region minus a sample, and the spacing
//! statistics built on it.

mod region;
mod solver;

use serde::{Deserialize, Serialize};

pub use region::ConvexRegion;
pub use solver::{
    cell_balls, certify, empty_radius, largest_empty_ball, CellBalls, EmptyBall,
    CONTAINMENT_TOLERANCE,
};

use crate::constants::{alpha_ball, omega, u_statistic, LimitParams};
use crate::density::DensityEstimate;
use crate::error::{Error, Result};
use crate::geom2d::{convex_hull, dedup_points, ConvexPolygon, Point2, DEDUP_TOLERANCE};

/// Level stored in the parameters of statistics computed without a test.
pub const DEFAULT_LEVEL: f64 = 0.05;

/// Spacing statistics of a sample together with the inputs used.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpacingStatistics {
    /// Inner radius of the region minus the sample (for the weighted
    /// statistic, the radius of the maximising ball).
    pub r: f64,
    pub delta: f64,
    /// `delta^d`.
    pub v: f64,
    pub u: f64,
    pub params: LimitParams,
    pub witness: EmptyBall,
    pub region_area: f64,
    pub duplicates_removed: usize,
}

fn finish(
    v: f64,
    r: f64,
    params: LimitParams,
    witness: EmptyBall,
    region_area: f64,
    duplicates_removed: usize,
) -> Result<SpacingStatistics> {
    let d = params.d;
    let u = u_statistic(params.n, v, d, params.alpha)?;
    Ok(SpacingStatistics {
        r,
        delta: v.powf(1.0 / f64::from(d)),
        v,
        u,
        params,
        witness,
        region_area,
        duplicates_removed,
    })
}

/// Spacing of a sample assumed uniform on `support`:
/// `V = omega_d R^d / |support|`.
pub fn uniform_spacing(
    points: &[Point2],
    support: &ConvexRegion,
    params: &LimitParams,
) -> Result<SpacingStatistics> {
    params.validate()?;
    if params.d != 2 {
        return Err(Error::InvalidParams(format!(
            "planar geometry requires d = 2, got {}",
            params.d
        )));
    }
    let cells = cell_balls(points, support)?;
    let (_, ball) = cells.best();
    let witness = certify(&cells.sites, support, ball)?;
    let area = support.area();
    let r = witness.radius;
    let v = omega(2)? * r * r / area;
    finish(v, r, *params, witness, area, cells.duplicates_removed)
}

fn distinct_count(points: &[Point2]) -> usize {
    dedup_points(points, DEDUP_TOLERANCE).0.len()
}

/// Semi-parametric statistic: uniform spacing with the sample's own convex
/// hull as support. `n` counts distinct points.
pub fn semi_parametric_statistic(points: &[Point2]) -> Result<SpacingStatistics> {
    let hull = convex_hull(points)?;
    let params = LimitParams::new(distinct_count(points), 2, alpha_ball(2)?, DEFAULT_LEVEL)?;
    uniform_spacing(points, &ConvexRegion::Polygon(hull), &params)
}

/// Density-weighted spacing `sup_x (omega_d f(x))^(1/d) g(x)` over the hull,
/// with `f` constant on Voronoi cells.
pub fn weighted_spacing(
    points: &[Point2],
    hull: &ConvexPolygon,
    dens: &DensityEstimate,
    params: &LimitParams,
) -> Result<SpacingStatistics> {
    params.validate()?;
    if params.d != 2 {
        return Err(Error::InvalidParams(format!(
            "planar geometry requires d = 2, got {}",
            params.d
        )));
    }
    if dens.hull() != hull {
        return Err(Error::DensityDomainMismatch);
    }
    let region = ConvexRegion::Polygon(hull.clone());
    let cells = cell_balls(points, &region)?;
    if cells.sites != dens.sites() {
        return Err(Error::DensityDomainMismatch);
    }
    let w = omega(2)?;
    let mut best_v = -1.0;
    let mut best_ball = cells.balls[0];
    for (ball, &f) in cells.balls.iter().zip(dens.cell_values()) {
        let v = w * f * ball.radius * ball.radius;
        if v > best_v {
            best_v = v;
            best_ball = *ball;
        }
    }
    let witness = certify(&cells.sites, &region, best_ball)?;
    finish(
        best_v.max(0.0),
        witness.radius,
        *params,
        witness,
        hull.area(),
        cells.duplicates_removed,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn corners() -> Vec<Point2> {
        vec![
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(1.0, 1.0),
            Point2::new(0.0, 1.0),
        ]
    }

    #[test]
    fn square_corner_spacing() {
        let params = LimitParams::planar(4, 0.05).unwrap();
        let st = uniform_spacing(&corners(), &ConvexRegion::unit_square(), &params).unwrap();
        assert!((st.r - 0.5).abs() < 1e-12);
        assert!((st.v - std::f64::consts::FRAC_PI_4).abs() < 1e-12);
        assert!((st.v - st.delta * st.delta).abs() < 1e-12 * st.v);
    }

    #[test]
    fn scaling_leaves_v_unchanged() {
        let params = LimitParams::planar(4, 0.05).unwrap();
        let scaled: Vec<Point2> = corners().into_iter().map(|p| p * 10.0).collect();
        let region = ConvexRegion::rectangle(Point2::new(0.0, 0.0), 10.0, 10.0).unwrap();
        let st = uniform_spacing(&scaled, &region, &params).unwrap();
        assert!((st.v - std::f64::consts::FRAC_PI_4).abs() < 1e-12);
    }

    #[test]
    fn semi_parametric_on_corners_and_duplicates() {
        let st = semi_parametric_statistic(&corners()).unwrap();
        assert!((st.v - std::f64::consts::FRAC_PI_4).abs() < 1e-12);
        assert!((st.region_area - 1.0).abs() < 1e-15);
        let mut dup = corners();
        dup.push(dup[2]);
        let st2 = semi_parametric_statistic(&dup).unwrap();
        assert_eq!(st.v, st2.v);
        assert_eq!(st.u, st2.u);
        assert_eq!(st2.duplicates_removed, 1);
    }

    #[test]
    fn semi_parametric_degenerate() {
        let line = [
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 1.0),
            Point2::new(2.0, 2.0),
        ];
        assert!(matches!(
            semi_parametric_statistic(&line),
            Err(Error::DegenerateInput(_))
        ));
    }
}
