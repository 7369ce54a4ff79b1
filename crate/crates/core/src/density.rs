//! Kernel density estimation and the Voronoi-max plug-in estimator, which
//! is constant on each Voronoi cell of the sample and zero off its hull.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom2d::voronoi::nearest_sites;
use crate::geom2d::{convex_hull, dedup_points, ConvexPolygon, Point2, DEDUP_TOLERANCE};

/// Dimension the estimators work in.
const DIM: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum KernelSpec {
    /// Standard bivariate normal density.
    #[default]
    Gaussian,
    /// Indicator of the unit disk divided by its area.
    Uniform,
}

impl KernelSpec {
    pub fn eval(self, u: Point2) -> f64 {
        match self {
            KernelSpec::Gaussian => (-0.5 * u.norm2()).exp() / (2.0 * PI),
            KernelSpec::Uniform => {
                if u.norm2() <= 1.0 {
                    1.0 / PI
                } else {
                    0.0
                }
            }
        }
    }
}

/// How the kernel bandwidth is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BandwidthSpec {
    Fixed(f64),
    /// `h0 * sigma * n^(-1/(d+4))`, `sigma` the mean coordinate standard
    /// deviation.
    Scaled(f64),
}

impl Default for BandwidthSpec {
    fn default() -> Self {
        BandwidthSpec::Scaled(1.0)
    }
}

/// Kernel density estimate `(1/(n h^2)) sum K((x - X_i)/h)`.
pub fn kde_at(points: &[Point2], h: f64, k: KernelSpec, x: Point2) -> Result<f64> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::InvalidBandwidth(h));
    }
    if points.is_empty() {
        return Err(Error::EmptyInput);
    }
    let inv = 1.0 / h;
    let sum: f64 = points.iter().map(|&p| k.eval((x - p) * inv)).sum();
    Ok(sum / (points.len() as f64 * h * h))
}

fn std_dev(values: impl Iterator<Item = f64> + Clone) -> f64 {
    let n = values.clone().count() as f64;
    let mean = values.clone().sum::<f64>() / n;
    let ss: f64 = values.map(|v| (v - mean) * (v - mean)).sum();
    (ss / (n - 1.0)).sqrt()
}

/// Mean of the two coordinate-wise sample standard deviations.
pub fn mean_spread(points: &[Point2]) -> f64 {
    let sx = std_dev(points.iter().map(|p| p.x));
    let sy = std_dev(points.iter().map(|p| p.y));
    0.5 * (sx + sy)
}

pub fn default_bandwidth(points: &[Point2], spec: BandwidthSpec) -> Result<f64> {
    let h = match spec {
        BandwidthSpec::Fixed(h) => h,
        BandwidthSpec::Scaled(h0) => {
            if points.len() < 2 {
                return Err(Error::InvalidParams(
                    "scaled bandwidth needs at least 2 points".into(),
                ));
            }
            let sigma = mean_spread(points);
            if !(sigma > 0.0) {
                return Err(Error::ZeroSpread);
            }
            h0 * sigma * (points.len() as f64).powf(-1.0 / (DIM + 4.0))
        }
    };
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::InvalidBandwidth(h));
    }
    Ok(h)
}

/// A density that is constant on the Voronoi cells of `sites` inside
/// `hull` and zero outside it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityEstimate {
    sites: Vec<Point2>,
    cell_values: Vec<f64>,
    hull: ConvexPolygon,
    bandwidth: Option<f64>,
}

impl DensityEstimate {
    /// Estimator with the given value on every cell; sites are the distinct
    /// points of `points`.
    pub fn constant(points: &[Point2], value: f64) -> Result<Self> {
        let hull = convex_hull(points)?;
        let (sites, _) = dedup_points(points, DEDUP_TOLERANCE);
        Self::from_cells(sites.clone(), vec![value; sites.len()], hull)
    }

    pub fn from_cells(sites: Vec<Point2>, cell_values: Vec<f64>, hull: ConvexPolygon) -> Result<Self> {
        if sites.len() != cell_values.len() {
            return Err(Error::InvalidParams(format!(
                "{} sites but {} cell values",
                sites.len(),
                cell_values.len()
            )));
        }
        if cell_values.iter().any(|v| !(*v >= 0.0 && v.is_finite())) {
            return Err(Error::InvalidParams(
                "cell values must be finite and non-negative".into(),
            ));
        }
        Ok(Self {
            sites,
            cell_values,
            hull,
            bandwidth: None,
        })
    }

    pub fn sites(&self) -> &[Point2] {
        &self.sites
    }

    pub fn cell_values(&self) -> &[f64] {
        &self.cell_values
    }

    pub fn hull(&self) -> &ConvexPolygon {
        &self.hull
    }

    pub fn bandwidth(&self) -> Option<f64> {
        self.bandwidth
    }

    /// Largest cell value among the nearest sites of `x`; zero off the hull.
    pub fn evaluate(&self, x: Point2) -> f64 {
        if !self.hull.contains(x) {
            return 0.0;
        }
        nearest_sites(&self.sites, x)
            .into_iter()
            .map(|i| self.cell_values[i])
            .fold(0.0, f64::max)
    }
}

/// Voronoi-max estimator: each cell carries the kernel estimate at its
/// site.
pub fn voronoi_max_estimator(points: &[Point2], h: f64, k: KernelSpec) -> Result<DensityEstimate> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::InvalidBandwidth(h));
    }
    let hull = convex_hull(points)?;
    let (sites, _) = dedup_points(points, DEDUP_TOLERANCE);
    let values = sites
        .iter()
        .map(|&s| kde_at(&sites, h, k, s))
        .collect::<Result<Vec<_>>>()?;
    let mut est = DensityEstimate::from_cells(sites, values, hull)?;
    est.bandwidth = Some(h);
    Ok(est)
}
