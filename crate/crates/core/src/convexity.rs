//! Convexity tests of the support: semi-parametric (uniform sample, hull as
//! support) and nonparametric (Voronoi-max density plug-in).
//!
//! Both share the critical value `c_{n,gamma}` and report the asymptotic
//! Gumbel p-value `1 - G(u)`.

use serde::{Deserialize, Serialize};

use crate::constants::{alpha_ball, critical_value, p_value, u_statistic, LimitParams};
use crate::density::{default_bandwidth, voronoi_max_estimator, BandwidthSpec, DensityEstimate, KernelSpec};
use crate::error::Result;
use crate::geom2d::{convex_hull, dedup_points, Point2, DEDUP_TOLERANCE};
use crate::spacing::{uniform_spacing, weighted_spacing, ConvexRegion, EmptyBall, SpacingStatistics};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    SemiParametric,
    Nonparametric,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::SemiParametric => "semi_parametric",
            Method::Nonparametric => "nonparametric",
        }
    }

    /// The semi-parametric region is `{V > c}`, the nonparametric `{V >= c}`.
    pub fn rejects(self, statistic: f64, critical: f64) -> bool {
        match self {
            Method::SemiParametric => statistic > critical,
            Method::Nonparametric => statistic >= critical,
        }
    }
}

/// What the nominal level means for this result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LevelGuarantee {
    /// Level tends to gamma for convex supports with Lipschitz normals and
    /// is bounded by gamma for other convex supports.
    AsymptoticExactForSmoothSupport,
    /// Asymptotic level bounded by gamma.
    AsymptoticUpperBound,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub n: usize,
    pub hull_area: f64,
    pub r: f64,
    pub bandwidth: Option<f64>,
    pub duplicates_removed: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestResult {
    pub method: Method,
    pub statistic: f64,
    pub critical: f64,
    pub u_value: f64,
    pub p_value: f64,
    pub reject: bool,
    pub gamma_level: f64,
    pub witness: EmptyBall,
    pub diagnostics: Diagnostics,
    pub level: LevelGuarantee,
}

impl TestResult {
    /// Assembles the decision for an already computed statistic.
    pub fn from_statistic(
        method: Method,
        statistic: f64,
        params: &LimitParams,
        witness: EmptyBall,
        diagnostics: Diagnostics,
    ) -> Result<Self> {
        let critical = critical_value(params)?;
        let u_value = u_statistic(params.n, statistic, params.d, params.alpha)?;
        let level = match method {
            Method::SemiParametric => LevelGuarantee::AsymptoticExactForSmoothSupport,
            Method::Nonparametric => LevelGuarantee::AsymptoticUpperBound,
        };
        Ok(Self {
            method,
            statistic,
            critical,
            u_value,
            p_value: p_value(u_value),
            reject: method.rejects(statistic, critical),
            gamma_level: params.gamma_level,
            witness,
            diagnostics,
            level,
        })
    }

    fn from_spacing(
        method: Method,
        st: &SpacingStatistics,
        bandwidth: Option<f64>,
    ) -> Result<Self> {
        let diagnostics = Diagnostics {
            n: st.params.n,
            hull_area: st.region_area,
            r: st.r,
            bandwidth,
            duplicates_removed: st.duplicates_removed,
        };
        Self::from_statistic(method, st.v, &st.params, st.witness, diagnostics)
    }
}

fn planar_params(points: &[Point2], gamma_level: f64) -> Result<LimitParams> {
    let n = dedup_points(points, DEDUP_TOLERANCE).0.len();
    LimitParams::new(n, 2, alpha_ball(2)?, gamma_level)
}

/// Semi-parametric test: rejects convexity when
/// `omega_2 R(H \ X)^2 / |H| > c_{n,gamma}`.
pub fn test_semi_parametric(points: &[Point2], gamma_level: f64) -> Result<TestResult> {
    let params = planar_params(points, gamma_level)?;
    let hull = convex_hull(points)?;
    let st = uniform_spacing(points, &ConvexRegion::Polygon(hull), &params)?;
    TestResult::from_spacing(Method::SemiParametric, &st, None)
}

/// Nonparametric test with the Voronoi-max kernel estimate.
pub fn test_nonparametric(
    points: &[Point2],
    gamma_level: f64,
    kernel: KernelSpec,
    bandwidth: BandwidthSpec,
) -> Result<TestResult> {
    let params = planar_params(points, gamma_level)?;
    let (sites, _) = dedup_points(points, DEDUP_TOLERANCE);
    let h = default_bandwidth(&sites, bandwidth)?;
    let dens = voronoi_max_estimator(points, h, kernel)?;
    let st = weighted_spacing(points, dens.hull(), &dens, &params)?;
    TestResult::from_spacing(Method::Nonparametric, &st, Some(h))
}

/// Nonparametric test with a caller-supplied density estimate.
pub fn test_nonparametric_with_density(
    points: &[Point2],
    gamma_level: f64,
    dens: &DensityEstimate,
) -> Result<TestResult> {
    let params = planar_params(points, gamma_level)?;
    let st = weighted_spacing(points, dens.hull(), dens, &params)?;
    TestResult::from_spacing(Method::Nonparametric, &st, dens.bandwidth())
}
