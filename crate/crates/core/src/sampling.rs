//! Seeded generators for the benchmark supports: the unit square with a
//! triangular notch, the S-shaped bands and plain convex regions.

use std::f64::consts::PI;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom2d::{ConvexPolygon, Point2};
use crate::sample::{Provenance, Sample};
use crate::spacing::ConvexRegion;

pub const DEFAULT_NOISE_BOUND: f64 = 0.6;
pub const DEFAULT_NOISE_SIGMA: f64 = 0.15;

/// ChaCha8 generator addressed by `(seed, stream)`. Identical addresses
/// give identical sequences on any thread.
#[derive(Debug, Clone)]
pub struct SeededRng {
    seed: u64,
    stream: u64,
    inner: ChaCha8Rng,
}

impl SeededRng {
    pub const ALGORITHM: &'static str = "chacha8";

    pub fn new(seed: u64, stream: u64) -> Self {
        let mut inner = ChaCha8Rng::seed_from_u64(seed);
        inner.set_stream(stream);
        Self {
            seed,
            stream,
            inner,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }
}

impl RngCore for SeededRng {
    fn next_u32(&mut self) -> u32 {
        self.inner.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.inner.fill_bytes(dest)
    }
}

/// Radial noise across the S-shaped bands.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum NoiseSpec {
    Uniform { bound: f64 },
    TruncatedNormal { sigma: f64, bound: f64 },
}

impl NoiseSpec {
    pub fn uniform() -> Self {
        NoiseSpec::Uniform {
            bound: DEFAULT_NOISE_BOUND,
        }
    }

    pub fn truncated_normal() -> Self {
        NoiseSpec::TruncatedNormal {
            sigma: DEFAULT_NOISE_SIGMA,
            bound: DEFAULT_NOISE_BOUND,
        }
    }

    pub fn bound(&self) -> f64 {
        match *self {
            NoiseSpec::Uniform { bound } | NoiseSpec::TruncatedNormal { bound, .. } => bound,
        }
    }

    fn validate(&self) -> Result<()> {
        let ok = match *self {
            NoiseSpec::Uniform { bound } => bound > 0.0,
            NoiseSpec::TruncatedNormal { sigma, bound } => sigma > 0.0 && bound > 0.0,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidShape(format!("invalid noise {self:?}")))
        }
    }

    pub fn draw(&self, rng: &mut impl Rng) -> f64 {
        match *self {
            NoiseSpec::Uniform { bound } => rng.random_range(-bound..=bound),
            NoiseSpec::TruncatedNormal { sigma, bound } => truncated_normal(sigma, bound, rng),
        }
    }
}

/// Normal(0, sigma^2) conditioned on `|x| <= bound`, by rejection.
pub fn truncated_normal(sigma: f64, bound: f64, rng: &mut impl Rng) -> f64 {
    let normal = Normal::new(0.0, sigma).expect("sigma is positive");
    loop {
        let x: f64 = normal.sample(rng);
        if x.abs() <= bound {
            return x;
        }
    }
}

/// A support to sample uniformly from (or, for the S-shape, along).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum ShapeSpec {
    /// `[0,1]^2` minus an isosceles triangle with apex `(1/2, 1/2)`, height
    /// 1/2, apex angle `phi` and base on `y = 0`.
    SquareMinusTriangle { phi: f64 },
    /// Two circular bands of radius `radius` joined into an S; infinite
    /// radius gives the straight band `[0, 3 pi/2] x [-b, b]`.
    SShape { radius: f64, noise: NoiseSpec },
    Disk { radius: f64 },
    Rectangle { width: f64, height: f64 },
    Polygon { polygon: ConvexPolygon },
}

impl ShapeSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            ShapeSpec::SquareMinusTriangle { phi } => {
                if !(*phi > 0.0 && *phi < PI) {
                    return Err(Error::InvalidShape(format!(
                        "triangle angle must lie in (0, pi), got {phi}"
                    )));
                }
            }
            ShapeSpec::SShape { radius, noise } => {
                if !(*radius >= 1.0) {
                    return Err(Error::InvalidShape(format!(
                        "S-shape radius must be >= 1 or infinite, got {radius}"
                    )));
                }
                noise.validate()?;
            }
            ShapeSpec::Disk { radius } => {
                if !(*radius > 0.0 && radius.is_finite()) {
                    return Err(Error::InvalidShape(format!("disk radius {radius}")));
                }
            }
            ShapeSpec::Rectangle { width, height } => {
                ConvexPolygon::rectangle(Point2::new(0.0, 0.0), *width, *height)?;
            }
            ShapeSpec::Polygon { .. } => {}
        }
        Ok(())
    }

    /// The region as a convex set, when it is one.
    pub fn convex_region(&self) -> Option<ConvexRegion> {
        match self {
            ShapeSpec::Disk { radius } => Some(ConvexRegion::Disk {
                center: Point2::new(0.0, 0.0),
                radius: *radius,
            }),
            ShapeSpec::Rectangle { width, height } => Some(ConvexRegion::Rectangle {
                corner: Point2::new(0.0, 0.0),
                width: *width,
                height: *height,
            }),
            ShapeSpec::Polygon { polygon } => Some(ConvexRegion::Polygon(polygon.clone())),
            ShapeSpec::SShape { radius, noise } if radius.is_infinite() => {
                let b = noise.bound();
                Some(ConvexRegion::Rectangle {
                    corner: Point2::new(0.0, -b),
                    width: 1.5 * PI,
                    height: 2.0 * b,
                })
            }
            _ => None,
        }
    }

    pub fn contains(&self, p: Point2) -> bool {
        match self {
            ShapeSpec::SquareMinusTriangle { phi } => {
                (0.0..=1.0).contains(&p.x)
                    && (0.0..=1.0).contains(&p.y)
                    && !in_notch(*phi, p)
            }
            ShapeSpec::SShape { radius, noise } => in_s_shape(*radius, noise.bound(), p),
            _ => self
                .convex_region()
                .expect("convex shapes have a region")
                .contains(p),
        }
    }

    pub fn label(&self) -> String {
        match self {
            ShapeSpec::SquareMinusTriangle { phi } => format!("square_minus_triangle(phi={phi})"),
            ShapeSpec::SShape { radius, noise } => {
                let kind = match noise {
                    NoiseSpec::Uniform { .. } => "uniform",
                    NoiseSpec::TruncatedNormal { .. } => "tnormal",
                };
                format!("s_shape(R={radius},noise={kind})")
            }
            ShapeSpec::Disk { radius } => format!("disk(r={radius})"),
            ShapeSpec::Rectangle { width, height } => format!("rectangle({width}x{height})"),
            ShapeSpec::Polygon { polygon } => format!("polygon({} vertices)", polygon.len()),
        }
    }

    pub fn generate(&self, n: usize, rng: &mut SeededRng) -> Result<Sample> {
        self.validate()?;
        let points = match self {
            ShapeSpec::SquareMinusTriangle { phi } => square_minus_triangle_points(*phi, n, rng),
            ShapeSpec::SShape { radius, noise } => s_shape_points(*radius, noise, n, rng),
            _ => region_points(&self.convex_region().expect("convex"), n, rng),
        };
        Sample::new(
            points,
            Provenance::Generated {
                shape: self.label(),
                seed: rng.seed(),
                stream: rng.stream(),
            },
        )
    }
}

/// Closed triangular notch of the square.
fn in_notch(phi: f64, p: Point2) -> bool {
    if p.y < 0.0 || p.y > 0.5 {
        return false;
    }
    // half-width of the triangle at height y
    let half = (0.5 - p.y) * (phi / 2.0).tan();
    (p.x - 0.5).abs() <= half
}

fn in_s_shape(radius: f64, bound: f64, p: Point2) -> bool {
    if radius.is_infinite() {
        return (0.0..=1.5 * PI).contains(&p.x) && p.y.abs() <= bound;
    }
    let start = 1.5 * PI * (radius - 1.0) / radius;
    let in_band = |q: Point2| {
        let r = q.norm();
        if (r - radius).abs() > bound {
            return false;
        }
        let mut t = q.y.atan2(q.x);
        if t < 0.0 {
            t += 2.0 * PI;
        }
        // the arc starts at angle 0 when radius = 1
        (t >= start - 1e-15 && t <= 1.5 * PI + 1e-15) || (start <= 1e-15 && t >= 2.0 * PI - 1e-15)
    };
    let upper = p - Point2::new(0.0, radius);
    let lower = Point2::new(-p.x, p.y + radius);
    in_band(upper) || in_band(lower)
}

fn square_minus_triangle_points(phi: f64, n: usize, rng: &mut SeededRng) -> Vec<Point2> {
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let p = Point2::new(rng.random::<f64>(), rng.random::<f64>());
        if !in_notch(phi, p) {
            out.push(p);
        }
    }
    out
}

fn s_shape_points(radius: f64, noise: &NoiseSpec, n: usize, rng: &mut SeededRng) -> Vec<Point2> {
    (0..n)
        .map(|_| {
            let upper = rng.random_bool(0.5);
            if radius.is_infinite() {
                let x = rng.random_range(0.0..=1.5 * PI);
                let y = noise.draw(rng);
                // keep the same number of draws per point as the curved case
                let _ = upper;
                return Point2::new(x, y);
            }
            let start = 1.5 * PI * (radius - 1.0) / radius;
            let theta = rng.random_range(start..=1.5 * PI);
            let r = radius + noise.draw(rng);
            let (s, c) = theta.sin_cos();
            if upper {
                Point2::new(r * c, r * s + radius)
            } else {
                Point2::new(-r * c, r * s - radius)
            }
        })
        .collect()
}

fn region_points(region: &ConvexRegion, n: usize, rng: &mut SeededRng) -> Vec<Point2> {
    let (lo, hi) = region.bounding_box();
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let p = Point2::new(
            rng.random_range(lo.x..=hi.x),
            rng.random_range(lo.y..=hi.y),
        );
        if region.contains(p) {
            out.push(p);
        }
    }
    out
}

pub fn sample_square_minus_triangle(phi: f64, n: usize, rng: &mut SeededRng) -> Result<Sample> {
    ShapeSpec::SquareMinusTriangle { phi }.generate(n, rng)
}

pub fn sample_s_shape(
    radius: f64,
    noise: NoiseSpec,
    n: usize,
    rng: &mut SeededRng,
) -> Result<Sample> {
    ShapeSpec::SShape { radius, noise }.generate(n, rng)
}

pub fn sample_region(region: &ConvexRegion, n: usize, rng: &mut SeededRng) -> Result<Sample> {
    Sample::new(
        region_points(region, n, rng),
        Provenance::Generated {
            shape: format!("{region:?}"),
            seed: rng.seed(),
            stream: rng.stream(),
        },
    )
}
