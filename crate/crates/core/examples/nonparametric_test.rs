//! Nonparametric test with the Voronoi-max kernel estimate on S-shaped
//! samples of shrinking curvature.
//!
//! cargo run --release --example nonparametric_test

use maxspace::convexity::test_nonparametric;
use maxspace::density::{BandwidthSpec, KernelSpec};
use maxspace::sampling::{NoiseSpec, SeededRng, ShapeSpec};

fn main() -> anyhow::Result<()> {
    for radius in [1.0, 3.0, 12.0, f64::INFINITY] {
        for noise in [NoiseSpec::uniform(), NoiseSpec::truncated_normal()] {
            let shape = ShapeSpec::SShape { radius, noise };
            let sample = shape.generate(500, &mut SeededRng::new(2, 0))?;
            let r = test_nonparametric(sample.points(), 0.05, KernelSpec::Gaussian, BandwidthSpec::Scaled(1.0))?;
            println!(
                "{:<34} h={:.3} V={:.5} c={:.5} p={:.4} reject={}",
                shape.label(),
                r.diagnostics.bandwidth.unwrap_or(f64::NAN),
                r.statistic,
                r.critical,
                r.p_value,
                r.reject
            );
        }
    }
    Ok(())
}
