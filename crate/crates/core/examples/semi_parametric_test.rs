//! Semi-parametric convexity test on a CSV file or on generated data.
//!
//! cargo run --example semi_parametric_test [-- points.csv]

use maxspace::convexity::test_semi_parametric;
use maxspace::harness::io::parse_points;
use maxspace::sampling::{SeededRng, ShapeSpec};

fn report(label: &str, pts: &[maxspace::geom2d::Point2]) -> anyhow::Result<()> {
    let r = test_semi_parametric(pts, 0.05)?;
    println!(
        "{label:<28} n={:<5} V={:.5} c={:.5} p={:.4} reject={}",
        r.diagnostics.n, r.statistic, r.critical, r.p_value, r.reject
    );
    Ok(())
}

fn main() -> anyhow::Result<()> {
    if let Some(path) = std::env::args().nth(1) {
        let pts = parse_points(&std::fs::read_to_string(&path)?)?;
        return report(&path, &pts);
    }
    let mut rng = SeededRng::new(1, 0);
    let disk = ShapeSpec::Disk { radius: 1.0 }.generate(1000, &mut rng)?;
    report("disk (convex)", disk.points())?;
    for (k, n) in [100, 200, 300].into_iter().enumerate() {
        let mut rng = SeededRng::new(1, 1 + k as u64);
        let notch = ShapeSpec::SquareMinusTriangle { phi: std::f64::consts::FRAC_PI_4 }.generate(n, &mut rng)?;
        report("notched square, phi = pi/4", notch.points())?;
    }
    Ok(())
}
