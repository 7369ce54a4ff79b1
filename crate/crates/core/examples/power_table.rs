//! Monte Carlo power for the notched square, one row per apex angle.
//!
//! cargo run --release --example power_table [-- reps]

use std::f64::consts::PI;

use maxspace::convexity::Method;
use maxspace::harness::study::{run_power_study, StudyConfig};
use maxspace::sampling::ShapeSpec;

fn main() -> anyhow::Result<()> {
    let reps = std::env::args().nth(1).map_or(Ok(200), |s| s.parse())?;
    let shapes = [
        ("pi/4", PI / 4.0, vec![100, 130, 160, 200, 300]),
        ("pi/6", PI / 6.0, vec![200, 250, 300, 400, 500]),
        ("pi/8", PI / 8.0, vec![300, 350, 400, 500, 600]),
    ];
    for (name, phi, sizes) in shapes {
        let mut cfg = StudyConfig::power(ShapeSpec::SquareMinusTriangle { phi }, 0, Method::SemiParametric, reps, 1);
        cfg.sizes = sizes;
        cfg.workers = std::thread::available_parallelism().map_or(1, |n| n.get());
        let table = run_power_study(&cfg)?;
        let cells: Vec<String> = table
            .rows
            .iter()
            .map(|r| format!("{:>4}: {:.3}", r.n, r.proportion))
            .collect();
        println!("phi = {name:<5} {}", cells.join("  "));
    }
    Ok(())
}
