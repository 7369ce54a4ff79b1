//! Draw from every built-in shape and write the samples as CSV files.
//!
//! cargo run --example sampling_shapes [-- out_dir]

use std::path::PathBuf;

use maxspace::harness::io::write_points;
use maxspace::sampling::{NoiseSpec, SeededRng, ShapeSpec};

fn main() -> anyhow::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "samples".into()));
    std::fs::create_dir_all(&dir)?;
    let shapes = [
        ("notch", ShapeSpec::SquareMinusTriangle { phi: std::f64::consts::FRAC_PI_4 }),
        ("s_uniform", ShapeSpec::SShape { radius: 1.5, noise: NoiseSpec::uniform() }),
        ("s_tnormal", ShapeSpec::SShape { radius: 3.0, noise: NoiseSpec::truncated_normal() }),
        ("strip", ShapeSpec::SShape { radius: f64::INFINITY, noise: NoiseSpec::uniform() }),
        ("disk", ShapeSpec::Disk { radius: 1.0 }),
    ];
    for (k, (name, shape)) in shapes.iter().enumerate() {
        let sample = shape.generate(1000, &mut SeededRng::new(42, k as u64))?;
        let path = dir.join(format!("{name}.csv"));
        std::fs::write(&path, write_points(sample.points()))?;
        println!("{:<40} -> {}", shape.label(), path.display());
    }
    Ok(())
}
