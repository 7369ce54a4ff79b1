//! Normalised spacing on the unit disk against its Gumbel limit.
//!
//! cargo run --release --example limit_law [-- n reps]

use maxspace::constants::gumbel_cdf;
use maxspace::harness::study::{run_limit_study, StudyConfig};
use maxspace::sampling::ShapeSpec;

fn main() -> anyhow::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map_or(Ok(1000), |s| s.parse())?;
    let reps: usize = args.next().map_or(Ok(400), |s| s.parse())?;
    let mut cfg = StudyConfig::limit(ShapeSpec::Disk { radius: 1.0 }, n, reps, 7);
    cfg.workers = std::thread::available_parallelism().map_or(1, |n| n.get());
    let report = &run_limit_study(&cfg)?[0];
    println!("n={n} reps={reps}: KS distance {:.4}, band median {:.3}", report.ks_distance, report.band_median);
    println!("{:>8} {:>8} {:>8}", "u", "ecdf", "gumbel");
    let m = report.u_values.len();
    for q in [0.05, 0.25, 0.5, 0.75, 0.95] {
        let k = ((q * m as f64) as usize).min(m - 1);
        let u = report.u_values[k];
        println!("{u:>8.3} {:>8.3} {:>8.3}", (k + 1) as f64 / m as f64, gumbel_cdf(u));
    }
    Ok(())
}
