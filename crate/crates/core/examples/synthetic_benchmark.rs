//! All seven methods on several noisy spline trajectories, median errors
//! averaged over seeds.
//!
//!     cargo run --release --example synthetic_benchmark -- 10

use dqfilter::app::{compare, generate, RunConfig, COMPARE_METHODS};

fn main() -> dqfilter::Result<()> {
    let seeds: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    let mut totals = vec![[0.0; 3]; COMPARE_METHODS.len()];
    for seed in 0..seeds {
        let cfg = RunConfig { seed, ..RunConfig::default() };
        let data = generate(&cfg)?;
        let report = compare(&cfg, &data.noisy, &data.ground_truth)?;
        for (row, t) in report.methods.iter().zip(&mut totals) {
            t[0] += row.errors.trans.median / seeds as f64;
            t[1] += row.errors.angle_deg.median / seeds as f64;
            t[2] += row.errors.axis_deg.median / seeds as f64;
        }
    }
    println!("{:<10} {:>12} {:>12} {:>12}", "method", "trans", "angle_deg", "axis_deg");
    for (name, t) in COMPARE_METHODS.iter().zip(&totals) {
        println!("{name:<10} {:>12.3e} {:>12.4} {:>12.4}", t[0], t[1], t[2]);
    }
    Ok(())
}
