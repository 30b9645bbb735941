//! generate → filter → evaluate through trajectory files, as the command
//! line tool does it.

use dqfilter::app::{evaluate, filter, generate, FilterMethod, RunConfig};
use dqfilter::io::TrajectoryFile;

fn main() -> dqfilter::Result<()> {
    let dir = std::env::temp_dir().join("dqfilter-example");
    std::fs::create_dir_all(&dir).map_err(|e| dqfilter::Error::Io { path: dir.clone(), source: e })?;

    let cfg = RunConfig { seed: 3, samples: 200, ..RunConfig::default() };
    let data = generate(&cfg)?;
    data.ground_truth.write(&dir.join("gt.traj"))?;
    data.noisy.write(&dir.join("noisy.traj"))?;
    println!("outliers at {}", data.noisy.meta("outliers").unwrap_or(""));

    let noisy = TrajectoryFile::read(&dir.join("noisy.traj"))?;
    let gt = TrajectoryFile::read(&dir.join("gt.traj"))?;
    for method in [FilterMethod::Irls, FilterMethod::Kalman] {
        let run = RunConfig { method, ..cfg.clone() };
        let out = filter(&run, &noisy)?;
        let path = dir.join(format!("{method:?}.traj").to_lowercase());
        out.write(&path)?;
        let report = evaluate(&out, "filtered", &gt, "gt.traj")?;
        println!(
            "{method:?}: median trans {:.3e}, axis {:.3} deg -> {}",
            report.errors.trans.summary.median,
            report.errors.axis_deg.summary.median,
            path.display()
        );
    }
    println!("first lines of the noisy file:");
    for line in std::fs::read_to_string(dir.join("noisy.traj")).unwrap_or_default().lines().take(14) {
        println!("  {}", &line[..line.len().min(100)]);
    }
    Ok(())
}
