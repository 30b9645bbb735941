//! Smoothing a noisy trajectory on the dual quaternion manifold and on
//! rotations and translations separately.

use dqfilter::lab::{add_noise, evaluate, generate_spline_trajectory, NoiseSpec, SplineSpec};
use dqfilter::regression::filter_trajectory;
use dqfilter::{FilterConfig, Method, Space};

fn main() -> dqfilter::Result<()> {
    let truth = generate_spline_trajectory(&SplineSpec::random(7, 300))?;
    let noisy = add_noise(&truth, &NoiseSpec { seed: 7, ..NoiseSpec::default() })?;

    let raw = evaluate(&noisy, &truth)?;
    println!("input      trans {:.3e}  axis {:.3} deg", raw.trans.summary.median, raw.axis_deg.summary.median);

    for space in [Space::Split, Space::Dual] {
        for method in [Method::Pca, Method::Wpca, Method::Irls] {
            let out = filter_trajectory(&noisy, space, &FilterConfig::new(19, method))?;
            let e = evaluate(&out, &truth)?;
            println!(
                "{}-{:<5} trans {:.3e}  axis {:.3} deg",
                space.tag(),
                format!("{method:?}").to_lowercase(),
                e.trans.summary.median,
                e.axis_deg.summary.median
            );
        }
    }
    Ok(())
}
