//! Synthetic benchmark tooling: spline ground truth, noise and outliers,
//! error metrics and a linear Kalman baseline.

mod kalman;
mod metrics;
mod noise;
mod spline;

pub use kalman::{kalman_baseline, KalmanTuning, ScalarKalman};
pub use metrics::{evaluate, summarize, ChannelErrors, ErrorReport, Summary};
pub use noise::{add_noise, perturb_samples, AxisNoise, NoiseSpec, Noisy, OutlierMode};
pub use spline::{generate_spline_trajectory, NaturalCubicSpline, SplineSamples, SplineSpec, CONTROL_COUNT};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Identifier of the random generator family, echoed into file headers and
/// reports so runs can be replicated elsewhere.
pub const RNG_ALGORITHM: &str = "chacha8";

pub(crate) fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}
