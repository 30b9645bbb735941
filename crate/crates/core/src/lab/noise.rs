use nalgebra::Vector3;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::spline::SplineSamples;
use crate::error::{Error, Result};
use crate::trajectory::PoseTrajectory;

/// How the outlier perturbation combines with the base noise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutlierMode {
    /// Outlier noise is added on top of the base noise.
    #[default]
    Additive,
    /// Outlier samples get only the outlier noise.
    Replace,
}

/// Where the axis perturbation is applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AxisNoise {
    /// Perturb the unit axis, then normalize again.
    #[default]
    Normalized,
    /// Perturb the raw interpolated axis before its normalization.
    Raw,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseSpec {
    /// Half-width of the uniform base noise.
    pub sigma: f64,
    pub outlier_fraction: f64,
    pub outlier_sigma: f64,
    pub seed: u64,
    #[serde(default)]
    pub outlier_mode: OutlierMode,
    #[serde(default)]
    pub axis_noise: AxisNoise,
}

impl Default for NoiseSpec {
    fn default() -> Self {
        Self {
            sigma: 0.02,
            outlier_fraction: 0.05,
            outlier_sigma: 0.2,
            seed: 0,
            outlier_mode: OutlierMode::default(),
            axis_noise: AxisNoise::default(),
        }
    }
}

impl NoiseSpec {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.outlier_fraction) {
            return Err(Error::Config(format!(
                "outlier fraction must lie in [0, 1], got {}",
                self.outlier_fraction
            )));
        }
        if !(self.sigma >= 0.0 && self.sigma.is_finite() && self.outlier_sigma >= 0.0 && self.outlier_sigma.is_finite()) {
            return Err(Error::Config("noise half-widths must be finite and non-negative".into()));
        }
        Ok(())
    }

    /// Number of outliers for `n` samples, rounded to nearest.
    pub fn outlier_count(&self, n: usize) -> usize {
        ((self.outlier_fraction * n as f64).round() as usize).min(n)
    }
}

/// A perturbed trajectory together with the sorted outlier indices.
#[derive(Debug, Clone, PartialEq)]
pub struct Noisy {
    pub trajectory: PoseTrajectory,
    pub outliers: Vec<usize>,
}

/// Seven uniform offsets: angle, three axis components, three translation
/// components.
struct Offsets {
    angle: f64,
    axis: Vector3<f64>,
    trans: Vector3<f64>,
}

impl Offsets {
    fn draw(rng: &mut ChaCha8Rng, half_width: f64) -> Self {
        // Always consume the same number of draws so the stream layout does
        // not depend on the half-width.
        let mut u = || half_width * (2.0 * rng.random::<f64>() - 1.0);
        Self {
            angle: u(),
            axis: Vector3::new(u(), u(), u()),
            trans: Vector3::new(u(), u(), u()),
        }
    }

    fn add(&mut self, o: &Offsets) {
        self.angle += o.angle;
        self.axis += o.axis;
        self.trans += o.trans;
    }
}

/// Perturbs sampled channels. Base noise and outlier noise come from two
/// separate streams of the same seed, so the base noise does not change
/// when the outlier settings do.
pub fn perturb_samples(samples: &SplineSamples, spec: &NoiseSpec) -> Result<Noisy> {
    spec.validate()?;
    let n = samples.len();
    let mut base = super::rng(spec.seed, 1);
    let mut extra = super::rng(spec.seed, 2);

    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut extra);
    let mut outliers = order[..spec.outlier_count(n)].to_vec();
    outliers.sort_unstable();
    let mut is_outlier = vec![false; n];
    for &i in &outliers {
        is_outlier[i] = true;
    }

    let mut out = samples.clone();
    for k in 0..n {
        let mut off = Offsets::draw(&mut base, spec.sigma);
        if is_outlier[k] {
            let o = Offsets::draw(&mut extra, spec.outlier_sigma);
            match spec.outlier_mode {
                OutlierMode::Additive => off.add(&o),
                OutlierMode::Replace => off = o,
            }
        }
        out.angles[k] += off.angle;
        out.translations[k] += off.trans;
        if off.axis != Vector3::zeros() {
            let axis = match spec.axis_noise {
                AxisNoise::Normalized => samples.axes[k].normalize(),
                AxisNoise::Raw => samples.axes[k],
            };
            out.axes[k] = axis + off.axis;
        }
    }
    Ok(Noisy {
        trajectory: out.to_trajectory(),
        outliers,
    })
}

/// Adds uniform noise and outliers to every pose's angle, axis and
/// translation. The axes of a trajectory are already unit, so both
/// [`AxisNoise`] modes coincide here.
pub fn add_noise(traj: &PoseTrajectory, spec: &NoiseSpec) -> Result<PoseTrajectory> {
    if spec.sigma == 0.0 && spec.outlier_count(traj.len()) == 0 {
        spec.validate()?;
        return Ok(traj.clone());
    }
    Ok(perturb_samples(&SplineSamples::from_trajectory(traj), spec)?.trajectory)
}
