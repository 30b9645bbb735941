use serde::{Deserialize, Serialize};

use crate::dual::UnitDualQuaternion;
use crate::error::{Error, Result};
use crate::quat::UnitQuaternion;
use crate::trajectory::PoseTrajectory;

/// Summary statistics of one error channel. Quartiles use linear
/// interpolation between order statistics; `std` is the population
/// standard deviation.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Summary {
    pub median: f64,
    pub mean: f64,
    pub std: f64,
    pub q1: f64,
    pub q3: f64,
    pub min: f64,
    pub max: f64,
}

pub fn summarize(values: &[f64]) -> Summary {
    if values.is_empty() {
        return Summary::default();
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let quantile = |p: f64| {
        let pos = p * (sorted.len() - 1) as f64;
        let lo = pos.floor() as usize;
        let hi = pos.ceil() as usize;
        sorted[lo] + (pos - lo as f64) * (sorted[hi] - sorted[lo])
    };
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    Summary {
        median: quantile(0.5),
        mean,
        std: var.sqrt(),
        q1: quantile(0.25),
        q3: quantile(0.75),
        min: sorted[0],
        max: sorted[sorted.len() - 1],
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChannelErrors {
    pub values: Vec<f64>,
    pub summary: Summary,
}

impl ChannelErrors {
    fn new(values: Vec<f64>) -> Self {
        let summary = summarize(&values);
        Self { values, summary }
    }
}

/// Per-sample errors of an estimate against ground truth.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorReport {
    /// Rotation angle of `r_est⁻¹ r_gt` in degrees.
    pub angle_deg: ChannelErrors,
    /// Angle between the rotation axes in degrees.
    pub axis_deg: ChannelErrors,
    /// Euclidean distance of the translations.
    pub trans: ChannelErrors,
}

impl ErrorReport {
    pub fn len(&self) -> usize {
        self.trans.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trans.values.is_empty()
    }
}

/// `2 arccos |⟨a, b⟩|` in degrees, computed through `atan2` so it stays
/// accurate for small angles.
pub(crate) fn angle_error_deg(a: &UnitQuaternion, b: &UnitQuaternion) -> f64 {
    let d = a.inverse() * *b;
    2.0 * d.vector().norm().atan2(d.w.abs()).to_degrees()
}

pub(crate) fn axis_error_deg(a: &UnitQuaternion, b: &UnitQuaternion) -> f64 {
    let va = UnitDualQuaternion::from_rotation(*a).to_screw().direction;
    let vb = UnitDualQuaternion::from_rotation(*b).to_screw().direction;
    va.cross(&vb).norm().atan2(va.dot(&vb).abs()).to_degrees()
}

pub fn evaluate(estimate: &PoseTrajectory, ground_truth: &PoseTrajectory) -> Result<ErrorReport> {
    if estimate.len() != ground_truth.len() {
        return Err(Error::LengthMismatch {
            estimate: estimate.len(),
            ground_truth: ground_truth.len(),
        });
    }
    let n = estimate.len();
    let (mut angle, mut axis, mut trans) = (Vec::with_capacity(n), Vec::with_capacity(n), Vec::with_capacity(n));
    for (e, g) in estimate.iter().zip(ground_truth.iter()) {
        angle.push(angle_error_deg(&e.rotation, &g.rotation));
        axis.push(axis_error_deg(&e.rotation, &g.rotation));
        trans.push((e.translation - g.translation).norm());
    }
    Ok(ErrorReport {
        angle_deg: ChannelErrors::new(angle),
        axis_deg: ChannelErrors::new(axis),
        trans: ChannelErrors::new(trans),
    })
}
