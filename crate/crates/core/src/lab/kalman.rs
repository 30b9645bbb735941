use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use crate::dual::RigidPose;
use crate::error::{Error, Result};
use crate::quat::{Quaternion, UnitQuaternion};
use crate::trajectory::PoseTrajectory;

/// Random-walk Kalman filter on one scalar signal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalarKalman {
    process: f64,
    measurement: f64,
    state: f64,
    variance: f64,
    gain: f64,
}

impl ScalarKalman {
    /// Starts at the first measurement with variance equal to the
    /// measurement noise.
    pub fn new(process: f64, measurement: f64, first: f64) -> Self {
        Self {
            process,
            measurement,
            state: first,
            variance: measurement,
            gain: 0.0,
        }
    }

    pub fn update(&mut self, z: f64) -> f64 {
        let predicted = self.variance + self.process;
        self.gain = predicted / (predicted + self.measurement);
        self.state += self.gain * (z - self.state);
        self.variance = (1.0 - self.gain) * predicted;
        self.state
    }

    pub fn state(&self) -> f64 {
        self.state
    }

    /// Gain used by the most recent update.
    pub fn gain(&self) -> f64 {
        self.gain
    }

    pub fn variance(&self) -> f64 {
        self.variance
    }
}

/// Process and measurement noise variances of one channel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KalmanTuning {
    pub process: f64,
    pub measurement: f64,
}

impl KalmanTuning {
    pub const ROTATION: Self = Self {
        process: 0.5,
        measurement: 2.0,
    };
    pub const TRANSLATION: Self = Self {
        process: 0.2,
        measurement: 1.0,
    };

    fn validate(&self) -> Result<()> {
        if self.process > 0.0 && self.measurement > 0.0 && self.process.is_finite() && self.measurement.is_finite() {
            Ok(())
        } else {
            Err(Error::invalid(format!(
                "Kalman covariances must be positive, got ({}, {})",
                self.process, self.measurement
            )))
        }
    }
}

/// Causal baseline: an independent random-walk filter on each quaternion
/// and translation component. Each measured quaternion is first flipped
/// into the hemisphere of the previous estimate; the filtered quaternion is
/// normalized.
pub fn kalman_baseline(traj: &PoseTrajectory, rotation: KalmanTuning, translation: KalmanTuning) -> Result<PoseTrajectory> {
    rotation.validate()?;
    translation.validate()?;
    let Some(first) = traj.poses.first() else {
        return Ok(PoseTrajectory::default());
    };
    let q0 = first.rotation.to_array();
    let mut qf: [ScalarKalman; 4] = std::array::from_fn(|i| ScalarKalman::new(rotation.process, rotation.measurement, q0[i]));
    let mut tf: [ScalarKalman; 3] =
        std::array::from_fn(|i| ScalarKalman::new(translation.process, translation.measurement, first.translation[i]));

    let mut out = Vec::with_capacity(traj.len());
    for p in traj.iter() {
        let prev = Quaternion::from_array(std::array::from_fn(|i| qf[i].state()));
        let mut z = p.rotation.into_inner();
        if z.dot(&prev) < 0.0 {
            z = -z;
        }
        let zq = z.to_array();
        let q = Quaternion::from_array(std::array::from_fn(|i| qf[i].update(zq[i])));
        let t = Vector3::from_fn(|i, _| tf[i].update(p.translation[i]));
        let r = UnitQuaternion::new_normalize(q).unwrap_or(p.rotation);
        out.push(RigidPose::new(r, t));
    }
    Ok(PoseTrajectory::new(out))
}
