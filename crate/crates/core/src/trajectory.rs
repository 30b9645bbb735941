//! Ordered pose sequences.

use nalgebra::Vector3;

use crate::dual::{RigidPose, UnitDualQuaternion};
use crate::quat::UnitQuaternion;

/// A uniformly sampled sequence of poses; the sample index is the position
/// in the sequence.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PoseTrajectory {
    pub poses: Vec<RigidPose>,
}

impl PoseTrajectory {
    pub fn new(poses: Vec<RigidPose>) -> Self {
        Self { poses }
    }

    pub fn from_dual(dqs: &[UnitDualQuaternion]) -> Self {
        Self::new(
            dqs.iter()
                .map(|q| RigidPose::new(q.rotation(), q.translation()))
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.poses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poses.is_empty()
    }

    pub fn to_dual(&self) -> Vec<UnitDualQuaternion> {
        self.poses.iter().map(UnitDualQuaternion::from_pose).collect()
    }

    pub fn rotations(&self) -> Vec<UnitQuaternion> {
        self.poses.iter().map(|p| p.rotation).collect()
    }

    pub fn translations(&self) -> Vec<Vector3<f64>> {
        self.poses.iter().map(|p| p.translation).collect()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, RigidPose> {
        self.poses.iter()
    }
}

impl FromIterator<RigidPose> for PoseTrajectory {
    fn from_iter<I: IntoIterator<Item = RigidPose>>(iter: I) -> Self {
        Self::new(iter.into_iter().collect())
    }
}
