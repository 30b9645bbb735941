//! Linearizing the pose manifold around a base point.

use dqfilter::manifold::{exp_at, geodesic_distance, log_at};
use dqfilter::{AxisAngle, DualQuaternion, ManifoldPoint, RigidPose, UnitDualQuaternion, UnitQuaternion};
use nalgebra::Vector3;

fn main() -> dqfilter::Result<()> {
    let x = UnitDualQuaternion::from_pose(&RigidPose::new(
        UnitQuaternion::from_axis_angle(&AxisAngle::new(Vector3::y(), 0.8)?),
        Vector3::new(1.0, 0.0, 0.0),
    ));
    let step = DualQuaternion::pure(Vector3::new(0.0, 0.0, 0.3), Vector3::new(0.2, 0.1, 0.0)).exp()?;
    // The antipode represents the same pose; log_at picks the short branch.
    let q = -(x * step);

    let (xp, qp) = (ManifoldPoint::Pose(x), ManifoldPoint::Pose(q));
    let s = log_at(&xp, &qp)?;
    println!("log_x(q) = {:.6?}", s.coords);
    println!("distance = {:.6}", geodesic_distance(&xp, &qp)?);

    for k in [0.0, 0.25, 0.5, 0.75, 1.0] {
        if let ManifoldPoint::Pose(p) = exp_at(&xp, &s.scale(k))? {
            println!("k = {k:.2}: t = {:.6?}", p.translation().as_slice());
        }
    }

    // Plain exp/log at the identity.
    let t = step.log();
    println!("log(step) = {:.6?}", t.to_array());
    println!("exp(log(step)) = {:.6?}", t.exp()?.to_array());
    Ok(())
}
