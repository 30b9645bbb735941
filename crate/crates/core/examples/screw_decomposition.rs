//! Every rigid motion is a screw: rotation about a line plus a slide along it.

use dqfilter::{AxisAngle, RigidPose, UnitDualQuaternion, UnitQuaternion};
use nalgebra::Vector3;

fn main() -> dqfilter::Result<()> {
    let rotation = UnitQuaternion::from_axis_angle(&AxisAngle::new(Vector3::new(0.0, 0.6, 0.8), 1.2)?);
    let pose = RigidPose::new(rotation, Vector3::new(0.5, -1.0, 2.0));
    let q = UnitDualQuaternion::from_pose(&pose);
    println!("dual quaternion: {:.6?}", q.to_array());

    let screw = q.to_screw();
    println!("direction {:.6?}", screw.direction.as_slice());
    println!("moment    {:.6?}", screw.moment.as_slice());
    println!("point on axis {:.6?}", screw.axis_point().as_slice());
    println!("angle {:.6} rad, pitch {:.6}", screw.angle, screw.pitch);
    println!("tᵀv = {:.6}", pose.translation.dot(&screw.direction));

    let back = UnitDualQuaternion::from_screw(&screw)?;
    let u = Vector3::new(1.0, 2.0, 3.0);
    println!("pose moves u to  {:.6?}", pose.transform_point(&u).as_slice());
    println!("screw moves u to {:.6?}", back.transform_point(&u).as_slice());
    println!("homogeneous matrix:\n{:.6}", q.to_matrix());
    Ok(())
}
