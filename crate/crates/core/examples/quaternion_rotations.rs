//! Rotating points with unit quaternions, and the exp/log pair.

use dqfilter::{AxisAngle, Quaternion, UnitQuaternion};
use nalgebra::Vector3;

fn main() -> dqfilter::Result<()> {
    let quarter = UnitQuaternion::from_axis_angle(&AxisAngle::new(Vector3::z(), std::f64::consts::FRAC_PI_2)?);
    let p = Vector3::new(1.0, 0.0, 0.0);
    println!("q = {:?}", quarter.to_array());
    println!("q · (1,0,0) · q̄ = {:.6?}", quarter.rotate_point(&p).as_slice());
    println!("-q gives the same point: {:.6?}", (-quarter).rotate_point(&p).as_slice());

    // Composition applies the right factor first.
    let tilt = UnitQuaternion::from_axis_angle(&AxisAngle::new(Vector3::x(), 0.3)?);
    let both = quarter * tilt;
    println!("(q ∘ tilt) p = {:.6?}", both.rotate_point(&p).as_slice());

    // exp maps a pure quaternion (half-angle times axis) to a rotation.
    let t = Quaternion::pure(Vector3::new(0.1, -0.4, 0.2));
    let r = t.exp()?;
    let (axis, angle) = r.to_axis_angle();
    println!("exp(t) rotates {angle:.6} rad about {:.6?}", axis.as_slice());
    println!("log(exp(t)) = {:?}", r.log().to_array());
    println!("rotation matrix:\n{:.6}", r.rotation_matrix());
    Ok(())
}
