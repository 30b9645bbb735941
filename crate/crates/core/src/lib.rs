pub mod app;
pub mod dual;
pub mod error;
pub mod io;
pub mod manifold;
pub mod quat;
pub mod lab;
pub mod regression;
pub mod trajectory;

pub use dual::{DualNumber, DualQuaternion, RigidPose, ScrewParameters, UnitDualQuaternion};
pub use error::{Error, Result};
pub use manifold::{ManifoldPoint, PoseSpace, TangentAtBase};
pub use quat::{AxisAngle, Quaternion, UnitQuaternion};
pub use regression::{FilterConfig, Method, Space};
pub use trajectory::PoseTrajectory;
