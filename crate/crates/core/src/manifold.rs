//! Exponential and logarithm maps at arbitrary base points.
//!
//! Both maps are obtained from the maps at the identity by left translation:
//!
//! ```text
//! exp_x(s) = x · exp(x⁻¹ s)
//! log_x(q) = x · log(x⁻¹ q)
//! ```
//!
//! Tangent vectors are kept in ambient coordinates at the base (4 for
//! rotations, 8 for poses), so the tangent space at `x` is the linear
//! subspace `{x · p : p pure}`. The logarithm aligns `q` to the hemisphere of
//! `x` first, so it always returns the short branch.

use nalgebra::Vector3;

use crate::dual::{DualQuaternion, UnitDualQuaternion};
use crate::error::{Error, Result};
use crate::quat::{Quaternion, UnitQuaternion};

/// A space of poses with exponential/logarithm maps at every point.
pub trait PoseSpace: Copy {
    /// Number of ambient coordinates of a tangent vector.
    const TANGENT_DIM: usize;

    /// `log_self(q)` in ambient coordinates.
    fn log_at(&self, q: &Self) -> Vec<f64>;

    /// `exp_self(s)`. Any component of `s` outside the tangent space at
    /// `self` is discarded.
    fn exp_at(&self, s: &[f64]) -> Self;

    /// `q` or its antipode, whichever lies on the hemisphere of `self`.
    fn align(&self, q: &Self) -> Self;

    /// Left-invariant geodesic distance, `‖log(self⁻¹ q)‖`.
    fn distance(&self, q: &Self) -> f64;
}

impl PoseSpace for UnitQuaternion {
    const TANGENT_DIM: usize = 4;

    fn log_at(&self, q: &Self) -> Vec<f64> {
        let q = self.align(q);
        if q == *self {
            return vec![0.0; Self::TANGENT_DIM];
        }
        let rel = self.inverse() * q;
        (**self * rel.log()).to_array().to_vec()
    }

    fn exp_at(&self, s: &[f64]) -> Self {
        let local = self.inverse().into_inner() * Quaternion::new(s[0], s[1], s[2], s[3]);
        *self * crate::quat::exp_pure(local.vector())
    }

    fn align(&self, q: &Self) -> Self {
        if self.dot(q) < 0.0 {
            -*q
        } else {
            *q
        }
    }

    fn distance(&self, q: &Self) -> f64 {
        (self.inverse() * self.align(q)).log().norm()
    }
}

impl PoseSpace for UnitDualQuaternion {
    const TANGENT_DIM: usize = 8;

    fn log_at(&self, q: &Self) -> Vec<f64> {
        let q = self.align(q);
        if q == *self {
            return vec![0.0; Self::TANGENT_DIM];
        }
        let rel = self.inverse() * q;
        (**self * rel.log()).to_array().to_vec()
    }

    fn exp_at(&self, s: &[f64]) -> Self {
        let mut c = [0.0; 8];
        c.copy_from_slice(&s[..8]);
        let local = self.inverse().into_inner() * DualQuaternion::from_array(c);
        *self * crate::dual::exp_tangent(local.real.vector(), local.dual.vector())
    }

    fn align(&self, q: &Self) -> Self {
        if self.real.dot(&q.real) < 0.0 {
            -*q
        } else {
            *q
        }
    }

    fn distance(&self, q: &Self) -> f64 {
        (self.inverse() * self.align(q)).log().norm()
    }
}

/// Euclidean space, used for the translation half of the split pose space.
impl PoseSpace for Vector3<f64> {
    const TANGENT_DIM: usize = 3;

    fn log_at(&self, q: &Self) -> Vec<f64> {
        (q - self).iter().copied().collect()
    }

    fn exp_at(&self, s: &[f64]) -> Self {
        self + Vector3::new(s[0], s[1], s[2])
    }

    fn align(&self, q: &Self) -> Self {
        *q
    }

    fn distance(&self, q: &Self) -> f64 {
        (q - self).norm()
    }
}

/// A point of one of the supported pose manifolds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ManifoldPoint {
    /// Rotation only, on the unit quaternions.
    Rotation(UnitQuaternion),
    /// Full pose on the unit dual quaternions.
    Pose(UnitDualQuaternion),
    /// Full pose split into a unit quaternion and a Euclidean translation.
    Split {
        rotation: UnitQuaternion,
        translation: Vector3<f64>,
    },
}

impl ManifoldPoint {
    fn kind(&self) -> &'static str {
        match self {
            ManifoldPoint::Rotation(_) => "rotation",
            ManifoldPoint::Pose(_) => "pose",
            ManifoldPoint::Split { .. } => "split",
        }
    }

    pub fn tangent_dim(&self) -> usize {
        match self {
            ManifoldPoint::Rotation(_) => UnitQuaternion::TANGENT_DIM,
            ManifoldPoint::Pose(_) => UnitDualQuaternion::TANGENT_DIM,
            ManifoldPoint::Split { .. } => UnitQuaternion::TANGENT_DIM + 3,
        }
    }
}

/// A tangent vector together with the point it is attached to.
#[derive(Debug, Clone, PartialEq)]
pub struct TangentAtBase {
    pub base: ManifoldPoint,
    pub coords: Vec<f64>,
}

impl TangentAtBase {
    pub fn zero(base: ManifoldPoint) -> Self {
        Self {
            base,
            coords: vec![0.0; base.tangent_dim()],
        }
    }

    pub fn scale(&self, k: f64) -> Self {
        Self {
            base: self.base,
            coords: self.coords.iter().map(|c| c * k).collect(),
        }
    }

    /// Ambient Euclidean norm of the coordinates.
    pub fn norm(&self) -> f64 {
        self.coords.iter().map(|c| c * c).sum::<f64>().sqrt()
    }
}

fn mismatch(x: &ManifoldPoint, q: &ManifoldPoint) -> Error {
    Error::invalid(format!(
        "points live on different manifolds ({} vs {})",
        x.kind(),
        q.kind()
    ))
}

/// `log_x(q)`, after aligning `q` to the hemisphere of `x`.
pub fn log_at(x: &ManifoldPoint, q: &ManifoldPoint) -> Result<TangentAtBase> {
    let coords = match (x, q) {
        (ManifoldPoint::Rotation(a), ManifoldPoint::Rotation(b)) => a.log_at(b),
        (ManifoldPoint::Pose(a), ManifoldPoint::Pose(b)) => a.log_at(b),
        (
            ManifoldPoint::Split {
                rotation: ra,
                translation: ta,
            },
            ManifoldPoint::Split {
                rotation: rb,
                translation: tb,
            },
        ) => {
            let mut c = ra.log_at(rb);
            c.extend(ta.log_at(tb));
            c
        }
        _ => return Err(mismatch(x, q)),
    };
    Ok(TangentAtBase { base: *x, coords })
}

/// `exp_x(s)`; `s` must be attached to `x`.
pub fn exp_at(x: &ManifoldPoint, s: &TangentAtBase) -> Result<ManifoldPoint> {
    if s.base != *x {
        return Err(Error::invalid("tangent vector is attached to a different base point"));
    }
    if s.coords.len() != x.tangent_dim() {
        return Err(Error::invalid(format!(
            "tangent vector has {} coordinates, expected {}",
            s.coords.len(),
            x.tangent_dim()
        )));
    }
    Ok(match x {
        ManifoldPoint::Rotation(a) => ManifoldPoint::Rotation(a.exp_at(&s.coords)),
        ManifoldPoint::Pose(a) => ManifoldPoint::Pose(a.exp_at(&s.coords)),
        ManifoldPoint::Split {
            rotation,
            translation,
        } => ManifoldPoint::Split {
            rotation: rotation.exp_at(&s.coords[..4]),
            translation: translation.exp_at(&s.coords[4..]),
        },
    })
}

/// Returns `q` or `-q`, whichever has a nonnegative real-part inner product
/// with `reference`. Translations of split points are left alone.
pub fn hemisphere_align(reference: &ManifoldPoint, q: &ManifoldPoint) -> Result<ManifoldPoint> {
    Ok(match (reference, q) {
        (ManifoldPoint::Rotation(a), ManifoldPoint::Rotation(b)) => {
            ManifoldPoint::Rotation(a.align(b))
        }
        (ManifoldPoint::Pose(a), ManifoldPoint::Pose(b)) => ManifoldPoint::Pose(a.align(b)),
        (
            ManifoldPoint::Split { rotation: ra, .. },
            ManifoldPoint::Split {
                rotation: rb,
                translation,
            },
        ) => ManifoldPoint::Split {
            rotation: ra.align(rb),
            translation: *translation,
        },
        _ => return Err(mismatch(reference, q)),
    })
}

/// Geodesic distance under the left-invariant metric. For split points the
/// rotation and translation distances are combined as a product metric.
pub fn geodesic_distance(x: &ManifoldPoint, q: &ManifoldPoint) -> Result<f64> {
    Ok(match (x, q) {
        (ManifoldPoint::Rotation(a), ManifoldPoint::Rotation(b)) => a.distance(b),
        (ManifoldPoint::Pose(a), ManifoldPoint::Pose(b)) => a.distance(b),
        (
            ManifoldPoint::Split {
                rotation: ra,
                translation: ta,
            },
            ManifoldPoint::Split {
                rotation: rb,
                translation: tb,
            },
        ) => ra.distance(rb).hypot(ta.distance(tb)),
        _ => return Err(mismatch(x, q)),
    })
}
