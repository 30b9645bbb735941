//! Quaternion algebra and rotations.
//!
//! Components are stored scalar-first as `(w, x, y, z)` everywhere in this
//! crate, including every serialized form.

use std::f64::consts::PI;
use std::ops::{Add, Deref, Mul, Neg, Sub};

use nalgebra::{Matrix3, Vector3};

use crate::error::{Error, Result};

/// Tolerance on `|‖q‖ - 1|` for values accepted as unit quaternions.
pub const UNIT_TOLERANCE: f64 = 1e-9;

/// Tolerance on the scalar part of a quaternion treated as pure.
pub const PURE_TOLERANCE: f64 = 1e-9;

/// Below this `sin φ` the logarithm switches to its Taylor expansion.
const LOG_SMALL_ANGLE: f64 = 1e-8;

/// Products of unit quaternions are re-normalized after this many factors.
pub const RENORMALIZE_EVERY: usize = 16;

/// A quaternion `w + xi + yj + zk` over the reals.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Self { w, x, y, z }
    }

    pub const fn identity() -> Self {
        Self::new(1.0, 0.0, 0.0, 0.0)
    }

    pub const fn zero() -> Self {
        Self::new(0.0, 0.0, 0.0, 0.0)
    }

    pub fn from_parts(scalar: f64, vector: Vector3<f64>) -> Self {
        Self::new(scalar, vector.x, vector.y, vector.z)
    }

    /// The pure quaternion `xi + yj + zk` of a point.
    pub fn pure(v: Vector3<f64>) -> Self {
        Self::from_parts(0.0, v)
    }

    pub fn from_array(a: [f64; 4]) -> Self {
        Self::new(a[0], a[1], a[2], a[3])
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    pub fn scalar(&self) -> f64 {
        self.w
    }

    pub fn vector(&self) -> Vector3<f64> {
        Vector3::new(self.x, self.y, self.z)
    }

    /// Negates the vector part.
    pub fn conjugate(&self) -> Self {
        Self::new(self.w, -self.x, -self.y, -self.z)
    }

    /// Euclidean inner product on the four coordinates.
    pub fn dot(&self, other: &Self) -> f64 {
        self.w * other.w + self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn norm_squared(&self) -> f64 {
        self.dot(self)
    }

    pub fn norm(&self) -> f64 {
        self.norm_squared().sqrt()
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }

    pub fn is_pure(&self, tol: f64) -> bool {
        self.w.abs() <= tol
    }

    /// Exponential of a pure quaternion `[0, φv]`, giving `[cos φ, sin φ v]`.
    pub fn exp(&self) -> Result<UnitQuaternion> {
        if !self.is_pure(PURE_TOLERANCE) {
            return Err(Error::invalid(format!(
                "quaternion exponential needs a pure quaternion, scalar part is {}",
                self.w
            )));
        }
        Ok(exp_pure(self.vector()))
    }
}

/// `[cos φ, sin φ · a/φ]` with `φ = ‖a‖`.
pub(crate) fn exp_pure(a: Vector3<f64>) -> UnitQuaternion {
    let phi = a.norm();
    let q = Quaternion::from_parts(phi.cos(), a * sinc(phi));
    UnitQuaternion(q)
}

/// `sin(x)/x`, continuous at zero.
pub(crate) fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-8 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        self.scale(-1.0)
    }
}

impl Mul<f64> for Quaternion {
    type Output = Quaternion;
    fn mul(self, s: f64) -> Quaternion {
        self.scale(s)
    }
}

/// Hamilton product.
impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, o: Quaternion) -> Quaternion {
        Quaternion::new(
            self.w * o.w - self.x * o.x - self.y * o.y - self.z * o.z,
            self.w * o.x + self.x * o.w + self.y * o.z - self.z * o.y,
            self.w * o.y - self.x * o.z + self.y * o.w + self.z * o.x,
            self.w * o.z + self.x * o.y - self.y * o.x + self.z * o.w,
        )
    }
}

/// A quaternion of unit norm, representing a rotation (up to sign).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitQuaternion(Quaternion);

impl UnitQuaternion {
    pub const fn identity() -> Self {
        Self(Quaternion::identity())
    }

    /// Normalizes `q`. Fails on a zero (or non-finite) quaternion.
    pub fn new_normalize(q: Quaternion) -> Result<Self> {
        let n = q.norm();
        if !(n.is_finite() && n > 0.0) {
            return Err(Error::invalid("cannot normalize a zero quaternion"));
        }
        Ok(Self(q.scale(1.0 / n)))
    }

    /// Accepts `q` only if its norm is within `tol` of one, then normalizes.
    pub fn try_new(q: Quaternion, tol: f64) -> Result<Self> {
        let n = q.norm();
        if (n - 1.0).abs() > tol {
            return Err(Error::invalid(format!(
                "quaternion norm {n} is not within {tol} of 1"
            )));
        }
        Self::new_normalize(q)
    }

    /// Wraps `q` without checking its norm.
    pub const fn new_unchecked(q: Quaternion) -> Self {
        Self(q)
    }

    pub fn into_inner(self) -> Quaternion {
        self.0
    }

    pub fn from_axis_angle(aa: &AxisAngle) -> Self {
        let half = 0.5 * aa.angle;
        Self(Quaternion::from_parts(half.cos(), aa.axis * half.sin()))
    }

    /// Inverse of a unit quaternion, i.e. its conjugate.
    pub fn inverse(&self) -> Self {
        Self(self.0.conjugate())
    }

    /// Representative with nonnegative scalar part.
    pub fn canonical(&self) -> Self {
        if self.0.w < 0.0 {
            Self(-self.0)
        } else {
            *self
        }
    }

    pub fn renormalize(&self) -> Self {
        Self(self.0.scale(1.0 / self.0.norm()))
    }

    /// Rotates `u` by the sandwich product `r p r̄`.
    pub fn rotate_point(&self, u: &Vector3<f64>) -> Vector3<f64> {
        (self.0 * Quaternion::pure(*u) * self.0.conjugate()).vector()
    }

    /// Principal logarithm `[0, φv]` with `φ = atan2(‖vec‖, w) ∈ [0, π]`.
    ///
    /// No hemisphere flip is applied, so `log(-r)` is the antipodal branch of
    /// `log(r)`. Callers that want the short branch align first.
    pub fn log(&self) -> Quaternion {
        let v = self.0.vector();
        let s = v.norm();
        let phi = s.atan2(self.0.w);
        if s < LOG_SMALL_ANGLE {
            if self.0.w >= 0.0 {
                // φ/sin φ ≈ 1 + φ²/6 and sin φ ≈ s
                return Quaternion::pure(v * (1.0 + phi * phi / 6.0));
            }
            if s == 0.0 {
                // r = -1: every axis is a valid logarithm.
                return Quaternion::new(0.0, PI, 0.0, 0.0);
            }
        }
        Quaternion::pure(v * (phi / s))
    }

    /// Rotation angle in `[0, 2π]` and unit axis; the axis is `(1,0,0)` for
    /// the identity.
    pub fn to_axis_angle(&self) -> (Vector3<f64>, f64) {
        let v = self.0.vector();
        let s = v.norm();
        let angle = 2.0 * s.atan2(self.0.w);
        if s == 0.0 {
            (Vector3::x(), angle)
        } else {
            (v / s, angle)
        }
    }

    pub fn rotation_matrix(&self) -> Matrix3<f64> {
        let Quaternion { w, x, y, z } = self.0;
        Matrix3::new(
            1.0 - 2.0 * (y * y + z * z),
            2.0 * (x * y - w * z),
            2.0 * (x * z + w * y),
            2.0 * (x * y + w * z),
            1.0 - 2.0 * (x * x + z * z),
            2.0 * (y * z - w * x),
            2.0 * (x * z - w * y),
            2.0 * (y * z + w * x),
            1.0 - 2.0 * (x * x + y * y),
        )
    }

    /// Left-to-right product of a chain of rotations, re-normalizing every
    /// [`RENORMALIZE_EVERY`] factors.
    pub fn product<I: IntoIterator<Item = UnitQuaternion>>(factors: I) -> Self {
        let mut acc = Self::identity();
        for (i, f) in factors.into_iter().enumerate() {
            acc = acc * f;
            if (i + 1) % RENORMALIZE_EVERY == 0 {
                acc = acc.renormalize();
            }
        }
        acc
    }
}

impl Deref for UnitQuaternion {
    type Target = Quaternion;
    fn deref(&self) -> &Quaternion {
        &self.0
    }
}

impl Mul for UnitQuaternion {
    type Output = UnitQuaternion;
    fn mul(self, o: UnitQuaternion) -> UnitQuaternion {
        UnitQuaternion(self.0 * o.0)
    }
}

impl Neg for UnitQuaternion {
    type Output = UnitQuaternion;
    fn neg(self) -> UnitQuaternion {
        UnitQuaternion(-self.0)
    }
}

/// Rotation by `angle` radians about a unit `axis`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisAngle {
    axis: Vector3<f64>,
    angle: f64,
}

impl AxisAngle {
    /// The angle is wrapped into `(-π, π]`; the axis must already be unit.
    pub fn new(axis: Vector3<f64>, angle: f64) -> Result<Self> {
        let n = axis.norm();
        if !((n - 1.0).abs() <= UNIT_TOLERANCE) {
            return Err(Error::invalid(format!("rotation axis has norm {n}")));
        }
        if !angle.is_finite() {
            return Err(Error::invalid("rotation angle is not finite"));
        }
        Ok(Self {
            axis,
            angle: wrap_angle(angle),
        })
    }

    pub fn axis(&self) -> Vector3<f64> {
        self.axis
    }

    pub fn angle(&self) -> f64 {
        self.angle
    }
}

/// Wraps into `(-π, π]`.
pub fn wrap_angle(a: f64) -> f64 {
    let tau = 2.0 * PI;
    let mut r = a.rem_euclid(tau);
    if r > PI {
        r -= tau;
    }
    r
}
