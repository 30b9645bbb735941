//! Dual numbers, dual quaternions and rigid displacements.
//!
//! A unit dual quaternion `Q = r + εs` encodes the displacement "rotate by
//! `r`, then translate by `t`" with `s = ½ t r`. The eight coordinates are
//! ordered `(r.w, r.x, r.y, r.z, s.w, s.x, s.y, s.z)`.

use std::ops::{Add, Deref, Mul, Neg, Sub};

use nalgebra::{Matrix4, Vector3};

use crate::error::{Error, Result};
use crate::quat::{exp_pure, sinc, Quaternion, UnitQuaternion, PURE_TOLERANCE, UNIT_TOLERANCE};

/// Tolerance for accepting externally supplied unit dual quaternions.
pub const INPUT_TOLERANCE: f64 = 1e-6;

/// Below this `sin(θ/2)` a displacement is treated as a pure translation
/// when extracting screw parameters.
const SCREW_SMALL_ANGLE: f64 = 1e-7;

/// Below this rotation half-angle the exponential uses the screw closed form
/// with Taylor coefficients instead of the cubic polynomial.
const EXP_POLY_MIN_ANGLE: f64 = 1e-6;

/// `r + εs` with `ε² = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DualNumber {
    pub re: f64,
    pub du: f64,
}

impl DualNumber {
    pub const fn new(re: f64, du: f64) -> Self {
        Self { re, du }
    }

    /// `r - εs`.
    pub fn conjugate(&self) -> Self {
        Self::new(self.re, -self.du)
    }

    /// `sin φ + ε φ_ε cos φ`.
    pub fn sin(&self) -> Self {
        Self::new(self.re.sin(), self.du * self.re.cos())
    }

    /// `cos φ - ε φ_ε sin φ`.
    pub fn cos(&self) -> Self {
        Self::new(self.re.cos(), -self.du * self.re.sin())
    }
}

impl Mul for DualNumber {
    type Output = DualNumber;
    fn mul(self, o: DualNumber) -> DualNumber {
        DualNumber::new(self.re * o.re, self.re * o.du + self.du * o.re)
    }
}

impl Add for DualNumber {
    type Output = DualNumber;
    fn add(self, o: DualNumber) -> DualNumber {
        DualNumber::new(self.re + o.re, self.du + o.du)
    }
}

impl Sub for DualNumber {
    type Output = DualNumber;
    fn sub(self, o: DualNumber) -> DualNumber {
        DualNumber::new(self.re - o.re, self.du - o.du)
    }
}

/// A dual quaternion `r + εs`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DualQuaternion {
    pub real: Quaternion,
    pub dual: Quaternion,
}

impl DualQuaternion {
    pub const fn new(real: Quaternion, dual: Quaternion) -> Self {
        Self { real, dual }
    }

    pub const fn identity() -> Self {
        Self::new(Quaternion::identity(), Quaternion::zero())
    }

    pub const fn zero() -> Self {
        Self::new(Quaternion::zero(), Quaternion::zero())
    }

    /// The pure dual quaternion `[0, a] + ε[0, b]`.
    pub fn pure(a: Vector3<f64>, b: Vector3<f64>) -> Self {
        Self::new(Quaternion::pure(a), Quaternion::pure(b))
    }

    pub fn from_array(c: [f64; 8]) -> Self {
        Self::new(
            Quaternion::new(c[0], c[1], c[2], c[3]),
            Quaternion::new(c[4], c[5], c[6], c[7]),
        )
    }

    pub fn to_array(self) -> [f64; 8] {
        let r = self.real;
        let s = self.dual;
        [r.w, r.x, r.y, r.z, s.w, s.x, s.y, s.z]
    }

    pub fn scale(&self, k: f64) -> Self {
        Self::new(self.real.scale(k), self.dual.scale(k))
    }

    /// `r̄ + εs̄`.
    pub fn quaternion_conjugate(&self) -> Self {
        Self::new(self.real.conjugate(), self.dual.conjugate())
    }

    /// `r - εs`.
    pub fn dual_conjugate(&self) -> Self {
        Self::new(self.real, -self.dual)
    }

    /// `r̄ - εs̄`, used by the point-transform sandwich.
    pub fn combined_conjugate(&self) -> Self {
        Self::new(self.real.conjugate(), -self.dual.conjugate())
    }

    /// Euclidean inner product on all eight coordinates.
    pub fn dot(&self, o: &Self) -> f64 {
        self.real.dot(&o.real) + self.dual.dot(&o.dual)
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn is_pure(&self, tol: f64) -> bool {
        self.real.is_pure(tol) && self.dual.is_pure(tol)
    }

    /// `(|‖r‖ - 1|, r s̄ + s r̄)`. The second quantity is real; its scalar
    /// value `2⟨r, s⟩` is returned.
    pub fn unit_residuals(&self) -> (f64, f64) {
        let c = self.real * self.dual.conjugate() + self.dual * self.real.conjugate();
        ((self.real.norm() - 1.0).abs(), c.w)
    }

    /// Exponential of a pure dual quaternion.
    pub fn exp(&self) -> Result<UnitDualQuaternion> {
        if !self.is_pure(PURE_TOLERANCE) {
            return Err(Error::invalid(format!(
                "dual quaternion exponential needs a pure argument, scalar parts are ({}, {})",
                self.real.w, self.dual.w
            )));
        }
        Ok(exp_tangent(self.real.vector(), self.dual.vector()))
    }
}

/// Exponential of the pure dual quaternion `[0,a] + ε[0,b]`.
pub(crate) fn exp_tangent(a: Vector3<f64>, b: Vector3<f64>) -> UnitDualQuaternion {
    let omega = a.norm();
    if omega < EXP_POLY_MIN_ANGLE {
        return exp_screw(a, b);
    }
    let t = DualQuaternion::pure(a, b);
    let t2 = t * t;
    let t3 = t2 * t;
    let (s, c) = omega.sin_cos();
    let c0 = 0.5 * (2.0 * c + omega * s);
    let c1 = -(omega * c - 3.0 * s) / (2.0 * omega);
    let c2 = s / (2.0 * omega);
    let c3 = -(omega * c - s) / (2.0 * omega.powi(3));
    let e = DualQuaternion::identity().scale(c0) + t.scale(c1) + t2.scale(c2) + t3.scale(c3);
    UnitDualQuaternion(e)
}

/// `exp([0,a] + ε[0,b])` through the screw form `[cos(Θ/2), sin(Θ/2) V]`,
/// written with coefficients that stay finite as `‖a‖ → 0`.
pub(crate) fn exp_screw(a: Vector3<f64>, b: Vector3<f64>) -> UnitDualQuaternion {
    let h = a.norm();
    let sc = sinc(h);
    let ab = a.dot(&b);
    // (cos h - sinc h) / h²
    let g = if h < 1e-2 {
        let h2 = h * h;
        -1.0 / 3.0 + h2 / 30.0 - h2 * h2 / 840.0
    } else {
        (h.cos() - sc) / (h * h)
    };
    let real = *exp_pure(a);
    let dual = Quaternion::from_parts(-ab * sc, b * sc + a * (ab * g));
    UnitDualQuaternion(DualQuaternion::new(real, dual))
}

impl Add for DualQuaternion {
    type Output = DualQuaternion;
    fn add(self, o: DualQuaternion) -> DualQuaternion {
        DualQuaternion::new(self.real + o.real, self.dual + o.dual)
    }
}

impl Sub for DualQuaternion {
    type Output = DualQuaternion;
    fn sub(self, o: DualQuaternion) -> DualQuaternion {
        DualQuaternion::new(self.real - o.real, self.dual - o.dual)
    }
}

impl Neg for DualQuaternion {
    type Output = DualQuaternion;
    fn neg(self) -> DualQuaternion {
        self.scale(-1.0)
    }
}

impl Mul for DualQuaternion {
    type Output = DualQuaternion;
    fn mul(self, o: DualQuaternion) -> DualQuaternion {
        DualQuaternion::new(
            self.real * o.real,
            self.real * o.dual + self.dual * o.real,
        )
    }
}

/// Rotation followed by translation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RigidPose {
    pub rotation: UnitQuaternion,
    pub translation: Vector3<f64>,
}

impl RigidPose {
    pub fn new(rotation: UnitQuaternion, translation: Vector3<f64>) -> Self {
        Self {
            rotation,
            translation,
        }
    }

    pub fn identity() -> Self {
        Self::new(UnitQuaternion::identity(), Vector3::zeros())
    }

    pub fn transform_point(&self, u: &Vector3<f64>) -> Vector3<f64> {
        self.rotation.rotate_point(u) + self.translation
    }
}

/// Screw-motion parameters of a displacement: rotation by `angle` about the
/// line with unit `direction` and Plücker `moment`, combined with a
/// translation by `pitch` along it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScrewParameters {
    pub direction: Vector3<f64>,
    pub moment: Vector3<f64>,
    pub angle: f64,
    pub pitch: f64,
}

impl ScrewParameters {
    /// Dual half-angle `Θ/2 = θ/2 + ε θ_ε/2`.
    pub fn half_dual_angle(&self) -> DualNumber {
        DualNumber::new(0.5 * self.angle, 0.5 * self.pitch)
    }

    /// A point of the screw axis (the one closest to the origin).
    pub fn axis_point(&self) -> Vector3<f64> {
        self.direction.cross(&self.moment)
    }
}

/// A dual quaternion satisfying both unit constraints
/// `r r̄ = 1` and `r s̄ + s r̄ = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitDualQuaternion(DualQuaternion);

impl UnitDualQuaternion {
    pub const fn identity() -> Self {
        Self(DualQuaternion::identity())
    }

    pub const fn new_unchecked(q: DualQuaternion) -> Self {
        Self(q)
    }

    pub fn into_inner(self) -> DualQuaternion {
        self.0
    }

    /// Projects onto the unit quadric: normalizes the real part, then removes
    /// the component of the dual part along the real part.
    pub fn project(q: DualQuaternion) -> Result<Self> {
        let n = q.real.norm();
        if !(n.is_finite() && n > 0.0) {
            return Err(Error::invalid("dual quaternion has a zero real part"));
        }
        let r = q.real.scale(1.0 / n);
        let s = q.dual.scale(1.0 / n);
        let s = s - r.scale(r.dot(&s));
        Ok(Self(DualQuaternion::new(r, s)))
    }

    /// Accepts `q` if both unit constraints hold within `tol`, then projects.
    pub fn try_new(q: DualQuaternion, tol: f64) -> Result<Self> {
        let (norm_err, orth) = q.unit_residuals();
        if !(norm_err <= tol && orth.abs() <= tol) {
            return Err(Error::invalid(format!(
                "not a unit dual quaternion: |‖r‖-1| = {norm_err:e}, r s̄ + s r̄ = {orth:e}"
            )));
        }
        Self::project(q)
    }

    /// `r + ε ½ t r`.
    pub fn from_pose(p: &RigidPose) -> Self {
        let r = *p.rotation;
        let s = (Quaternion::pure(p.translation) * r).scale(0.5);
        Self(DualQuaternion::new(r, s))
    }

    pub fn from_rotation(r: UnitQuaternion) -> Self {
        Self(DualQuaternion::new(*r, Quaternion::zero()))
    }

    pub fn from_translation(t: Vector3<f64>) -> Self {
        Self(DualQuaternion::new(
            Quaternion::identity(),
            Quaternion::pure(t * 0.5),
        ))
    }

    pub fn rotation(&self) -> UnitQuaternion {
        UnitQuaternion::new_unchecked(self.0.real)
    }

    /// `t = 2 s r̄`.
    pub fn translation(&self) -> Vector3<f64> {
        (self.0.dual * self.0.real.conjugate()).vector() * 2.0
    }

    /// Splits into rotation and translation; fails when the constraints are
    /// violated by more than [`INPUT_TOLERANCE`].
    pub fn to_pose(&self) -> Result<RigidPose> {
        let (n, o) = self.0.unit_residuals();
        if !(n <= INPUT_TOLERANCE && o.abs() <= INPUT_TOLERANCE) {
            return Err(Error::invalid(format!(
                "not a unit dual quaternion: |‖r‖-1| = {n:e}, r s̄ + s r̄ = {o:e}"
            )));
        }
        Ok(RigidPose::new(self.rotation(), self.translation()))
    }

    /// Inverse displacement, the quaternion conjugate `r̄ + εs̄`.
    pub fn inverse(&self) -> Self {
        Self(self.0.quaternion_conjugate())
    }

    /// Representative whose real part has nonnegative scalar.
    pub fn canonical(&self) -> Self {
        if self.0.real.w < 0.0 {
            Self(-self.0)
        } else {
            *self
        }
    }

    /// Applies the displacement via `Q (1 + εu) Q̄̂ = 1 + ε(r u r̄ + t)`.
    pub fn transform_point(&self, u: &Vector3<f64>) -> Vector3<f64> {
        let p = DualQuaternion::new(Quaternion::identity(), Quaternion::pure(*u));
        (self.0 * p * self.0.combined_conjugate()).dual.vector()
    }

    /// Screw parameters of the canonical representative, with the angle in
    /// `[0, π]`. Displacements with `sin(θ/2) < 1e-7` are reported as pure
    /// translations: zero angle, direction along `t` (or `x` for the
    /// identity) and zero moment.
    pub fn to_screw(&self) -> ScrewParameters {
        let q = self.canonical().0;
        let rv = q.real.vector();
        let s = rv.norm();
        if s < SCREW_SMALL_ANGLE {
            let t = self.translation();
            let len = t.norm();
            let direction = if len > 0.0 { t / len } else { Vector3::x() };
            return ScrewParameters {
                direction,
                moment: Vector3::zeros(),
                angle: 0.0,
                pitch: len,
            };
        }
        let w = q.real.w;
        let half = s.atan2(w);
        let v = rv / s;
        let sv = q.dual.vector();
        let pitch_half = v.dot(&sv) * w - q.dual.w * s;
        let mut moment = (sv - v * (pitch_half * w)) / s;
        moment -= v * v.dot(&moment);
        ScrewParameters {
            direction: v,
            moment,
            angle: 2.0 * half,
            pitch: 2.0 * pitch_half,
        }
    }

    /// `[cos(Θ/2), sin(Θ/2) V]` with dual angle `Θ = θ + εθ_ε` and dual axis
    /// `V = v + εv_ε`.
    pub fn from_screw(sp: &ScrewParameters) -> Result<Self> {
        let n = sp.direction.norm();
        if !((n - 1.0).abs() <= UNIT_TOLERANCE) {
            return Err(Error::invalid(format!("screw direction has norm {n}")));
        }
        let perp = sp.direction.dot(&sp.moment);
        if !(perp.abs() <= UNIT_TOLERANCE * (1.0 + sp.moment.norm())) {
            return Err(Error::invalid(format!(
                "screw moment is not perpendicular to the direction (v·m = {perp:e})"
            )));
        }
        let half = sp.half_dual_angle();
        let c = half.cos();
        let s = half.sin();
        // sin(Θ/2) V, expanded with ε² = 0
        let vr = sp.direction * s.re;
        let vd = sp.moment * s.re + sp.direction * s.du;
        Ok(Self(DualQuaternion::new(
            Quaternion::from_parts(c.re, vr),
            Quaternion::from_parts(c.du, vd),
        )))
    }

    /// Principal logarithm `V Θ/2` with rotation half-angle in `[0, π]`.
    ///
    /// No hemisphere flip is applied; `log(Q)` and `log(-Q)` are different
    /// branches.
    pub fn log(&self) -> DualQuaternion {
        let r = self.0.real;
        let d = self.0.dual;
        let rv = r.vector();
        let sv = d.vector();
        let s = rv.norm();
        let w = r.w;
        let half = s.atan2(w);
        if s == 0.0 {
            if w >= 0.0 {
                return DualQuaternion::pure(Vector3::zeros(), sv);
            }
            // Q = -1 + εs: half-angle π, where s_v = -(θ_ε/2) v fixes the axis
            // up to sign unless the translation vanishes too.
            let len = sv.norm();
            let v = if len > 0.0 { -sv / len } else { Vector3::x() };
            return DualQuaternion::pure(v * half, v * len);
        }
        // half / sin(half)
        let k = if s < 1e-8 && w > 0.0 {
            1.0 + half * half / 6.0
        } else {
            half / s
        };
        let v = rv / s;
        let pitch_half = v.dot(&sv) * w - d.w * s;
        // Dual part of (θ/2 + εθ_ε/2)(v + εm) = (θ/2) m + (θ_ε/2) v, with
        // m = (s_v - (θ_ε/2) cos(θ/2) v) / sin(θ/2).
        let dual = sv * k + v * (pitch_half * (1.0 - k * w));
        DualQuaternion::pure(rv * k, dual)
    }

    pub fn to_matrix(&self) -> Matrix4<f64> {
        let rot = self.rotation().rotation_matrix();
        let t = self.translation();
        let mut m = Matrix4::identity();
        m.fixed_view_mut::<3, 3>(0, 0).copy_from(&rot);
        m.fixed_view_mut::<3, 1>(0, 3).copy_from(&t);
        m
    }

    pub fn renormalize(&self) -> Self {
        Self::project(self.0).unwrap_or(*self)
    }
}

impl Deref for UnitDualQuaternion {
    type Target = DualQuaternion;
    fn deref(&self) -> &DualQuaternion {
        &self.0
    }
}

impl Mul for UnitDualQuaternion {
    type Output = UnitDualQuaternion;
    fn mul(self, o: UnitDualQuaternion) -> UnitDualQuaternion {
        UnitDualQuaternion(self.0 * o.0)
    }
}

impl Neg for UnitDualQuaternion {
    type Output = UnitDualQuaternion;
    fn neg(self) -> UnitDualQuaternion {
        UnitDualQuaternion(-self.0)
    }
}
