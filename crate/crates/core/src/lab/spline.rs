use nalgebra::Vector3;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::dual::RigidPose;
use crate::error::{Error, Result};
use crate::quat::{Quaternion, UnitQuaternion};
use crate::trajectory::PoseTrajectory;

/// Number of control poses of a ground-truth spline.
pub const CONTROL_COUNT: usize = 5;

/// Natural cubic spline through values at the knots `0, 1, …, n−1`.
#[derive(Debug, Clone, PartialEq)]
pub struct NaturalCubicSpline {
    values: Vec<f64>,
    second: Vec<f64>,
}

impl NaturalCubicSpline {
    pub fn new(values: &[f64]) -> Result<Self> {
        let n = values.len();
        if n < 2 {
            return Err(Error::invalid("a spline needs at least two knots"));
        }
        let mut second = vec![0.0; n];
        if n > 2 {
            // Tridiagonal system M[i-1] + 4 M[i] + M[i+1] = 6 Δ²y[i], M at both ends zero.
            let m = n - 2;
            let mut diag = vec![4.0; m];
            let mut rhs: Vec<f64> = (1..n - 1)
                .map(|i| 6.0 * (values[i + 1] - 2.0 * values[i] + values[i - 1]))
                .collect();
            for i in 1..m {
                let f = 1.0 / diag[i - 1];
                diag[i] -= f;
                rhs[i] -= f * rhs[i - 1];
            }
            second[m] = rhs[m - 1] / diag[m - 1];
            for i in (0..m - 1).rev() {
                second[i + 1] = (rhs[i] - second[i + 2]) / diag[i];
            }
        }
        Ok(Self {
            values: values.to_vec(),
            second,
        })
    }

    /// Largest valid parameter.
    pub fn end(&self) -> f64 {
        (self.values.len() - 1) as f64
    }

    /// Value at parameter `u`, clamped to `[0, end]`.
    pub fn evaluate(&self, u: f64) -> f64 {
        let u = u.clamp(0.0, self.end());
        let j = (u.floor() as usize).min(self.values.len() - 2);
        let t = u - j as f64;
        let s = 1.0 - t;
        let (y0, y1) = (self.values[j], self.values[j + 1]);
        let (m0, m1) = (self.second[j], self.second[j + 1]);
        y0 + t * (y1 - y0) + ((s * s * s - s) * m0 + (t * t * t - t) * m1) / 6.0
    }
}

/// Control poses of a smooth ground-truth trajectory.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SplineSpec {
    pub control_axes: [Vector3<f64>; CONTROL_COUNT],
    pub control_angles: [f64; CONTROL_COUNT],
    pub control_translations: [Vector3<f64>; CONTROL_COUNT],
    pub sample_count: usize,
    pub seed: u64,
}

impl SplineSpec {
    /// Random controls: axes uniform on the sphere, angles in `[0, 2π]`,
    /// translations in the unit cube.
    pub fn random(seed: u64, sample_count: usize) -> Self {
        let mut rng = super::rng(seed, 0);
        let mut axes = [Vector3::zeros(); CONTROL_COUNT];
        let mut angles = [0.0; CONTROL_COUNT];
        let mut translations = [Vector3::zeros(); CONTROL_COUNT];
        for i in 0..CONTROL_COUNT {
            axes[i] = loop {
                let v = Vector3::from_fn(|_, _| rng.random_range(-1.0..=1.0));
                let n: f64 = v.norm();
                if n > 1e-3 && n <= 1.0 {
                    break v / n;
                }
            };
            angles[i] = rng.random_range(0.0..=std::f64::consts::TAU);
            translations[i] = Vector3::from_fn(|_, _| rng.random_range(0.0..=1.0));
        }
        Self {
            control_axes: axes,
            control_angles: angles,
            control_translations: translations,
            sample_count,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.sample_count < 2 {
            return Err(Error::Config(format!(
                "sample count must be at least 2, got {}",
                self.sample_count
            )));
        }
        for v in &self.control_axes {
            if !((v.norm() - 1.0).abs() <= 1e-9) {
                return Err(Error::invalid(format!("control axis {v:?} is not unit length")));
            }
        }
        let finite = self.control_angles.iter().all(|a| a.is_finite())
            && self.control_translations.iter().all(|t| t.iter().all(|c| c.is_finite()));
        if !finite {
            return Err(Error::invalid("control values must be finite"));
        }
        Ok(())
    }

    /// Spline parameter of sample `k`; the first and last samples sit on
    /// the first and last knots.
    pub fn parameter(&self, k: usize) -> f64 {
        let end = (CONTROL_COUNT - 1) as f64;
        if k + 1 == self.sample_count {
            end
        } else {
            end * k as f64 / (self.sample_count - 1) as f64
        }
    }
}

/// Dense samples of the interpolated channels. The axes are the raw spline
/// values before normalization.
#[derive(Debug, Clone, PartialEq)]
pub struct SplineSamples {
    pub axes: Vec<Vector3<f64>>,
    pub angles: Vec<f64>,
    pub translations: Vec<Vector3<f64>>,
}

impl SplineSamples {
    pub fn from_spec(spec: &SplineSpec) -> Result<Self> {
        spec.validate()?;
        let channel = |f: &dyn Fn(usize) -> f64| NaturalCubicSpline::new(&(0..CONTROL_COUNT).map(f).collect::<Vec<_>>());
        let axis: Vec<_> = (0..3)
            .map(|c| channel(&|i| spec.control_axes[i][c]))
            .collect::<Result<_>>()?;
        let trans: Vec<_> = (0..3)
            .map(|c| channel(&|i| spec.control_translations[i][c]))
            .collect::<Result<_>>()?;
        let angle = channel(&|i| spec.control_angles[i])?;

        let n = spec.sample_count;
        let mut out = Self {
            axes: Vec::with_capacity(n),
            angles: Vec::with_capacity(n),
            translations: Vec::with_capacity(n),
        };
        for k in 0..n {
            let u = spec.parameter(k);
            out.axes.push(Vector3::from_fn(|c, _| axis[c].evaluate(u)));
            out.angles.push(angle.evaluate(u));
            out.translations.push(Vector3::from_fn(|c, _| trans[c].evaluate(u)));
        }
        Ok(out)
    }

    /// Decomposes a trajectory into unit axes, angles in `[0, 2π]` and
    /// translations.
    pub fn from_trajectory(traj: &PoseTrajectory) -> Self {
        let mut out = Self {
            axes: Vec::with_capacity(traj.len()),
            angles: Vec::with_capacity(traj.len()),
            translations: Vec::with_capacity(traj.len()),
        };
        for p in traj.iter() {
            let (axis, angle) = p.rotation.to_axis_angle();
            out.axes.push(axis);
            out.angles.push(angle);
            out.translations.push(p.translation);
        }
        out
    }

    pub fn len(&self) -> usize {
        self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.angles.is_empty()
    }

    /// Assembles poses `(cos θ/2, sin θ/2 · v/|v|)`. The quaternion is built
    /// from the angle directly so it stays continuous past `θ = π`.
    pub fn to_trajectory(&self) -> PoseTrajectory {
        (0..self.len())
            .map(|k| RigidPose::new(rotation(&self.axes[k], self.angles[k]), self.translations[k]))
            .collect()
    }
}

fn rotation(axis: &Vector3<f64>, angle: f64) -> UnitQuaternion {
    let n = axis.norm();
    let v = if n > 0.0 { axis / n } else { Vector3::x() };
    let half = 0.5 * angle;
    UnitQuaternion::new_unchecked(Quaternion::from_parts(half.cos(), v * half.sin()))
}

pub fn generate_spline_trajectory(spec: &SplineSpec) -> Result<PoseTrajectory> {
    Ok(SplineSamples::from_spec(spec)?.to_trajectory())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dual::UnitDualQuaternion;
    use approx::assert_abs_diff_eq;

    #[test]
    fn spline_hits_knots() {
        let y = [0.3, -1.0, 2.5, 2.0, 0.1];
        let s = NaturalCubicSpline::new(&y).unwrap();
        for (i, v) in y.iter().enumerate() {
            assert_abs_diff_eq!(s.evaluate(i as f64), *v, epsilon = 1e-14);
        }
        let two = NaturalCubicSpline::new(&[1.0, 3.0]).unwrap();
        assert_abs_diff_eq!(two.evaluate(0.25), 1.5, epsilon = 1e-15);
        assert!(NaturalCubicSpline::new(&[1.0]).is_err());
    }

    #[test]
    fn identical_controls_give_constant_trajectory() {
        let mut spec = SplineSpec::random(3, 40);
        spec.control_axes = [spec.control_axes[0]; CONTROL_COUNT];
        spec.control_angles = [1.3; CONTROL_COUNT];
        spec.control_translations = [spec.control_translations[2]; CONTROL_COUNT];
        let traj = generate_spline_trajectory(&spec).unwrap();
        let first = traj.poses[0];
        for p in traj.iter() {
            assert!((p.rotation.into_inner() - first.rotation.into_inner()).norm() < 1e-15);
            assert!((p.translation - first.translation).norm() < 1e-15);
        }
    }

    #[test]
    fn endpoints_match_controls() {
        let spec = SplineSpec::random(11, 500);
        let traj = generate_spline_trajectory(&spec).unwrap();
        for (k, i) in [(0, 0), (499, CONTROL_COUNT - 1)] {
            let expected = rotation(&spec.control_axes[i], spec.control_angles[i]);
            assert!((traj.poses[k].rotation.into_inner() - expected.into_inner()).norm() < 1e-10);
            assert!((traj.poses[k].translation - spec.control_translations[i]).norm() < 1e-10);
        }
    }

    #[test]
    fn generation_is_deterministic_and_consistent() {
        let a = generate_spline_trajectory(&SplineSpec::random(5, 100)).unwrap();
        let b = generate_spline_trajectory(&SplineSpec::random(5, 100)).unwrap();
        assert_eq!(a, b);
        for p in a.iter() {
            let back = UnitDualQuaternion::from_pose(p).to_pose().unwrap();
            assert!((back.translation - p.translation).norm() < 1e-12);
            assert!((back.rotation.into_inner() - p.rotation.into_inner()).norm() < 1e-12);
        }
    }

    #[test]
    fn rejects_bad_specs() {
        let mut spec = SplineSpec::random(1, 1);
        assert!(matches!(spec.validate(), Err(Error::Config(_))));
        spec.sample_count = 10;
        spec.control_axes[1] *= 2.0;
        assert!(spec.validate().is_err());
    }
}
