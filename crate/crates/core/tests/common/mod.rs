//! Independent reference computations and random generators shared by the
//! integration tests. Nothing here calls into the library's algebra.

#![allow(dead_code)]

use nalgebra::{DMatrix, Matrix3, Matrix4, Vector3, Vector4};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dqfilter::{DualQuaternion, Quaternion, RigidPose, UnitDualQuaternion, UnitQuaternion};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn vec3(r: &mut ChaCha8Rng, half: f64) -> Vector3<f64> {
    Vector3::from_fn(|_, _| r.random_range(-half..=half))
}

pub fn unit_vec3(r: &mut ChaCha8Rng) -> Vector3<f64> {
    loop {
        let v = vec3(r, 1.0);
        let n = v.norm();
        if n > 0.1 && n <= 1.0 {
            return v / n;
        }
    }
}

/// Vector uniformly distributed in the ball of the given radius.
pub fn ball(r: &mut ChaCha8Rng, radius: f64) -> Vector3<f64> {
    loop {
        let v = vec3(r, 1.0);
        if v.norm() <= 1.0 {
            return v * radius;
        }
    }
}

pub fn quat(r: &mut ChaCha8Rng) -> Quaternion {
    Quaternion::new(
        r.random_range(-2.0..2.0),
        r.random_range(-2.0..2.0),
        r.random_range(-2.0..2.0),
        r.random_range(-2.0..2.0),
    )
}

pub fn unit_quat(r: &mut ChaCha8Rng) -> UnitQuaternion {
    loop {
        let q = quat(r);
        if q.norm() > 0.1 {
            return UnitQuaternion::new_normalize(q).unwrap();
        }
    }
}

pub fn pose(r: &mut ChaCha8Rng) -> RigidPose {
    RigidPose::new(unit_quat(r), vec3(r, 3.0))
}

pub fn unit_dq(r: &mut ChaCha8Rng) -> UnitDualQuaternion {
    UnitDualQuaternion::from_pose(&pose(r))
}

// ---- quaternion algebra via the left-multiplication matrix ----

pub fn q4(q: &Quaternion) -> Vector4<f64> {
    Vector4::new(q.w, q.x, q.y, q.z)
}

pub fn left_matrix(a: &Vector4<f64>) -> Matrix4<f64> {
    let (w, x, y, z) = (a[0], a[1], a[2], a[3]);
    Matrix4::new(w, -x, -y, -z, x, w, -z, y, y, z, w, -x, z, -y, x, w)
}

pub fn qmul(a: &Vector4<f64>, b: &Vector4<f64>) -> Vector4<f64> {
    left_matrix(a) * b
}

pub fn qconj(a: &Vector4<f64>) -> Vector4<f64> {
    Vector4::new(a[0], -a[1], -a[2], -a[3])
}

/// `Σ_{k<terms} qᵏ/k!`.
pub fn qexp_series(q: &Vector4<f64>, terms: usize) -> Vector4<f64> {
    let mut term = Vector4::new(1.0, 0.0, 0.0, 0.0);
    let mut sum = term;
    for k in 1..terms {
        term = qmul(&term, q) / k as f64;
        sum += term;
    }
    sum
}

/// Dual quaternion as a pair of 4-vectors.
pub type Dq = (Vector4<f64>, Vector4<f64>);

pub fn dq_pair(q: &DualQuaternion) -> Dq {
    (q4(&q.real), q4(&q.dual))
}

pub fn dqmul(a: &Dq, b: &Dq) -> Dq {
    (qmul(&a.0, &b.0), qmul(&a.0, &b.1) + qmul(&a.1, &b.0))
}

pub fn dqexp_series(q: &Dq, terms: usize) -> Dq {
    let mut term = (Vector4::new(1.0, 0.0, 0.0, 0.0), Vector4::zeros());
    let mut sum = term;
    for k in 1..terms {
        let next = dqmul(&term, q);
        term = (next.0 / k as f64, next.1 / k as f64);
        sum = (sum.0 + term.0, sum.1 + term.1);
    }
    sum
}

pub fn dq_close(a: &Dq, b: &Dq) -> f64 {
    (a.0 - b.0).amax().max((a.1 - b.1).amax())
}

// ---- rotation and rigid-motion matrices ----

pub fn skew(v: &Vector3<f64>) -> Matrix3<f64> {
    Matrix3::new(0.0, -v.z, v.y, v.z, 0.0, -v.x, -v.y, v.x, 0.0)
}

/// Rodrigues' formula.
pub fn rodrigues(axis: &Vector3<f64>, angle: f64) -> Matrix3<f64> {
    let k = skew(axis);
    Matrix3::identity() + k * angle.sin() + k * k * (1.0 - angle.cos())
}

/// Rotation matrix of a unit quaternion through its axis and angle.
pub fn quat_matrix(q: &Vector4<f64>) -> Matrix3<f64> {
    let v = Vector3::new(q[1], q[2], q[3]);
    let s = v.norm();
    if s == 0.0 {
        return Matrix3::identity();
    }
    rodrigues(&(v / s), 2.0 * s.atan2(q[0]))
}

pub fn homogeneous(r: &Matrix3<f64>, t: &Vector3<f64>) -> Matrix4<f64> {
    let mut m = Matrix4::identity();
    m.fixed_view_mut::<3, 3>(0, 0).copy_from(r);
    m.fixed_view_mut::<3, 1>(0, 3).copy_from(t);
    m
}

/// Matrix exponential of the twist `[[ω]ₓ v; 0 0]`.
pub fn se3_exp(omega: &Vector3<f64>, v: &Vector3<f64>) -> Matrix4<f64> {
    let mut m = Matrix4::zeros();
    m.fixed_view_mut::<3, 3>(0, 0).copy_from(&skew(omega));
    m.fixed_view_mut::<3, 1>(0, 3).copy_from(v);
    m.exp()
}

/// Rotation angle between two rotation matrices.
pub fn matrix_angle(a: &Matrix3<f64>, b: &Matrix3<f64>) -> f64 {
    (((a * b.transpose()).trace() - 1.0) / 2.0).clamp(-1.0, 1.0).acos()
}

// ---- symmetric eigenproblem by cyclic Jacobi rotations ----

/// Eigenvalues and column eigenvectors of a symmetric matrix.
pub fn jacobi_eigen(a: &DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let n = a.nrows();
    let mut a = a.clone();
    let mut v = DMatrix::identity(n, n);
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)].powi(2))
            .sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[(p, q)].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * a[(p, q)]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[(k, p)], a[(k, q)]);
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[(p, k)], a[(q, k)]);
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }
    ((0..n).map(|i| a[(i, i)]).collect(), v)
}

/// Weighted mean and the dominant eigenvector of the weighted scatter.
pub fn weighted_principal_axis(points: &[Vec<f64>], w: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let d = points[0].len();
    let total: f64 = w.iter().sum();
    let mean: Vec<f64> = (0..d)
        .map(|c| points.iter().zip(w).map(|(p, wi)| wi * p[c]).sum::<f64>() / total)
        .collect();
    let mut scatter = DMatrix::zeros(d, d);
    for (p, wi) in points.iter().zip(w) {
        for i in 0..d {
            for j in 0..d {
                scatter[(i, j)] += wi * (p[i] - mean[i]) * (p[j] - mean[j]);
            }
        }
    }
    let (vals, vecs) = jacobi_eigen(&scatter);
    let best = (0..d).max_by(|&a, &b| vals[a].total_cmp(&vals[b])).unwrap();
    (mean, vecs.column(best).iter().copied().collect())
}

/// `Σ wᵢ (‖xᵢ − m‖² − (d·(xᵢ − m))²)` for a unit direction `d`.
pub fn line_residual(points: &[Vec<f64>], w: &[f64], mean: &[f64], dir: &[f64]) -> f64 {
    points
        .iter()
        .zip(w)
        .map(|(p, wi)| {
            let r: Vec<f64> = p.iter().zip(mean).map(|(a, b)| a - b).collect();
            let along: f64 = r.iter().zip(dir).map(|(a, b)| a * b).sum();
            wi * (r.iter().map(|a| a * a).sum::<f64>() - along * along)
        })
        .sum()
}

// ---- scalar Kalman steady state ----

/// Steady-state gain of the random-walk filter, by iterating the Riccati
/// recursion to its fixed point.
pub fn riccati_gain(process: f64, measurement: f64) -> f64 {
    let mut p = measurement;
    for _ in 0..100_000 {
        let predicted = p + process;
        let next = predicted * measurement / (predicted + measurement);
        if (next - p).abs() < 1e-16 {
            break;
        }
        p = next;
    }
    (p + process) / (p + process + measurement)
}

// ---- natural cubic spline through uniform knots, dense solve ----

/// Spline value at `u` from the full coefficient system: one cubic
/// `a + b s + c s² + d s³` per interval, solved densely.
pub fn spline_oracle(y: &[f64], u: f64) -> f64 {
    let m = y.len() - 1;
    let n = 4 * m;
    let mut a = DMatrix::<f64>::zeros(n, n);
    let mut rhs = nalgebra::DVector::<f64>::zeros(n);
    let mut row = 0;
    for i in 0..m {
        // value at both ends of the interval
        a[(row, 4 * i)] = 1.0;
        rhs[row] = y[i];
        row += 1;
        for k in 0..4 {
            a[(row, 4 * i + k)] = 1.0;
        }
        rhs[row] = y[i + 1];
        row += 1;
    }
    for i in 0..m - 1 {
        // first and second derivative continuity at interior knots
        a[(row, 4 * i + 1)] = 1.0;
        a[(row, 4 * i + 2)] = 2.0;
        a[(row, 4 * i + 3)] = 3.0;
        a[(row, 4 * (i + 1) + 1)] = -1.0;
        row += 1;
        a[(row, 4 * i + 2)] = 2.0;
        a[(row, 4 * i + 3)] = 6.0;
        a[(row, 4 * (i + 1) + 2)] = -2.0;
        row += 1;
    }
    a[(row, 2)] = 2.0;
    row += 1;
    a[(row, 4 * (m - 1) + 2)] = 2.0;
    a[(row, 4 * (m - 1) + 3)] = 6.0;
    let coef = a.lu().solve(&rhs).unwrap();
    let i = (u.floor() as usize).min(m - 1);
    let s = u - i as f64;
    coef[4 * i] + s * (coef[4 * i + 1] + s * (coef[4 * i + 2] + s * coef[4 * i + 3]))
}
