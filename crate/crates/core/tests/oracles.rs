//! Library results checked against independent reference computations.

mod common;

use common::*;
use dqfilter::lab::{
    add_noise, evaluate, generate_spline_trajectory, NaturalCubicSpline, NoiseSpec, ScalarKalman, SplineSamples,
    SplineSpec,
};
use dqfilter::manifold::{exp_at, log_at, geodesic_distance};
use dqfilter::regression::{irls_wpca, weighted_pca, WeightVector};
use dqfilter::{DualQuaternion, ManifoldPoint, PoseTrajectory, Quaternion, RigidPose, UnitDualQuaternion, UnitQuaternion};
use nalgebra::{DMatrix, Vector3};
use rand::Rng;

#[test]
fn hamilton_product_fixed_case() {
    let a = Quaternion::new(1.0, 2.0, 3.0, 4.0);
    let b = Quaternion::new(5.0, 6.0, 7.0, 8.0);
    let expected = qmul(&q4(&a), &q4(&b));
    assert_eq!(q4(&(a * b)), expected);
    assert_eq!(expected, nalgebra::Vector4::new(-60.0, 12.0, 30.0, 24.0));
}

#[test]
fn product_with_conjugate_is_norm_squared() {
    let mut r = rng(1);
    for _ in 0..100 {
        let q = quat(&mut r);
        let p = q * q.conjugate();
        assert!(p.vector().norm() < 1e-12);
        assert!((p.w - q4(&q).norm_squared()).abs() < 1e-12);
    }
}

#[test]
fn rotation_matches_rodrigues() {
    let mut r = rng(2);
    for _ in 0..500 {
        let q = unit_quat(&mut r);
        let u = vec3(&mut r, 5.0);
        let expected = quat_matrix(&q4(&q)) * u;
        assert!((q.rotate_point(&u) - expected).amax() < 1e-12);
        assert!((q.rotation_matrix() - quat_matrix(&q4(&q))).amax() < 1e-12);
    }
}

#[test]
fn quaternion_exp_matches_series() {
    let mut r = rng(3);
    for _ in 0..500 {
        let v = ball(&mut r, std::f64::consts::PI - 1e-3);
        let t = Quaternion::pure(v);
        let got = q4(&t.exp().unwrap());
        assert!((got - qexp_series(&q4(&t), 30)).amax() < 1e-12);
    }
}

#[test]
fn quaternion_log_inverts_exp() {
    let mut r = rng(4);
    for _ in 0..1000 {
        let phi = r.random_range(1e-9..std::f64::consts::PI - 0.01);
        let v = unit_vec3(&mut r) * phi;
        let back = Quaternion::pure(v).exp().unwrap().log();
        assert!((back.vector() - v).amax() < 1e-10 && back.w == 0.0);
    }
}

#[test]
fn dual_composition_matches_matrix_product() {
    let mut r = rng(5);
    for _ in 0..500 {
        let (a, b) = (unit_dq(&mut r), unit_dq(&mut r));
        let ab = a * b;
        let (n, o) = ab.unit_residuals();
        assert!(n < 1e-10 && o.abs() < 1e-10);
        let pa = a.to_pose().unwrap();
        let pb = b.to_pose().unwrap();
        let ma = homogeneous(&quat_matrix(&q4(&pa.rotation)), &pa.translation);
        let mb = homogeneous(&quat_matrix(&q4(&pb.rotation)), &pb.translation);
        assert!((ab.to_matrix() - ma * mb).amax() < 1e-12);
        assert!(dq_close(&dq_pair(&ab), &dqmul(&dq_pair(&a), &dq_pair(&b))) < 1e-12);
    }
}

#[test]
fn point_transform_matches_split_form() {
    let mut r = rng(6);
    for _ in 0..500 {
        let p = pose(&mut r);
        let q = UnitDualQuaternion::from_pose(&p);
        let u = vec3(&mut r, 4.0);
        let expected = quat_matrix(&q4(&p.rotation)) * u + p.translation;
        assert!((q.transform_point(&u) - expected).amax() < 1e-12);
        let back = q.to_pose().unwrap();
        assert!((back.translation - p.translation).amax() < 1e-12);
        assert_eq!(back.rotation, p.rotation);
        let (n, o) = q.unit_residuals();
        assert!(n < 1e-12 && o.abs() < 1e-12);
    }
}

#[test]
fn screw_reconstruction_moves_probes_identically() {
    let mut r = rng(7);
    for _ in 0..1000 {
        let q = unit_dq(&mut r);
        let sp = q.to_screw();
        // Rotate about the line through `v × m` with direction `v`, then slide.
        let point = sp.direction.cross(&sp.moment);
        let rot = rodrigues(&sp.direction, sp.angle);
        for _ in 0..5 {
            let u = vec3(&mut r, 3.0);
            let moved = rot * (u - point) + point + sp.direction * sp.pitch;
            assert!((moved - q.transform_point(&u)).amax() < 1e-9);
        }
        let back = UnitDualQuaternion::from_screw(&sp).unwrap();
        let d = dq_close(&dq_pair(&back), &dq_pair(&q)).min(dq_close(&dq_pair(&-back), &dq_pair(&q)));
        assert!(d < 1e-9);
    }
}

#[test]
fn dual_exp_matches_matrix_exponential_and_series() {
    let mut r = rng(8);
    for _ in 0..1000 {
        let a = ball(&mut r, std::f64::consts::PI - 0.01);
        let b = vec3(&mut r, 2.0);
        let t = DualQuaternion::pure(a, b);
        let q = t.exp().unwrap();
        assert!((q.to_matrix() - se3_exp(&(a * 2.0), &(b * 2.0))).amax() < 1e-8);
        assert!(dq_close(&dq_pair(&q), &dqexp_series(&dq_pair(&t), 40)) < 1e-8);
        let back = q.log();
        assert!(dq_close(&dq_pair(&back), &dq_pair(&t)) < 1e-9);
    }
}

#[test]
fn purely_dual_exp_is_affine() {
    let mut r = rng(9);
    for _ in 0..200 {
        let b = vec3(&mut r, 10.0);
        let q = DualQuaternion::pure(Vector3::zeros(), b).exp().unwrap();
        assert_eq!(q.real, Quaternion::identity());
        assert_eq!(q.dual, Quaternion::pure(b));
    }
}

#[test]
fn pitch_is_translation_along_axis() {
    let mut r = rng(10);
    for _ in 0..1000 {
        let axis = unit_vec3(&mut r);
        let angle = r.random_range(0.01..std::f64::consts::TAU - 0.01);
        let t = vec3(&mut r, 3.0);
        let rot = UnitQuaternion::new_unchecked(Quaternion::from_parts((angle / 2.0).cos(), axis * (angle / 2.0).sin()));
        let sp = UnitDualQuaternion::from_pose(&RigidPose::new(rot, t)).to_screw();
        assert!((sp.pitch - t.dot(&sp.direction)).abs() < 1e-10);
        assert!(sp.direction.dot(&axis).abs() > 1.0 - 1e-12);
    }
}

#[test]
fn manifold_round_trip_and_midpoint() {
    let mut r = rng(11);
    for i in 0..1000 {
        let x = unit_dq(&mut r);
        let step = DualQuaternion::pure(ball(&mut r, std::f64::consts::PI - 0.01), vec3(&mut r, 2.0))
            .exp()
            .unwrap();
        let q = if i % 2 == 0 { x * step } else { -(x * step) };
        let (xp, qp) = (ManifoldPoint::Pose(x), ManifoldPoint::Pose(q));
        let s = log_at(&xp, &qp).unwrap();
        let ManifoldPoint::Pose(back) = exp_at(&xp, &s).unwrap() else { unreachable!() };
        let d = dq_close(&dq_pair(&back), &dq_pair(&q)).min(dq_close(&dq_pair(&-back), &dq_pair(&q)));
        assert!(d < 1e-9);
        let mid = exp_at(&xp, &s.scale(0.5)).unwrap();
        let d1 = geodesic_distance(&xp, &mid).unwrap();
        let d2 = geodesic_distance(&mid, &qp).unwrap();
        assert!((d1 - d2).abs() < 1e-8, "{d1} {d2}");
    }
}

#[test]
fn pca_direction_matches_jacobi() {
    let mut r = rng(12);
    for _ in 0..200 {
        let k = r.random_range(3..10);
        let d = r.random_range(2..6);
        let pts: Vec<Vec<f64>> = (0..k).map(|_| (0..d).map(|_| r.random_range(-1.0..1.0)).collect()).collect();
        let w: Vec<f64> = (0..k).map(|_| r.random_range(0.05..1.0)).collect();
        let m = DMatrix::from_fn(k, d, |i, j| pts[i][j]);
        let fit = weighted_pca(&m, &WeightVector::new(w.clone()).unwrap()).unwrap();
        let (mean, dir) = weighted_principal_axis(&pts, &w);
        for j in 0..d {
            assert!((fit.line.mean[j] - mean[j]).abs() < 1e-12);
        }
        let dot: f64 = dir.iter().zip(fit.line.direction.iter()).map(|(a, b)| a * b).sum();
        assert!(dot.abs() > 1.0 - 1e-8);
    }
}

#[test]
fn nearly_ignored_point_matches_dense_eigen() {
    let pts = vec![vec![0.0, 0.0], vec![1.0, 1.0], vec![2.0, 2.0], vec![1.0, 0.0]];
    let w = vec![1.0, 1.0, 1.0, 1e-6];
    let (_, dir) = weighted_principal_axis(&pts, &w);
    let m = DMatrix::from_fn(4, 2, |i, j| pts[i][j]);
    let fit = weighted_pca(&m, &WeightVector::new(w).unwrap()).unwrap();
    let h = std::f64::consts::FRAC_1_SQRT_2;
    assert!((fit.line.direction[0] - h).abs() < 1e-3 && (fit.line.direction[1] - h).abs() < 1e-3);
    assert!((fit.line.direction[0] * dir[0] + fit.line.direction[1] * dir[1]).abs() > 1.0 - 1e-12);
}

#[test]
fn irls_suppresses_gross_outlier() {
    // Twenty points on a line with perpendicular scatter of half-width
    // `spread`, and one point pushed off the line by ten times that.
    let mut r = rng(13);
    let dir = Vector3::new(1.0, 2.0, -0.5).normalize();
    let (u, v) = (dir.cross(&Vector3::z()).normalize(), dir.cross(&dir.cross(&Vector3::z())).normalize());
    let spread = 0.01;
    let mut pts: Vec<Vec<f64>> = (0..20)
        .map(|i| {
            let jitter = u * r.random_range(-spread..spread) + v * r.random_range(-spread..spread);
            (dir * (i as f64 * 0.1) + jitter).iter().copied().collect()
        })
        .collect();
    pts.push((dir * 1.23 + u * (10.0 * spread)).iter().copied().collect());
    let m = DMatrix::from_fn(pts.len(), 3, |i, j| pts[i][j]);
    let fit = irls_wpca(&m, &WeightVector::uniform(pts.len()), 5, 1e-6).unwrap();
    let w = fit.weights.as_slice();
    let mut inliers = w[..20].to_vec();
    inliers.sort_by(f64::total_cmp);
    let median = 0.5 * (inliers[9] + inliers[10]);
    assert!(w[20] < 0.2 * median, "{w:?}");
    let (_, clean) = weighted_principal_axis(&pts[..20], &[1.0; 20]);
    let cos: f64 = clean.iter().zip(fit.fit.line.direction.iter()).map(|(a, b)| a * b).sum();
    assert!(cos.abs() > 1f64.to_radians().cos());
}

#[test]
fn uniform_screw_is_reproduced() {
    let mut r = rng(14);
    for _ in 0..5 {
        let base = unit_dq(&mut r);
        let step = DualQuaternion::pure(ball(&mut r, 0.05), vec3(&mut r, 0.05)).exp().unwrap();
        let mut seq = vec![base];
        for _ in 1..60 {
            let last = *seq.last().unwrap();
            seq.push(last * step);
        }
        let traj = PoseTrajectory::from_dual(&seq);
        for method in [dqfilter::Method::Pca, dqfilter::Method::Wpca, dqfilter::Method::Irls] {
            let out = dqfilter::regression::filter_trajectory(&traj, dqfilter::Space::Dual, &dqfilter::FilterConfig::new(19, method))
                .unwrap();
            for (a, b) in out.to_dual().iter().zip(&seq) {
                let d = geodesic_distance(&ManifoldPoint::Pose(*a), &ManifoldPoint::Pose(*b)).unwrap();
                assert!(d < 1e-6, "{d}");
            }
        }
    }
}

#[test]
fn spline_matches_dense_oracle() {
    let mut r = rng(15);
    for _ in 0..100 {
        let y: Vec<f64> = (0..5).map(|_| r.random_range(-3.0..3.0)).collect();
        let s = NaturalCubicSpline::new(&y).unwrap();
        for i in 0..=40 {
            let u = i as f64 * 0.1;
            assert!((s.evaluate(u) - spline_oracle(&y, u)).abs() < 1e-10);
        }
    }
}

#[test]
fn sampled_angles_hit_control_angles_at_knots() {
    let mut r = rng(16);
    for seed in 0..50 {
        let m = r.random_range(1..40);
        let spec = SplineSpec::random(seed, 4 * m + 1);
        let samples = SplineSamples::from_spec(&spec).unwrap();
        for i in 0..5 {
            assert!((samples.angles[i * m] - spec.control_angles[i]).abs() < 1e-10);
            assert!((samples.axes[i * m] - spec.control_axes[i]).amax() < 1e-10);
            assert!((samples.translations[i * m] - spec.control_translations[i]).amax() < 1e-10);
        }
    }
}

#[test]
fn uniform_noise_passes_chi_square() {
    let n = 34_000;
    let traj = PoseTrajectory::new(vec![RigidPose::new(UnitQuaternion::identity(), Vector3::new(0.3, 0.4, 0.5)); n]);
    let sigma = 0.02;
    let spec = NoiseSpec {
        sigma,
        outlier_fraction: 0.0,
        seed: 99,
        ..NoiseSpec::default()
    };
    let noisy = add_noise(&traj, &spec).unwrap();
    let bins = 20;
    let mut counts = vec![0usize; bins];
    let mut total = 0;
    for (a, b) in noisy.iter().zip(traj.iter()) {
        for off in (a.translation - b.translation).iter() {
            assert!(off.abs() <= sigma + 1e-15);
            let k = (((off + sigma) / (2.0 * sigma)) * bins as f64).floor() as usize;
            counts[k.min(bins - 1)] += 1;
            total += 1;
        }
    }
    assert!(total >= 100_000);
    let expected = total as f64 / bins as f64;
    let chi2: f64 = counts.iter().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
    // 99th percentile of χ² with 19 degrees of freedom.
    assert!(chi2 < 36.191, "chi2 = {chi2}");
}

#[test]
fn angle_error_matches_matrix_geodesic() {
    let mut r = rng(17);
    let est: Vec<RigidPose> = (0..500).map(|_| pose(&mut r)).collect();
    let gt: Vec<RigidPose> = (0..500).map(|_| pose(&mut r)).collect();
    let report = evaluate(&PoseTrajectory::new(est.clone()), &PoseTrajectory::new(gt.clone())).unwrap();
    for i in 0..500 {
        let expected = matrix_angle(&quat_matrix(&q4(&est[i].rotation)), &quat_matrix(&q4(&gt[i].rotation))).to_degrees();
        assert!((report.angle_deg.values[i] - expected).abs() < 1e-8);
        assert!((report.trans.values[i] - (est[i].translation - gt[i].translation).norm()).abs() < 1e-15);
    }
}

#[test]
fn kalman_gain_reaches_riccati_fixed_point() {
    let mut r = rng(18);
    for (q, m) in [(0.5, 2.0), (0.2, 1.0), (1e-3, 5.0)] {
        let mut f = ScalarKalman::new(q, m, 1.0);
        for _ in 0..5000 {
            f.update(1.0 + r.random_range(-0.1..0.1));
        }
        assert!((f.gain() - riccati_gain(q, m)).abs() < 1e-6);
    }
}

#[test]
fn zero_noise_evaluates_to_zero() {
    let gt = generate_spline_trajectory(&SplineSpec::random(21, 300)).unwrap();
    let noisy = add_noise(
        &gt,
        &NoiseSpec {
            sigma: 0.0,
            outlier_fraction: 0.0,
            ..NoiseSpec::default()
        },
    )
    .unwrap();
    let report = evaluate(&noisy, &gt).unwrap();
    for c in [&report.angle_deg, &report.axis_deg, &report.trans] {
        assert!(c.summary.max < 1e-12);
    }
}
