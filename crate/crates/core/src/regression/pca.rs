use nalgebra::{DMatrix, DVector, SymmetricEigen};

use super::WeightVector;
use crate::error::{Error, Result};

/// A line `mean + s · direction` in `D` dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct PrincipalLine {
    pub mean: DVector<f64>,
    /// Unit vector whose first non-negligible component is positive.
    pub direction: DVector<f64>,
}

impl PrincipalLine {
    /// Orthogonal projection of `x` onto the line.
    pub fn project(&self, x: &DVector<f64>) -> DVector<f64> {
        let s = (x - &self.mean).dot(&self.direction);
        &self.mean + &self.direction * s
    }
}

/// Result of a weighted principal component line fit.
#[derive(Debug, Clone)]
pub struct PcaFit {
    pub line: PrincipalLine,
    /// One row per input point.
    pub projections: DMatrix<f64>,
    /// Largest eigenvalue of the weighted covariance.
    pub variance: f64,
    /// Set when the weighted points have no spread; the direction is then
    /// the first unit vector and the projections equal the inputs.
    pub degenerate: bool,
}

impl PcaFit {
    /// Euclidean distance of every point to its projection.
    pub fn residuals(&self, points: &DMatrix<f64>) -> Vec<f64> {
        (0..points.nrows())
            .map(|i| (points.row(i) - self.projections.row(i)).norm())
            .collect()
    }
}

/// `Σ wᵢ ‖xᵢ - proj_line(xᵢ)‖²`.
pub fn weighted_line_residual(points: &DMatrix<f64>, w: &[f64], line: &PrincipalLine) -> f64 {
    (0..points.nrows())
        .map(|i| {
            let x = points.row(i).transpose();
            w[i] * (&x - line.project(&x)).norm_squared()
        })
        .sum()
}

/// Fits the first principal component of the weighted point set.
///
/// `points` holds one point per row. The covariance is
/// `C = (X - μ)ᵀ W (X - μ) / (2 Σw)` around the weighted mean `μ`; the line
/// direction is its dominant eigenvector.
pub fn weighted_pca(points: &DMatrix<f64>, w: &WeightVector) -> Result<PcaFit> {
    let (k, d) = points.shape();
    if k < 2 {
        return Err(Error::invalid(format!("principal line fit needs at least 2 points, got {k}")));
    }
    if w.len() != k {
        return Err(Error::invalid(format!("{} weights for {k} points", w.len())));
    }
    if d == 0 {
        return Err(Error::invalid("points have no coordinates"));
    }
    let w = w.as_slice();
    let total: f64 = w.iter().sum();

    let mut mean = DVector::zeros(d);
    for (i, wi) in w.iter().enumerate() {
        mean.axpy(*wi, &points.row(i).transpose(), 1.0);
    }
    mean /= total;

    let mut cov = DMatrix::zeros(d, d);
    for (i, wi) in w.iter().enumerate() {
        let c = points.row(i).transpose() - &mean;
        cov.ger(*wi, &c, &c, 1.0);
    }
    cov /= 2.0 * total;

    let spread = (2.0 * cov.trace()).max(0.0).sqrt();
    if spread <= 1e-14 * mean.norm().max(1.0) {
        let mut direction = DVector::zeros(d);
        direction[0] = 1.0;
        return Ok(PcaFit {
            line: PrincipalLine { mean, direction },
            projections: points.clone(),
            variance: 0.0,
            degenerate: true,
        });
    }

    let eig = SymmetricEigen::new(cov);
    let (imax, variance) = eig
        .eigenvalues
        .iter()
        .copied()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |best, (i, v)| if v > best.1 { (i, v) } else { best });
    let mut direction: DVector<f64> = eig.eigenvectors.column(imax).into_owned();
    direction.normalize_mut();
    if let Some(first) = direction.iter().find(|c| c.abs() > 1e-12) {
        if *first < 0.0 {
            direction.neg_mut();
        }
    }

    let line = PrincipalLine { mean, direction };
    let mut projections = DMatrix::zeros(k, d);
    for i in 0..k {
        let p = line.project(&points.row(i).transpose());
        projections.set_row(i, &p.transpose());
    }
    Ok(PcaFit {
        line,
        projections,
        variance,
        degenerate: false,
    })
}
