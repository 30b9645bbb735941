use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::WeightVector;
use crate::error::{Error, Result};

/// How the Gaussian prior measures the distance of a window sample to the
/// window centre.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum PriorMode {
    /// Temporal index offset. `None` uses `(K - 1) / 4` for window size `K`.
    Index { bandwidth: Option<f64> },
    /// Euclidean distance between tangent coordinates.
    Tangent { bandwidth: f64 },
}

impl Default for PriorMode {
    fn default() -> Self {
        PriorMode::Index { bandwidth: None }
    }
}

impl PriorMode {
    pub fn validate(&self) -> Result<()> {
        let h = match self {
            PriorMode::Index { bandwidth: None } => return Ok(()),
            PriorMode::Index { bandwidth: Some(h) } | PriorMode::Tangent { bandwidth: h } => *h,
        };
        if h.is_finite() && h > 0.0 {
            Ok(())
        } else {
            Err(Error::Config(format!("prior bandwidth must be positive, got {h}")))
        }
    }
}

/// `wᵢ = exp(-½ (xᵢ - c)ᵀ D (xᵢ - c))` for each row `xᵢ` of `points`.
///
/// `metric` must be positive semi-definite; a negative quadratic form is
/// reported as an error since it would produce weights above one.
pub fn gaussian_prior(points: &DMatrix<f64>, center: &[f64], metric: &DMatrix<f64>) -> Result<WeightVector> {
    let d = points.ncols();
    if center.len() != d || metric.shape() != (d, d) {
        return Err(Error::invalid(format!(
            "prior dimensions disagree: points have {d} columns, centre {}, metric {:?}",
            center.len(),
            metric.shape()
        )));
    }
    let c = nalgebra::DVector::from_column_slice(center);
    let weights = (0..points.nrows())
        .map(|i| {
            let r = points.row(i).transpose() - &c;
            let q = r.dot(&(metric * &r));
            if q < -1e-12 * r.norm_squared().max(1.0) {
                Err(Error::invalid("prior metric is not positive semi-definite"))
            } else {
                Ok((-0.5 * q.max(0.0)).exp())
            }
        })
        .collect::<Result<Vec<_>>>()?;
    WeightVector::new(weights)
}

/// Gaussian prior with the isotropic metric `I / h²`.
pub fn isotropic_prior(points: &DMatrix<f64>, center: &[f64], bandwidth: f64) -> Result<WeightVector> {
    let d = points.ncols();
    let metric = DMatrix::identity(d, d) / (bandwidth * bandwidth);
    gaussian_prior(points, center, &metric)
}

/// Gaussian prior over temporal index offsets from `center`.
pub fn index_prior(len: usize, center: usize, bandwidth: f64) -> WeightVector {
    let w = (0..len)
        .map(|i| {
            let d = (i as f64 - center as f64) / bandwidth;
            (-0.5 * d * d).exp()
        })
        .collect();
    WeightVector(w)
}
