use nalgebra::DMatrix;

use super::pca::{weighted_pca, PcaFit};
use super::WeightVector;
use crate::error::{Error, Result};

/// Residual floor in the reweighting step.
pub const DEFAULT_DELTA: f64 = 1e-6;

pub const DEFAULT_IRLS_ITERATIONS: usize = 5;

/// Output of [`irls_wpca`].
#[derive(Debug, Clone)]
pub struct IrlsFit {
    /// Fit of the last round.
    pub fit: PcaFit,
    /// Weights after the last reweighting, normalized to unit L2 norm.
    pub weights: WeightVector,
}

/// Iteratively reweighted principal line fit.
///
/// Each of the `iterations` rounds fits a weighted principal line, resets
/// every weight to `1 / max(δ, ‖rₖ‖)` from its residual `rₖ`, and damps the
/// result by the prior: `w ← w ∘ w⁰ / ‖w ∘ w⁰‖`. The fit of the final round
/// is returned together with the weights it produced.
pub fn irls_wpca(points: &DMatrix<f64>, prior: &WeightVector, iterations: usize, delta: f64) -> Result<IrlsFit> {
    if iterations == 0 {
        return Err(Error::invalid("IRLS needs at least one iteration"));
    }
    if !(delta.is_finite() && delta > 0.0) {
        return Err(Error::invalid(format!("IRLS residual floor must be positive, got {delta}")));
    }
    let mut weights = prior.clone();
    let mut last = None;
    for _ in 0..iterations {
        let fit = weighted_pca(points, &weights)?;
        let damped: Vec<f64> = fit
            .residuals(points)
            .iter()
            .zip(prior.as_slice())
            .map(|(r, w0)| w0 / r.max(delta))
            .collect();
        let norm = damped.iter().map(|w| w * w).sum::<f64>().sqrt();
        weights = WeightVector::new(damped.iter().map(|w| w / norm).collect())?;
        last = Some(fit);
    }
    Ok(IrlsFit {
        fit: last.expect("at least one iteration"),
        weights,
    })
}
