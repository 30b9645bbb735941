//! Robust local regression on tangent spaces.
//!
//! Each pose is smoothed by mapping its temporal neighbourhood into the
//! tangent space at that pose, fitting a line through the tangent points by
//! (weighted, optionally iteratively reweighted) principal component
//! analysis, projecting the centre onto the line and mapping it back.

mod filter;
mod gls;
mod irls;
mod pca;
mod prior;

pub use filter::{filter_sequence, filter_trajectory, FilterConfig, Method, Space};
pub use gls::weighted_least_squares;
pub use irls::{irls_wpca, IrlsFit, DEFAULT_DELTA, DEFAULT_IRLS_ITERATIONS};
pub use pca::{weighted_line_residual, weighted_pca, PcaFit, PrincipalLine};
pub use prior::{gaussian_prior, index_prior, isotropic_prior, PriorMode};

use crate::error::{Error, Result};

/// Nonnegative per-sample weights, not all zero.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector(Vec<f64>);

impl WeightVector {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::invalid("weight vector is empty"));
        }
        if let Some(w) = weights.iter().find(|w| !(w.is_finite() && **w >= 0.0)) {
            return Err(Error::invalid(format!("weight {w} is not a finite nonnegative number")));
        }
        if weights.iter().all(|w| *w == 0.0) {
            return Err(Error::invalid("all weights are zero"));
        }
        Ok(Self(weights))
    }

    pub fn uniform(len: usize) -> Self {
        Self(vec![1.0; len.max(1)])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }
}
