use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::irls::{irls_wpca, DEFAULT_DELTA, DEFAULT_IRLS_ITERATIONS};
use super::pca::weighted_pca;
use super::prior::{index_prior, isotropic_prior, PriorMode};
use super::WeightVector;
use crate::dual::RigidPose;
use crate::error::{Error, Result};
use crate::manifold::PoseSpace;
use crate::trajectory::PoseTrajectory;

/// Line-fitting method used inside each window.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Uniform weights, single fit.
    Pca,
    /// Gaussian prior weights, single fit.
    Wpca,
    /// Gaussian prior weights, iteratively reweighted.
    Irls,
}

/// Which pose manifold the regression runs on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Space {
    /// Unit dual quaternions, rotation and translation jointly.
    #[serde(rename = "dq")]
    Dual,
    /// Unit quaternions and Euclidean translations, filtered independently.
    #[serde(rename = "qt")]
    Split,
}

impl Space {
    pub fn tag(&self) -> &'static str {
        match self {
            Space::Dual => "dq",
            Space::Split => "qt",
        }
    }
}

impl std::str::FromStr for Space {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dq" => Ok(Space::Dual),
            "qt" => Ok(Space::Split),
            other => Err(Error::Config(format!("unknown space `{other}` (expected dq or qt)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FilterConfig {
    /// Odd window size `K ≥ 3`.
    pub window: usize,
    pub method: Method,
    pub irls_iterations: usize,
    pub delta: f64,
    pub prior: PriorMode,
}

impl Default for FilterConfig {
    fn default() -> Self {
        Self {
            window: 19,
            method: Method::Irls,
            irls_iterations: DEFAULT_IRLS_ITERATIONS,
            delta: DEFAULT_DELTA,
            prior: PriorMode::default(),
        }
    }
}

impl FilterConfig {
    pub fn new(window: usize, method: Method) -> Self {
        Self {
            window,
            method,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.window < 3 || self.window % 2 == 0 {
            return Err(Error::InvalidArgument(format!(
                "window size must be odd and at least 3, got {}",
                self.window
            )));
        }
        if self.method == Method::Irls && self.irls_iterations == 0 {
            return Err(Error::InvalidArgument("IRLS needs at least one iteration".into()));
        }
        if !(self.delta.is_finite() && self.delta > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "IRLS residual floor must be positive, got {}",
                self.delta
            )));
        }
        self.prior.validate()
    }

    fn prior_weights(&self, tangents: &DMatrix<f64>, center: usize) -> Result<WeightVector> {
        let k = tangents.nrows();
        match (self.method, self.prior) {
            (Method::Pca, _) => Ok(WeightVector::uniform(k)),
            (_, PriorMode::Index { bandwidth }) => {
                let h = bandwidth.unwrap_or((self.window - 1) as f64 / 4.0);
                Ok(index_prior(k, center, h))
            }
            (_, PriorMode::Tangent { bandwidth }) => {
                let c: Vec<f64> = tangents.row(center).iter().copied().collect();
                isotropic_prior(tangents, &c, bandwidth)
            }
        }
    }
}

/// Smooths an ordered sequence on any [`PoseSpace`].
///
/// For every sample the window of `K` neighbours (clipped at the sequence
/// ends) is mapped to the tangent space at that sample, a principal line is
/// fitted, and the sample's projection onto the line is mapped back.
pub fn filter_sequence<M: PoseSpace>(poses: &[M], cfg: &FilterConfig) -> Result<Vec<M>> {
    cfg.validate()?;
    let half = cfg.window / 2;
    let n = poses.len();
    let mut out = Vec::with_capacity(n);
    for (i, x) in poses.iter().enumerate() {
        let lo = i.saturating_sub(half);
        let hi = (i + half + 1).min(n);
        if hi - lo < 2 {
            out.push(*x);
            continue;
        }
        let center = i - lo;
        let mut tangents = DMatrix::zeros(hi - lo, M::TANGENT_DIM);
        for (row, q) in poses[lo..hi].iter().enumerate() {
            for (col, v) in x.log_at(q).into_iter().enumerate() {
                tangents[(row, col)] = v;
            }
        }
        let prior = cfg.prior_weights(&tangents, center)?;
        let fit = match cfg.method {
            Method::Pca | Method::Wpca => weighted_pca(&tangents, &prior)?,
            Method::Irls => irls_wpca(&tangents, &prior, cfg.irls_iterations, cfg.delta)?.fit,
        };
        let projected: Vec<f64> = fit.projections.row(center).iter().copied().collect();
        if projected.iter().all(|c| *c == 0.0) {
            out.push(*x);
        } else {
            out.push(x.exp_at(&projected));
        }
    }
    Ok(out)
}

/// Smooths a pose trajectory on the chosen space. In the split space the
/// rotations and the translations are filtered independently.
pub fn filter_trajectory(traj: &PoseTrajectory, space: Space, cfg: &FilterConfig) -> Result<PoseTrajectory> {
    match space {
        // Poses the filter left untouched are passed through as they are,
        // without a round trip through renormalization.
        Space::Dual => {
            let input = traj.to_dual();
            let filtered = filter_sequence(&input, cfg)?;
            Ok(filtered
                .iter()
                .zip(&input)
                .zip(traj.iter())
                .map(|((q, before), pose)| {
                    if q == before {
                        return *pose;
                    }
                    let q = q.renormalize();
                    RigidPose::new(q.rotation(), q.translation())
                })
                .collect())
        }
        Space::Split => {
            let rotations = filter_sequence(&traj.rotations(), cfg)?;
            let translations = filter_sequence(&traj.translations(), cfg)?;
            Ok(rotations
                .into_iter()
                .zip(translations)
                .zip(traj.iter())
                .map(|((r, t), pose)| {
                    let r = if r == pose.rotation { r } else { r.renormalize() };
                    RigidPose::new(r, t)
                })
                .collect())
        }
    }
}
