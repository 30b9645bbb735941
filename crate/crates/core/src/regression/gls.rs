use nalgebra::DMatrix;

use super::WeightVector;
use crate::error::{Error, Result};

/// Weighted least squares `β = (XᵀWX)⁻¹ XᵀWY` with diagonal `W`.
///
/// `x` is `K × p` (predictors, one sample per row), `y` is `K × q`.
pub fn weighted_least_squares(x: &DMatrix<f64>, y: &DMatrix<f64>, w: &WeightVector) -> Result<DMatrix<f64>> {
    let k = x.nrows();
    if y.nrows() != k || w.len() != k {
        return Err(Error::invalid(format!(
            "sample counts disagree: X has {k} rows, Y has {}, W has {}",
            y.nrows(),
            w.len()
        )));
    }
    let mut xtw = x.transpose();
    for (j, wj) in w.as_slice().iter().enumerate() {
        xtw.column_mut(j).scale_mut(*wj);
    }
    let normal = &xtw * x;
    let rhs = &xtw * y;
    normal
        .lu()
        .solve(&rhs)
        .filter(|b| b.iter().all(|v| v.is_finite()))
        .ok_or_else(|| Error::invalid("weighted normal equations are singular"))
}
