//! Weighted principal line fits, with and without reweighting.

use dqfilter::regression::{index_prior, irls_wpca, weighted_pca, WeightVector};
use nalgebra::DMatrix;

fn main() -> dqfilter::Result<()> {
    // Points near the line y = 2x with one far outlier.
    let mut rows: Vec<[f64; 2]> = (0..11).map(|i| {
        let x = i as f64 * 0.1;
        [x, 2.0 * x + 0.01 * ((i * 7 % 5) as f64 - 2.0)]
    }).collect();
    rows[7][1] += 0.3;
    let points = DMatrix::from_fn(rows.len(), 2, |i, j| rows[i][j]);

    let plain = weighted_pca(&points, &WeightVector::uniform(rows.len()))?;
    println!("PCA direction      {:.5?}", plain.line.direction.as_slice());

    let prior = index_prior(rows.len(), 5, 2.5);
    let weighted = weighted_pca(&points, &prior)?;
    println!("wPCA direction     {:.5?}", weighted.line.direction.as_slice());

    let robust = irls_wpca(&points, &prior, 5, 1e-6)?;
    println!("IRLS direction     {:.5?}", robust.fit.line.direction.as_slice());
    println!("ideal direction    {:.5?}", nalgebra::Vector2::new(1.0, 2.0).normalize().as_slice());
    println!("final IRLS weights {:.3?}", robust.weights.as_slice());
    let p = &robust.fit.projections;
    println!("centre projected to [{:.5}, {:.5}]", p[(5, 0)], p[(5, 1)]);
    Ok(())
}
