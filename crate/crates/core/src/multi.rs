//! Multidimensional g-correlation.
//!
//! The feature vectors are projected onto the Fisher discriminant direction
//! between the two median classes of Y (`y > ỹ` and `y < ỹ`), and the 1-D
//! sweep from [`crate::gcorr`] runs on the projection. The separating
//! hyperplane is `normal · x = offset`.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{CorrError, Result};
use crate::gcorr::{fit_g, Diagonal, QuadrantCounts};
use crate::sample::{sample_median, MultiSample, PairedSample};

pub const MAX_FEATURES: usize = 16;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HyperplaneFit {
    /// Unit normal; its first nonzero component is positive.
    pub normal: Vec<f64>,
    /// Cut along `normal`; rows with `normal · x <= offset` are on the left.
    pub offset: f64,
    pub omega: f64,
    pub y_median: f64,
    pub dominant_diagonal: Diagonal,
    pub counts: QuadrantCounts,
    pub removed_ties: usize,
}

impl HyperplaneFit {
    pub fn project(&self, row: &[f64]) -> f64 {
        dot(&self.normal, row)
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Fisher direction `S_w⁻¹ (μ₁ - μ₂)` for the median classes.
///
/// Falls back to `e₁` when a class is empty or the class means coincide.
/// A singular scatter matrix is retried once with `ε I`,
/// `ε = 1e-9 · trace / M`.
pub fn discriminant_direction(s: &MultiSample, y_median: f64) -> Result<Vec<f64>> {
    let m = s.dim();
    let mut e1 = vec![0.0; m];
    e1[0] = 1.0;
    if m == 1 {
        return Ok(e1);
    }

    let (above, below): (Vec<&Vec<f64>>, Vec<&Vec<f64>>) = {
        let mut a = Vec::new();
        let mut b = Vec::new();
        for (row, &y) in s.x_rows().iter().zip(s.ys()) {
            if y > y_median {
                a.push(row);
            } else if y < y_median {
                b.push(row);
            }
        }
        (a, b)
    };
    if above.is_empty() || below.is_empty() {
        return Ok(e1);
    }

    let mean = |rows: &[&Vec<f64>]| -> DVector<f64> {
        let mut mu = DVector::zeros(m);
        for r in rows {
            mu += DVector::from_column_slice(r);
        }
        mu / rows.len() as f64
    };
    let mu1 = mean(&above);
    let mu2 = mean(&below);

    let mut scatter = DMatrix::<f64>::zeros(m, m);
    for (rows, mu) in [(&above, &mu1), (&below, &mu2)] {
        for r in rows.iter() {
            let d = DVector::from_column_slice(r) - mu;
            scatter += &d * d.transpose();
        }
    }

    let diff = &mu1 - &mu2;
    let w = match scatter.clone().cholesky() {
        Some(ch) => ch.solve(&diff),
        None => {
            let eps = 1e-9 * scatter.trace() / m as f64;
            if eps.is_nan() || eps <= 0.0 {
                return Err(CorrError::SingularScatter);
            }
            let reg = scatter + DMatrix::identity(m, m) * eps;
            reg.cholesky().ok_or(CorrError::SingularScatter)?.solve(&diff)
        }
    };

    let norm = w.norm();
    if !norm.is_finite() || norm <= 0.0 {
        return Ok(e1);
    }
    let mut w: Vec<f64> = w.iter().map(|v| v / norm).collect();
    if let Some(first) = w.iter().find(|v| **v != 0.0) {
        if *first < 0.0 {
            w.iter_mut().for_each(|v| *v = -*v);
        }
    }
    Ok(w)
}

/// Fits a separating hyperplane. For `M = 1` this is exactly [`fit_g`] on
/// the single feature.
pub fn fit_g_multi(s: &MultiSample) -> Result<HyperplaneFit> {
    let m = s.dim();
    if m > MAX_FEATURES {
        return Err(CorrError::TooManyFeatures(m));
    }
    let y_median = sample_median(s.ys())?;
    let kept = s.ys().iter().filter(|&&y| y != y_median).count();
    if kept == 0 {
        return Err(CorrError::ConstantY);
    }
    if kept < m + 2 {
        return Err(CorrError::ShortSample { n: kept, min: m + 2 });
    }

    let normal = discriminant_direction(s, y_median)?;
    let projected: Vec<f64> = if m == 1 {
        s.x_rows().iter().map(|r| r[0]).collect()
    } else {
        s.x_rows().iter().map(|r| dot(&normal, r)).collect()
    };
    let fit = fit_g(&PairedSample::new(projected, s.ys().to_vec())?)?;
    debug_assert_eq!(fit.y_median, y_median);
    Ok(HyperplaneFit {
        normal,
        offset: fit.c,
        omega: fit.omega,
        y_median,
        dominant_diagonal: fit.dominant_diagonal,
        counts: fit.counts,
        removed_ties: fit.removed_ties,
    })
}
