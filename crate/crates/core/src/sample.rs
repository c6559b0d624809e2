//! Validated input containers, summary statistics, and the seeded RNG.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{CorrError, Result};

/// `n >= 2` paired, finite observations `(x_i, y_i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PairedSample {
    xs: Vec<f64>,
    ys: Vec<f64>,
}

impl PairedSample {
    pub fn new(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        if xs.len() != ys.len() {
            return Err(CorrError::LengthMismatch {
                left: xs.len(),
                right: ys.len(),
            });
        }
        if xs.len() < 2 {
            return Err(CorrError::ShortSample { n: xs.len(), min: 2 });
        }
        if let Some(i) = xs
            .iter()
            .zip(&ys)
            .position(|(x, y)| !x.is_finite() || !y.is_finite())
        {
            return Err(CorrError::NonFiniteValue(i + 1));
        }
        Ok(Self { xs, ys })
    }

    pub fn from_pairs(pairs: &[(f64, f64)]) -> Result<Self> {
        let (xs, ys) = pairs.iter().copied().unzip();
        Self::new(xs, ys)
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn ys(&self) -> &[f64] {
        &self.ys
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    /// Always false; a valid sample holds at least two points.
    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    /// The sample with the roles of X and Y exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            xs: self.ys.clone(),
            ys: self.xs.clone(),
        }
    }

    /// Rows at `indices`, in that order. Fails if fewer than two indices.
    pub fn subset(&self, indices: &[usize]) -> Result<Self> {
        let xs = indices.iter().map(|&i| self.xs[i]).collect();
        let ys = indices.iter().map(|&i| self.ys[i]).collect();
        Self::new(xs, ys)
    }

    pub fn into_parts(self) -> (Vec<f64>, Vec<f64>) {
        (self.xs, self.ys)
    }
}

/// `n` observations of `(x_1..x_M, y)` with `1 <= M`.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiSample {
    x_rows: Vec<Vec<f64>>,
    ys: Vec<f64>,
    dim: usize,
}

impl MultiSample {
    pub fn new(x_rows: Vec<Vec<f64>>, ys: Vec<f64>) -> Result<Self> {
        if x_rows.len() != ys.len() {
            return Err(CorrError::LengthMismatch {
                left: x_rows.len(),
                right: ys.len(),
            });
        }
        if ys.len() < 2 {
            return Err(CorrError::ShortSample { n: ys.len(), min: 2 });
        }
        let dim = x_rows[0].len();
        if dim == 0 {
            return Err(CorrError::InvalidParams("feature dimension is zero".into()));
        }
        for (i, (row, y)) in x_rows.iter().zip(&ys).enumerate() {
            if row.len() != dim {
                return Err(CorrError::LengthMismatch {
                    left: dim,
                    right: row.len(),
                });
            }
            if !y.is_finite() || row.iter().any(|v| !v.is_finite()) {
                return Err(CorrError::NonFiniteValue(i + 1));
            }
        }
        Ok(Self { x_rows, ys, dim })
    }

    /// Builds a sample from feature columns rather than rows.
    pub fn from_columns(columns: &[Vec<f64>], ys: Vec<f64>) -> Result<Self> {
        if columns.is_empty() {
            return Err(CorrError::InvalidParams("no feature columns".into()));
        }
        let n = ys.len();
        if let Some(bad) = columns.iter().find(|c| c.len() != n) {
            return Err(CorrError::LengthMismatch {
                left: n,
                right: bad.len(),
            });
        }
        let rows = (0..n)
            .map(|i| columns.iter().map(|c| c[i]).collect())
            .collect();
        Self::new(rows, ys)
    }

    pub fn x_rows(&self) -> &[Vec<f64>] {
        &self.x_rows
    }

    pub fn ys(&self) -> &[f64] {
        &self.ys
    }

    pub fn len(&self) -> usize {
        self.ys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ys.is_empty()
    }

    /// Number of features `M`.
    pub fn dim(&self) -> usize {
        self.dim
    }
}

pub fn sample_mean(v: &[f64]) -> Result<f64> {
    if v.is_empty() {
        return Err(CorrError::EmptyInput);
    }
    Ok(v.iter().sum::<f64>() / v.len() as f64)
}

/// Middle order statistic for odd `n`, mean of the two middle ones for even `n`.
pub fn sample_median(v: &[f64]) -> Result<f64> {
    if v.is_empty() {
        return Err(CorrError::EmptyInput);
    }
    let mut buf = v.to_vec();
    let n = buf.len();
    let mid = n / 2;
    let (lower, upper, _) = buf.select_nth_unstable_by(mid, f64::total_cmp);
    let upper = *upper;
    if n % 2 == 1 {
        Ok(upper)
    } else {
        let lower_max = lower.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Ok((lower_max + upper) / 2.0)
    }
}

/// Seed for every random stream in the crate.
///
/// Streams are ChaCha8 (`rand_chacha`), which is portable and stable across
/// platforms. Independent sub-streams for parallel work come from
/// [`RngSeed::stream`], which selects a ChaCha stream id instead of
/// re-seeding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RngSeed(pub u64);

impl RngSeed {
    pub fn rng(self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.0)
    }

    pub fn stream(self, index: u64) -> ChaCha8Rng {
        let mut rng = self.rng();
        rng.set_stream(index);
        rng
    }
}

impl From<u64> for RngSeed {
    fn from(seed: u64) -> Self {
        RngSeed(seed)
    }
}
