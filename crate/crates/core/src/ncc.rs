//! Nonlinear correlation coefficient on a `b x b` grid of equal-frequency
//! rank bins, with base-`b` entropies.
//!
//! Points are ranked separately in x and y (ties broken by input order).
//! Rank position `p` (0-based) lands in bin `k` where
//! `floor(k n / b) <= p < floor((k+1) n / b)`, so every bin holds `n/b`
//! points when `b | n` and within one of it otherwise.

use crate::error::{CorrError, Result};
use crate::sample::PairedSample;

pub const DEFAULT_BINS: usize = 10;

/// Joint counts of x-rank bins (columns) against y-rank bins (rows).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinGrid {
    b: usize,
    n: usize,
    /// Row-major, `counts[row * b + col]`.
    counts: Vec<u64>,
    row_counts: Vec<u64>,
    col_counts: Vec<u64>,
}

impl BinGrid {
    pub fn bins(&self) -> usize {
        self.b
    }

    pub fn total(&self) -> usize {
        self.n
    }

    /// Count at y-bin `row`, x-bin `col`.
    pub fn count(&self, row: usize, col: usize) -> u64 {
        self.counts[row * self.b + col]
    }

    pub fn row_counts(&self) -> &[u64] {
        &self.row_counts
    }

    pub fn col_counts(&self) -> &[u64] {
        &self.col_counts
    }

    pub fn transposed(&self) -> BinGrid {
        let b = self.b;
        let mut counts = vec![0; b * b];
        for r in 0..b {
            for c in 0..b {
                counts[c * b + r] = self.counts[r * b + c];
            }
        }
        BinGrid {
            b,
            n: self.n,
            counts,
            row_counts: self.col_counts.clone(),
            col_counts: self.row_counts.clone(),
        }
    }

    /// Base-`b` entropy of the x-bin marginal.
    pub fn entropy_x(&self) -> f64 {
        entropy(&self.col_counts, self.n, self.b)
    }

    /// Base-`b` entropy of the y-bin marginal.
    pub fn entropy_y(&self) -> f64 {
        entropy(&self.row_counts, self.n, self.b)
    }

    /// Base-`b` joint entropy over all `b²` regions.
    pub fn entropy_joint(&self) -> f64 {
        entropy(&self.counts, self.n, self.b)
    }

    /// `H(X) + H(Y) - H(X,Y)`, clamped to `[0, 1]` against rounding.
    pub fn ncc(&self) -> f64 {
        (self.entropy_x() + self.entropy_y() - self.entropy_joint()).clamp(0.0, 1.0)
    }
}

/// Entropy of a count histogram. Depends only on the multiset of counts
/// (summed in ascending count order), so permuting cells, e.g. transposing
/// the grid, gives a bit-identical result. Empty cells contribute 0.
fn entropy(counts: &[u64], n: usize, base: usize) -> f64 {
    let mut sorted: Vec<u64> = counts.iter().copied().filter(|&c| c > 0).collect();
    sorted.sort_unstable();
    let ln_base = (base as f64).ln();
    let nf = n as f64;
    let mut h = 0.0;
    for c in sorted {
        let p = c as f64 / nf;
        h -= p * (p.ln() / ln_base);
    }
    h
}

/// Bin index of each point along one axis.
fn rank_bins(v: &[f64], b: usize) -> Vec<usize> {
    let n = v.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| v[i].total_cmp(&v[j]));
    let mut bins = vec![0; n];
    for (p, &i) in order.iter().enumerate() {
        // largest k with floor(k n / b) <= p, i.e. ceil((p+1) b / n) - 1
        bins[i] = ((p + 1) * b).div_ceil(n) - 1;
    }
    bins
}

pub fn build_bin_grid(s: &PairedSample, b: usize) -> Result<BinGrid> {
    if b < 2 {
        return Err(CorrError::InvalidBinCount(b));
    }
    let n = s.len();
    if n < b {
        return Err(CorrError::TooFewPoints { n, b });
    }
    let cols = rank_bins(s.xs(), b);
    let rows = rank_bins(s.ys(), b);
    let mut counts = vec![0u64; b * b];
    let mut row_counts = vec![0u64; b];
    let mut col_counts = vec![0u64; b];
    for (&r, &c) in rows.iter().zip(&cols) {
        counts[r * b + c] += 1;
        row_counts[r] += 1;
        col_counts[c] += 1;
    }
    Ok(BinGrid {
        b,
        n,
        counts,
        row_counts,
        col_counts,
    })
}

pub fn ncc(s: &PairedSample, b: usize) -> Result<f64> {
    Ok(build_bin_grid(s, b)?.ncc())
}
