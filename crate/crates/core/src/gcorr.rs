//! g-correlation: the best two-quadrant classification rate obtainable by
//! splitting the plane with the horizontal line `y = ỹ` (the median of Y)
//! and a vertical line `x = c`.
//!
//! Quadrant classes (points with `y == ỹ` belong to none):
//!
//! ```text
//! C1+ : x >  c, y > ỹ      C1- : x <= c, y > ỹ
//! C2+ : x >  c, y < ỹ      C2- : x <= c, y < ỹ
//! g(c) = max{ P(C1+) + P(C2-), P(C1-) + P(C2+) }
//! ```
//!
//! The coefficient ω is the maximum of `g` over `c`, which lies in
//! `[0.5, 1]`. Before fitting, every point with `y == ỹ` is removed, with
//! `ỹ` computed on the original sample.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use rand::seq::SliceRandom;

use crate::error::{CorrError, Result};
use crate::sample::{sample_median, PairedSample, RngSeed};

/// Which pair of opposite quadrants carries the classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Diagonal {
    /// `C1+` and `C2-`: larger x goes with larger y.
    Main,
    /// `C1-` and `C2+`: larger x goes with smaller y.
    Anti,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadrantCounts {
    pub c1_plus: usize,
    pub c1_minus: usize,
    pub c2_plus: usize,
    pub c2_minus: usize,
}

impl QuadrantCounts {
    pub fn main(&self) -> usize {
        self.c1_plus + self.c2_minus
    }

    pub fn anti(&self) -> usize {
        self.c1_minus + self.c2_plus
    }

    pub fn classified(&self) -> usize {
        self.main() + self.anti()
    }
}

/// Result of [`fit_g`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GCorrFit {
    /// Vertical cut; points with `x <= c` are on the left.
    pub c: f64,
    pub y_median: f64,
    pub omega: f64,
    pub dominant_diagonal: Diagonal,
    pub counts: QuadrantCounts,
    /// Points dropped because `y == ỹ`.
    pub removed_ties: usize,
}

/// Sample with median ties removed.
#[derive(Debug, Clone, PartialEq)]
pub struct TieFiltered {
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
    pub removed: usize,
    pub y_median: f64,
}

impl TieFiltered {
    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    pub fn into_sample(self) -> Result<PairedSample> {
        PairedSample::new(self.xs, self.ys)
    }
}

/// Drops every row whose y equals the median of the original ys.
pub fn preprocess_ties(s: &PairedSample) -> Result<TieFiltered> {
    let y_median = sample_median(s.ys())?;
    let (xs, ys): (Vec<f64>, Vec<f64>) = s
        .xs()
        .iter()
        .zip(s.ys())
        .filter(|(_, &y)| y != y_median)
        .map(|(&x, &y)| (x, y))
        .unzip();
    if xs.is_empty() {
        return Err(CorrError::AllTied);
    }
    let removed = s.len() - xs.len();
    Ok(TieFiltered {
        xs,
        ys,
        removed,
        y_median,
    })
}

/// Counts the four quadrants for a fixed `(c, ỹ)`.
pub fn quadrant_counts(xs: &[f64], ys: &[f64], c: f64, y_median: f64) -> QuadrantCounts {
    let mut q = QuadrantCounts::default();
    for (&x, &y) in xs.iter().zip(ys) {
        match (x > c, y > y_median, y < y_median) {
            (true, true, _) => q.c1_plus += 1,
            (false, true, _) => q.c1_minus += 1,
            (true, _, true) => q.c2_plus += 1,
            (false, _, true) => q.c2_minus += 1,
            _ => {}
        }
    }
    q
}

/// Evaluates `g(c)` with fixed `c` and `ỹ`. Points with `y == ỹ` count in
/// the denominator but in neither diagonal. Ties between the diagonals
/// report [`Diagonal::Main`].
pub fn g_objective(s: &PairedSample, c: f64, y_median: f64) -> (f64, QuadrantCounts, Diagonal) {
    g_objective_slices(s.xs(), s.ys(), c, y_median)
}

fn g_objective_slices(xs: &[f64], ys: &[f64], c: f64, y_median: f64) -> (f64, QuadrantCounts, Diagonal) {
    let q = quadrant_counts(xs, ys, c, y_median);
    let (best, diagonal) = if q.main() >= q.anti() {
        (q.main(), Diagonal::Main)
    } else {
        (q.anti(), Diagonal::Anti)
    };
    (best as f64 / xs.len() as f64, q, diagonal)
}

/// Candidate cuts on x-sorted data: one sentinel below the minimum, then the
/// midpoints of all successive pairs, in ascending order.
pub fn candidate_cuts(sorted_xs: &[f64]) -> Vec<f64> {
    let lo = sorted_xs[0];
    let hi = sorted_xs[sorted_xs.len() - 1];
    let mut cuts = Vec::with_capacity(sorted_xs.len());
    cuts.push(sentinel_cut(lo, hi));
    cuts.extend(sorted_xs.windows(2).map(|w| (w[0] + w[1]) / 2.0));
    cuts
}

/// Strictly below `lo`; moves with the data under positive affine maps.
fn sentinel_cut(lo: f64, hi: f64) -> f64 {
    lo - (hi - lo)
}

/// Fits `c` by sweeping every candidate cut with incremental counts.
///
/// The tie-filtered sample is sorted by x. Starting from the sentinel
/// (nothing on the left) the sweep keeps `p1 = #{x <= c, y < ỹ}` and
/// `p2 = #{x > c, y > ỹ}`, advancing a pointer over the points that cross
/// each successive cut. The score at a cut is
/// `max(p1 + p2, q - p1 - p2) / q`; the smallest cut attaining the maximum
/// wins.
pub fn fit_g(s: &PairedSample) -> Result<GCorrFit> {
    let filtered = preprocess_ties(s)?;
    fit_filtered(&filtered)
}

fn fit_filtered(f: &TieFiltered) -> Result<GCorrFit> {
    let q = f.len();
    if q < 2 {
        return Err(CorrError::ShortSample { n: q, min: 2 });
    }
    let y_median = f.y_median;
    let mut order: Vec<usize> = (0..q).collect();
    order.sort_by(|&a, &b| f.xs[a].total_cmp(&f.xs[b]));
    let xs: Vec<f64> = order.iter().map(|&i| f.xs[i]).collect();
    let above: Vec<bool> = order.iter().map(|&i| f.ys[i] > y_median).collect();
    if xs[0] == xs[q - 1] {
        return Err(CorrError::ConstantX);
    }

    let cuts = candidate_cuts(&xs);
    let mut p1 = 0usize;
    let mut p2 = above.iter().filter(|&&a| a).count();
    let mut next = 0usize;

    let mut best_score = 0usize;
    let mut best_cut = cuts[0];
    for &c in &cuts {
        while next < q && xs[next] <= c {
            if above[next] {
                p2 -= 1;
            } else {
                p1 += 1;
            }
            next += 1;
        }
        let main = p1 + p2;
        let score = main.max(q - main);
        if score > best_score {
            best_score = score;
            best_cut = c;
        }
    }

    let (omega, counts, dominant_diagonal) = g_objective_slices(&f.xs, &f.ys, best_cut, y_median);
    debug_assert_eq!(omega, best_score as f64 / q as f64);
    Ok(GCorrFit {
        c: best_cut,
        y_median,
        omega,
        dominant_diagonal,
        counts,
        removed_ties: f.removed,
    })
}

/// ω value used when a fit is impossible because X or Y is constant: the
/// variables are uncorrelated.
pub const UNCORRELATED_OMEGA: f64 = 0.5;

/// Maps constant-X / constant-Y failures to ω = 0.5 with a reason; other
/// errors pass through.
pub fn omega_or_uncorrelated(s: &PairedSample) -> Result<(f64, Option<&'static str>)> {
    match fit_g(s) {
        Ok(fit) => Ok((fit.omega, None)),
        Err(CorrError::AllTied) => Ok((UNCORRELATED_OMEGA, Some("Y constant: uncorrelated"))),
        Err(CorrError::ConstantX) => Ok((UNCORRELATED_OMEGA, Some("X constant: uncorrelated"))),
        Err(e) => Err(e),
    }
}

/// Predicted side of the median.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MedianSide {
    AboveMedian,
    BelowMedian,
}

pub fn g_predict(x: f64, fit: &GCorrFit) -> MedianSide {
    let right = x > fit.c;
    match (fit.dominant_diagonal, right) {
        (Diagonal::Main, true) | (Diagonal::Anti, false) => MedianSide::AboveMedian,
        _ => MedianSide::BelowMedian,
    }
}

/// Repeated random train/evaluation partitions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitPlan {
    pub train_size: usize,
    pub eval_size: usize,
    pub iterations: usize,
    pub seed: RngSeed,
}

pub const DEFAULT_ITERATIONS: usize = 10_000;

impl SplitPlan {
    pub fn new(train_size: usize, eval_size: usize, iterations: usize, seed: RngSeed) -> Result<Self> {
        let plan = SplitPlan {
            train_size,
            eval_size,
            iterations,
            seed,
        };
        plan.check()?;
        Ok(plan)
    }

    fn check(&self) -> Result<()> {
        if self.train_size < 2 {
            return Err(CorrError::InvalidPlan("train_size must be at least 2".into()));
        }
        if self.eval_size < 1 {
            return Err(CorrError::InvalidPlan("eval_size must be at least 1".into()));
        }
        if self.iterations < 1 {
            return Err(CorrError::InvalidPlan("iterations must be at least 1".into()));
        }
        Ok(())
    }

    /// Validates the plan against a sample of size `n`.
    pub fn check_for(&self, n: usize) -> Result<()> {
        self.check()?;
        if self.train_size + self.eval_size > n {
            return Err(CorrError::InvalidPlan(format!(
                "train_size {} + eval_size {} exceeds n = {n}",
                self.train_size, self.eval_size
            )));
        }
        Ok(())
    }

    /// Train and evaluation row indices for iteration `i`; depends only on
    /// the seed and `i`.
    pub fn partition(&self, n: usize, i: usize) -> (Vec<usize>, Vec<usize>) {
        let mut idx: Vec<usize> = (0..n).collect();
        idx.shuffle(&mut self.seed.stream(i as u64));
        let eval = idx[self.train_size..self.train_size + self.eval_size].to_vec();
        idx.truncate(self.train_size);
        (idx, eval)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SplitEstimate {
    pub omega_mean: f64,
    /// Sample standard deviation across iterations (0 for one iteration).
    pub omega_stddev: f64,
    pub iterations: usize,
    /// Iterations whose training partition had constant X or Y.
    pub degenerate: usize,
}

/// One train/eval round: fit on training rows, score the fixed `(c, ỹ)` on
/// evaluation rows. Degenerate training partitions score 0.5.
fn split_round(s: &PairedSample, train: &[usize], eval: &[usize]) -> (f64, bool) {
    let fit = match s.subset(train).and_then(|t| fit_g(&t)) {
        Ok(fit) => fit,
        Err(_) => return (UNCORRELATED_OMEGA, true),
    };
    let ex: Vec<f64> = eval.iter().map(|&i| s.xs()[i]).collect();
    let ey: Vec<f64> = eval.iter().map(|&i| s.ys()[i]).collect();
    (g_objective_slices(&ex, &ey, fit.c, fit.y_median).0, false)
}

/// Mean and spread of the evaluation-set g over repeated random splits.
///
/// Iterations run in parallel; each draws its partition from its own
/// ChaCha stream and the per-iteration values are reduced in iteration
/// order, so the result is identical for any thread count.
pub fn estimate_g(s: &PairedSample, plan: &SplitPlan) -> Result<SplitEstimate> {
    plan.check_for(s.len())?;
    let n = s.len();
    let rounds: Vec<(f64, bool)> = (0..plan.iterations)
        .into_par_iter()
        .map(|i| {
            let (train, eval) = plan.partition(n, i);
            split_round(s, &train, &eval)
        })
        .collect();

    let k = rounds.len() as f64;
    let mean = rounds.iter().map(|r| r.0).sum::<f64>() / k;
    let stddev = if rounds.len() > 1 {
        (rounds.iter().map(|r| (r.0 - mean).powi(2)).sum::<f64>() / (k - 1.0)).sqrt()
    } else {
        0.0
    };
    Ok(SplitEstimate {
        omega_mean: mean,
        omega_stddev: stddev,
        iterations: plan.iterations,
        degenerate: rounds.iter().filter(|r| r.1).count(),
    })
}
