//! Pearson, Spearman, Kendall and Fechner coefficients.
//!
//! Tie policies:
//! - Spearman ranks with averaged ties and takes the Pearson coefficient of
//!   the rank vectors. Without ties this equals `1 - 6Σd²/(n(n²-1))`.
//! - Kendall counts tied pairs as zero (tau-a); no tie correction.
//! - Fechner uses `sign(0) = +1`.

use serde::{Deserialize, Serialize};

use crate::error::{CorrError, Result};
use crate::sample::{sample_mean, PairedSample};

fn is_constant(v: &[f64]) -> bool {
    v.iter().all(|&x| x == v[0])
}

/// Pearson product-moment coefficient.
pub fn pearson(s: &PairedSample) -> Result<f64> {
    pearson_slices(s.xs(), s.ys())
}

fn pearson_slices(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if is_constant(xs) {
        return Err(CorrError::DegenerateVariance("x"));
    }
    if is_constant(ys) {
        return Err(CorrError::DegenerateVariance("y"));
    }
    let mx = sample_mean(xs)?;
    let my = sample_mean(ys)?;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (&x, &y) in xs.iter().zip(ys) {
        let dx = x - mx;
        let dy = y - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 {
        return Err(CorrError::DegenerateVariance("x"));
    }
    if syy == 0.0 {
        return Err(CorrError::DegenerateVariance("y"));
    }
    // sqrt of the product makes identical vectors give exactly 1
    let prod = sxx * syy;
    let denom = if prod.is_finite() { prod.sqrt() } else { sxx.sqrt() * syy.sqrt() };
    Ok((sxy / denom).clamp(-1.0, 1.0))
}

/// Ranks starting at 1; tied values share the mean of their positions.
#[derive(Debug, Clone, PartialEq)]
pub struct RankVector(pub Vec<f64>);

impl RankVector {
    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }
}

pub fn rank_with_average_ties(v: &[f64]) -> Result<RankVector> {
    if v.is_empty() {
        return Err(CorrError::EmptyInput);
    }
    let mut order: Vec<usize> = (0..v.len()).collect();
    order.sort_by(|&a, &b| v[a].total_cmp(&v[b]));
    let mut ranks = vec![0.0; v.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && v[order[end]] == v[order[start]] {
            end += 1;
        }
        // positions start..end (0-based) hold rank values start+1..=end
        let avg = (start + 1 + end) as f64 / 2.0;
        for &i in &order[start..end] {
            ranks[i] = avg;
        }
        start = end;
    }
    Ok(RankVector(ranks))
}

pub fn spearman(s: &PairedSample) -> Result<f64> {
    let rx = rank_with_average_ties(s.xs())?;
    let ry = rank_with_average_ties(s.ys())?;
    if is_constant(rx.as_slice()) {
        return Err(CorrError::DegenerateVariance("x ranks"));
    }
    if is_constant(ry.as_slice()) {
        return Err(CorrError::DegenerateVariance("y ranks"));
    }
    pearson_slices(rx.as_slice(), ry.as_slice())
}

/// Kendall's tau with tied pairs contributing zero, `2S / (n(n-1))`.
///
/// Uses Knight's O(n log n) method: sort by `(x, y)`, count the inversions
/// of the resulting y sequence with a merge sort, then correct for ties.
pub fn kendall(s: &PairedSample) -> Result<f64> {
    let n = s.len();
    let (xs, ys) = (s.xs(), s.ys());
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| xs[a].total_cmp(&xs[b]).then(ys[a].total_cmp(&ys[b])));

    let pairs = |t: usize| (t * t.saturating_sub(1) / 2) as i64;
    let n0 = pairs(n);

    let mut tied_x = 0i64;
    let mut tied_xy = 0i64;
    let mut i = 0;
    while i < n {
        let mut j = i + 1;
        while j < n && xs[order[j]] == xs[order[i]] {
            j += 1;
        }
        tied_x += pairs(j - i);
        let mut k = i;
        while k < j {
            let mut m = k + 1;
            while m < j && ys[order[m]] == ys[order[k]] {
                m += 1;
            }
            tied_xy += pairs(m - k);
            k = m;
        }
        i = j;
    }

    let mut seq: Vec<f64> = order.iter().map(|&i| ys[i]).collect();
    let mut scratch = vec![0.0; n];
    let discordant = merge_count(&mut seq, &mut scratch);

    let mut tied_y = 0i64;
    let mut i = 0;
    while i < n {
        let mut j = i + 1;
        while j < n && seq[j] == seq[i] {
            j += 1;
        }
        tied_y += pairs(j - i);
        i = j;
    }

    let score = n0 - tied_x - tied_y + tied_xy - 2 * discordant;
    Ok(2.0 * score as f64 / (n * (n - 1)) as f64)
}

/// Sorts `v` ascending and returns the number of strict inversions.
fn merge_count(v: &mut [f64], scratch: &mut [f64]) -> i64 {
    let n = v.len();
    if n < 2 {
        return 0;
    }
    let mid = n / 2;
    let mut count = {
        let (left, right) = v.split_at_mut(mid);
        let (sl, sr) = scratch.split_at_mut(mid);
        merge_count(left, sl) + merge_count(right, sr)
    };
    let (mut i, mut j, mut k) = (0, mid, 0);
    while i < mid && j < n {
        if v[j] < v[i] {
            scratch[k] = v[j];
            count += (mid - i) as i64;
            j += 1;
        } else {
            scratch[k] = v[i];
            i += 1;
        }
        k += 1;
    }
    scratch[k..k + mid - i].copy_from_slice(&v[i..mid]);
    k += mid - i;
    scratch[k..k + n - j].copy_from_slice(&v[j..n]);
    v.copy_from_slice(&scratch[..n]);
    count
}

/// `sign(u) = +1` for `u >= 0`, `-1` otherwise.
fn fechner_sign(u: f64) -> i64 {
    if u >= 0.0 {
        1
    } else {
        -1
    }
}

/// Fechner coefficient by the direct sign-product sum.
pub fn fechner_kappa(s: &PairedSample) -> Result<f64> {
    let mx = sample_mean(s.xs())?;
    let my = sample_mean(s.ys())?;
    let sum: i64 = s
        .xs()
        .iter()
        .zip(s.ys())
        .map(|(&x, &y)| fechner_sign(x - mx) * fechner_sign(y - my))
        .sum();
    Ok(sum as f64 / s.len() as f64)
}

/// Intermediate state of the sorted-binary-sequence computation of kappa.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FechnerTrace {
    /// Number of points with `x < x̄`; in x-sorted order these are exactly
    /// the first `i0` entries.
    pub i0: usize,
    /// `1` where `y >= ȳ`, in x-sorted order (stable for equal x).
    pub binary_seq: Vec<u8>,
    pub x_mean: f64,
    pub y_mean: f64,
    pub kappa: f64,
}

/// Fechner coefficient through the sort / binarize / count steps.
pub fn fechner(s: &PairedSample) -> Result<FechnerTrace> {
    let (xs, ys) = (s.xs(), s.ys());
    let x_mean = sample_mean(xs)?;
    let y_mean = sample_mean(ys)?;
    let mut order: Vec<usize> = (0..s.len()).collect();
    order.sort_by(|&a, &b| xs[a].total_cmp(&xs[b]));

    let i0 = order.iter().take_while(|&&i| xs[i] < x_mean).count();
    let binary_seq: Vec<u8> = order.iter().map(|&i| u8::from(ys[i] >= y_mean)).collect();

    let below: i64 = binary_seq[..i0].iter().map(|&b| 1 - 2 * b as i64).sum();
    let above: i64 = binary_seq[i0..].iter().map(|&b| 2 * b as i64 - 1).sum();
    let kappa = (below + above) as f64 / s.len() as f64;

    Ok(FechnerTrace {
        i0,
        binary_seq,
        x_mean,
        y_mean,
        kappa,
    })
}

/// Predicted position of `y` relative to its mean.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MeanSide {
    BelowMean,
    AtMean,
    AboveMean,
}

/// Fechner classification rule: the side of `ȳ` on which `y` falls, given
/// `x`, `x̄` and the sign of kappa.
pub fn fechner_predict(x: f64, x_mean: f64, kappa: f64) -> Result<MeanSide> {
    if x == x_mean {
        return Ok(MeanSide::AtMean);
    }
    if kappa == 0.0 {
        return Err(CorrError::UndefinedDirection);
    }
    let direction = if kappa > 0.0 { 1.0 } else { -1.0 };
    if (x - x_mean) * direction < 0.0 {
        Ok(MeanSide::BelowMean)
    } else {
        Ok(MeanSide::AboveMean)
    }
}

impl FechnerTrace {
    pub fn predict(&self, x: f64) -> Result<MeanSide> {
        fechner_predict(x, self.x_mean, self.kappa)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::RngSeed;
    use proptest::prelude::*;
    use rand::Rng;

    fn sample(xs: &[f64], ys: &[f64]) -> PairedSample {
        PairedSample::new(xs.to_vec(), ys.to_vec()).unwrap()
    }

    /// The defining O(n²) pair enumeration.
    fn kendall_oracle(xs: &[f64], ys: &[f64]) -> f64 {
        let n = xs.len();
        let mut sum = 0i64;
        for i in 0..n {
            for j in i + 1..n {
                let p = (xs[j] - xs[i]) * (ys[j] - ys[i]);
                sum += if p > 0.0 {
                    1
                } else if p < 0.0 {
                    -1
                } else {
                    0
                };
            }
        }
        2.0 * sum as f64 / (n * (n - 1)) as f64
    }

    fn rank_oracle(v: &[f64]) -> Vec<f64> {
        // rank = 1 + #smaller + (#equal - 1) / 2
        v.iter()
            .map(|&a| {
                let smaller = v.iter().filter(|&&b| b < a).count() as f64;
                let equal = v.iter().filter(|&&b| b == a).count() as f64;
                1.0 + smaller + (equal - 1.0) / 2.0
            })
            .collect()
    }

    #[test]
    fn pearson_lines() {
        let xs: Vec<f64> = (1..=10).map(f64::from).collect();
        let up: Vec<f64> = xs.iter().map(|x| 2.0 * x + 1.0).collect();
        let down: Vec<f64> = xs.iter().map(|x| -3.0 * x).collect();
        assert!((pearson(&sample(&xs, &up)).unwrap() - 1.0).abs() < 1e-9);
        assert!((pearson(&sample(&xs, &down)).unwrap() + 1.0).abs() < 1e-9);
    }

    #[test]
    fn pearson_small_exact() {
        // means 2.5, 2.5; Σdxdy = 3, Σdx² = Σdy² = 5 → r = 0.6 exactly
        let r = pearson(&sample(&[1.0, 2.0, 3.0, 4.0], &[2.0, 1.0, 4.0, 3.0])).unwrap();
        assert!((r - 0.6).abs() < 1e-15);
    }

    #[test]
    fn pearson_degenerate() {
        assert_eq!(
            pearson(&sample(&[1.0, 1.0, 1.0], &[1.0, 2.0, 3.0])),
            Err(CorrError::DegenerateVariance("x"))
        );
        assert_eq!(
            pearson(&sample(&[1.0, 2.0, 3.0], &[0.1, 0.1, 0.1])),
            Err(CorrError::DegenerateVariance("y"))
        );
    }

    #[test]
    fn ranks() {
        assert_eq!(rank_with_average_ties(&[10.0, 20.0, 30.0]).unwrap().0, vec![1.0, 2.0, 3.0]);
        assert_eq!(rank_with_average_ties(&[5.0, 5.0, 7.0]).unwrap().0, vec![1.5, 1.5, 3.0]);
        assert_eq!(rank_with_average_ties(&[]), Err(CorrError::EmptyInput));
    }

    #[test]
    fn ranks_match_oracle_with_duplicates() {
        let mut rng = RngSeed(31).rng();
        for _ in 0..50 {
            let n = rng.random_range(1..80);
            let v: Vec<f64> = (0..n).map(|_| rng.random_range(0..12) as f64 * 0.5).collect();
            let ranks = rank_with_average_ties(&v).unwrap();
            assert_eq!(ranks.0, rank_oracle(&v));
            let total: f64 = ranks.0.iter().sum();
            assert!((total - (n * (n + 1)) as f64 / 2.0).abs() < 1e-9);
        }
    }

    #[test]
    fn spearman_monotone() {
        let xs: Vec<f64> = (0..20).map(|i| i as f64).collect();
        let ys: Vec<f64> = xs.iter().map(|x| x.powi(3) + 1.0).collect();
        let rev: Vec<f64> = ys.iter().rev().copied().collect();
        assert_eq!(spearman(&sample(&xs, &ys)).unwrap(), 1.0);
        assert_eq!(spearman(&sample(&xs, &rev)).unwrap(), -1.0);
    }

    #[test]
    fn spearman_without_ties_matches_rank_difference_formula() {
        let mut rng = RngSeed(8).rng();
        for _ in 0..20 {
            let n = rng.random_range(3..60);
            let xs: Vec<f64> = (0..n).map(|_| rng.random()).collect();
            let ys: Vec<f64> = (0..n).map(|_| rng.random()).collect();
            let a = rank_oracle(&xs);
            let b = rank_oracle(&ys);
            let d2: f64 = a.iter().zip(&b).map(|(p, q)| (p - q).powi(2)).sum();
            let nf = n as f64;
            let formula = 1.0 - 6.0 * d2 / (nf * (nf * nf - 1.0));
            assert!((spearman(&sample(&xs, &ys)).unwrap() - formula).abs() < 1e-12);
        }
    }

    #[test]
    fn spearman_all_tied() {
        assert_eq!(
            spearman(&sample(&[1.0, 2.0, 3.0], &[4.0, 4.0, 4.0])),
            Err(CorrError::DegenerateVariance("y ranks"))
        );
    }

    #[test]
    fn kendall_examples() {
        let xs: Vec<f64> = (0..10).map(f64::from).collect();
        let ys: Vec<f64> = xs.iter().map(|x| x * x).collect();
        assert_eq!(kendall(&sample(&xs, &ys)).unwrap(), 1.0);
        assert_eq!(kendall(&sample(&xs, &[3.0; 10])).unwrap(), 0.0);
    }

    #[test]
    fn kendall_matches_enumeration() {
        let mut rng = RngSeed(50).rng();
        let xs: Vec<f64> = (0..50).map(|_| rng.random()).collect();
        let ys: Vec<f64> = (0..50).map(|_| rng.random()).collect();
        assert_eq!(kendall(&sample(&xs, &ys)).unwrap(), kendall_oracle(&xs, &ys));
    }

    #[test]
    fn fechner_line_is_sign_of_slope() {
        let mut rng = RngSeed(4).rng();
        let xs: Vec<f64> = (0..40).map(|_| rng.random_range(0.0..10.0)).collect();
        for (a, expected) in [(2.5, 1.0), (-0.7, -1.0)] {
            let ys: Vec<f64> = xs.iter().map(|x| a * x + 3.0).collect();
            assert_eq!(fechner(&sample(&xs, &ys)).unwrap().kappa, expected);
        }
    }

    #[test]
    fn fechner_trace_agrees_with_direct_sum() {
        let mut rng = RngSeed(30).rng();
        for _ in 0..100 {
            let xs: Vec<f64> = (0..30).map(|_| rng.random_range(0..8) as f64).collect();
            let ys: Vec<f64> = (0..30).map(|_| rng.random_range(0..8) as f64).collect();
            let s = sample(&xs, &ys);
            let trace = fechner(&s).unwrap();
            assert_eq!(trace.kappa.to_bits(), fechner_kappa(&s).unwrap().to_bits());
            assert_eq!(trace.binary_seq.len(), 30);
        }
    }

    #[test]
    fn fechner_zero_deviation_counts_as_positive() {
        // x̄ = 2 and ȳ = 2 are hit exactly by the middle point
        let trace = fechner(&sample(&[1.0, 2.0, 3.0], &[3.0, 2.0, 1.0])).unwrap();
        assert_eq!(trace.i0, 1);
        assert_eq!(trace.binary_seq, vec![1, 1, 0]);
        assert!((trace.kappa - (-1.0 / 3.0)).abs() < 1e-15);
    }

    #[test]
    fn fechner_prediction_rule() {
        assert_eq!(fechner_predict(3.0, 0.0, 1.0).unwrap(), MeanSide::AboveMean);
        assert_eq!(fechner_predict(3.0, 0.0, -1.0).unwrap(), MeanSide::BelowMean);
        assert_eq!(fechner_predict(0.0, 0.0, 0.0).unwrap(), MeanSide::AtMean);
        assert_eq!(fechner_predict(1.0, 0.0, 0.0), Err(CorrError::UndefinedDirection));
    }

    #[test]
    fn fechner_prediction_on_line_is_perfect() {
        let mut rng = RngSeed(12).rng();
        let xs: Vec<f64> = (0..60).map(|_| rng.random_range(-5.0..5.0)).collect();
        let ys: Vec<f64> = xs.iter().map(|x| 2.0 * x).collect();
        let trace = fechner(&sample(&xs, &ys)).unwrap();
        for (&x, &y) in xs.iter().zip(&ys) {
            let expected = if y > trace.y_mean {
                MeanSide::AboveMean
            } else if y < trace.y_mean {
                MeanSide::BelowMean
            } else {
                MeanSide::AtMean
            };
            assert_eq!(trace.predict(x).unwrap(), expected);
        }
    }

    proptest! {
        #[test]
        fn kendall_equals_enumeration_with_ties(
            pts in prop::collection::vec((0u8..6, 0u8..6), 2..60)
        ) {
            let xs: Vec<f64> = pts.iter().map(|p| p.0 as f64).collect();
            let ys: Vec<f64> = pts.iter().map(|p| p.1 as f64).collect();
            prop_assert_eq!(kendall(&sample(&xs, &ys)).unwrap(), kendall_oracle(&xs, &ys));
        }

        #[test]
        fn symmetric_and_in_range(
            pts in prop::collection::vec((-1e3..1e3f64, -1e3..1e3f64), 3..100)
        ) {
            let s = PairedSample::from_pairs(&pts).unwrap();
            let t = s.swapped();
            let r = pearson(&s).unwrap();
            prop_assert!((-1.0..=1.0).contains(&r));
            prop_assert_eq!(r, pearson(&t).unwrap());
            prop_assert_eq!(spearman(&s).unwrap(), spearman(&t).unwrap());
            prop_assert_eq!(kendall(&s).unwrap(), kendall(&t).unwrap());
            prop_assert_eq!(fechner_kappa(&s).unwrap(), fechner_kappa(&t).unwrap());
        }

        #[test]
        fn permutation_invariant(
            pts in prop::collection::vec((-1e3..1e3f64, -1e3..1e3f64), 3..80),
            seed in any::<u64>()
        ) {
            use rand::seq::SliceRandom;
            let s = PairedSample::from_pairs(&pts).unwrap();
            let mut shuffled = pts.clone();
            shuffled.shuffle(&mut RngSeed(seed).rng());
            let t = PairedSample::from_pairs(&shuffled).unwrap();
            prop_assert!((pearson(&s).unwrap() - pearson(&t).unwrap()).abs() < 1e-12);
            prop_assert!((spearman(&s).unwrap() - spearman(&t).unwrap()).abs() < 1e-12);
            prop_assert_eq!(kendall(&s).unwrap(), kendall(&t).unwrap());
            prop_assert_eq!(fechner(&s).unwrap().kappa, fechner(&t).unwrap().kappa);
        }
    }
}
