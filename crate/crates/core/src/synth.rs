//! Seeded generators for bivariate patterns.
//!
//! | family            | shape                                                        | params (default)                                   |
//! |-------------------|--------------------------------------------------------------|----------------------------------------------------|
//! | `noise`           | x, y independent `U(0, 1)`                                    | none                                               |
//! | `line`            | `y = a x + b`, x ~ `U(0, 10)`                                 | `slope` (1), `intercept` (0)                       |
//! | `curvilinear`     | arch `y = 1 - x² + e`, x ~ `U(-1, 1)`                          | `noise_sd` (0.05)                                  |
//! | `coarse_monotone` | `y = x + e`, x ~ `U(0, 10)`                                   | `noise_sd` (2)                                     |
//! | `sinusoid`        | `y = sin(x + phase) + e` over `periods` full periods          | `periods` (2), `phase` (1.915), `noise_sd` (0)     |
//! | `hetero_step`     | y-spread small left of `threshold`, large right of it         | `threshold` (-12.5), `spread_low` (1), `spread_high` (20) |
//! | `step_plateau`    | staircase strictly increasing in x with a high top step       | `step_count` (5)                                   |
//!
//! `e` is Gaussian with standard deviation `noise_sd`.
//!
//! `sinusoid` uses a jittered even grid `x_i = (i + u_i) L / n` over the
//! span `L = 2π · periods`, so every period is equally populated.
//!
//! The default phase sits inside the narrow band where the linear and rank
//! coefficients stay within ±0.15 while ω stays at or above 0.65 for
//! n = 400. A phase of π/2 (a pure cosine) removes the trend entirely but
//! caps ω near 0.625.
//!
//! `hetero_step` draws half of the x values from `U(-25, threshold)` and the
//! rest from `U(threshold, 0)`. Left points get `y ~ U(-spread_low, 0)`,
//! right points `y ~ U(0, spread_high)`, and exactly one point on each side
//! has `y = 0`, which makes the median of Y exactly 0.
//!
//! `step_plateau` draws left-skewed `x = 1 - u²`. Y is a function of the
//! x-rank only: the lowest ranks form `step_count` plateaus in `[0, 1)`
//! with a small strictly increasing tilt, and the top `t` ranks jump to
//! about `n`. `t` is chosen so that as many points sit on agreeing as on
//! disagreeing sides of the means, which drives the Fechner coefficient to
//! about zero while Y stays strictly increasing in X.

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{CorrError, Result};
use crate::sample::{PairedSample, RngSeed};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Noise,
    Line,
    Curvilinear,
    CoarseMonotone,
    Sinusoid,
    HeteroStep,
    StepPlateau,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::Noise,
        Family::Line,
        Family::Curvilinear,
        Family::CoarseMonotone,
        Family::Sinusoid,
        Family::HeteroStep,
        Family::StepPlateau,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Noise => "noise",
            Family::Line => "line",
            Family::Curvilinear => "curvilinear",
            Family::CoarseMonotone => "coarse_monotone",
            Family::Sinusoid => "sinusoid",
            Family::HeteroStep => "hetero_step",
            Family::StepPlateau => "step_plateau",
        }
    }

    /// Accepted parameter names with their defaults.
    pub fn defaults(self) -> &'static [(&'static str, f64)] {
        match self {
            Family::Noise => &[],
            Family::Line => &[("slope", 1.0), ("intercept", 0.0)],
            Family::Curvilinear => &[("noise_sd", 0.05)],
            Family::CoarseMonotone => &[("noise_sd", 2.0)],
            Family::Sinusoid => &[("periods", 2.0), ("phase", SINUSOID_PHASE), ("noise_sd", 0.0)],
            Family::HeteroStep => &[("threshold", -12.5), ("spread_low", 1.0), ("spread_high", 20.0)],
            Family::StepPlateau => &[("step_count", 5.0)],
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = CorrError;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s || f.name().replace('_', "-") == s)
            .ok_or_else(|| CorrError::InvalidParams(format!("unknown family '{s}'")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub family: Family,
    pub n: usize,
    pub seed: RngSeed,
    /// Overrides for the family defaults; unknown keys are rejected.
    #[serde(default)]
    pub params: BTreeMap<String, f64>,
}

pub const MIN_POINTS: usize = 4;

/// Default `sinusoid` phase in radians.
pub const SINUSOID_PHASE: f64 = 1.915;

impl FamilySpec {
    pub fn new(family: Family, n: usize, seed: u64) -> Self {
        FamilySpec {
            family,
            n,
            seed: RngSeed(seed),
            params: BTreeMap::new(),
        }
    }

    pub fn with(mut self, key: &str, value: f64) -> Self {
        self.params.insert(key.to_string(), value);
        self
    }

    /// Defaults merged with overrides, after validation.
    pub fn resolved_params(&self) -> Result<BTreeMap<&'static str, f64>> {
        let defaults = self.family.defaults();
        if let Some(bad) = self.params.keys().find(|k| !defaults.iter().any(|(d, _)| d == k)) {
            return Err(CorrError::InvalidParams(format!(
                "family '{}' has no parameter '{bad}'",
                self.family
            )));
        }
        let mut out = BTreeMap::new();
        for &(key, default) in defaults {
            let v = self.params.get(key).copied().unwrap_or(default);
            if !v.is_finite() {
                return Err(CorrError::InvalidParams(format!("{key} must be finite")));
            }
            out.insert(key, v);
        }
        Ok(out)
    }
}

fn gaussian(sd: f64) -> Result<Normal<f64>> {
    if sd.is_nan() || sd < 0.0 {
        return Err(CorrError::InvalidParams(format!("noise_sd must be >= 0, got {sd}")));
    }
    Normal::new(0.0, sd).map_err(|_| CorrError::InvalidParams(format!("noise_sd must be >= 0, got {sd}")))
}

/// Deterministic sample for `spec`: the same spec gives the same bits.
pub fn generate(spec: &FamilySpec) -> Result<PairedSample> {
    let n = spec.n;
    if n < MIN_POINTS {
        return Err(CorrError::InvalidParams(format!("n must be at least {MIN_POINTS}, got {n}")));
    }
    let p = spec.resolved_params()?;
    let mut rng = spec.seed.rng();
    let (xs, ys): (Vec<f64>, Vec<f64>) = match spec.family {
        Family::Noise => (0..n).map(|_| (rng.random::<f64>(), rng.random::<f64>())).unzip(),
        Family::Line => {
            let (a, b) = (p["slope"], p["intercept"]);
            let xs: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..10.0)).collect();
            let ys = xs.iter().map(|x| a * x + b).collect();
            (xs, ys)
        }
        Family::Curvilinear => {
            let e = gaussian(p["noise_sd"])?;
            (0..n)
                .map(|_| {
                    let x: f64 = rng.random_range(-1.0..1.0);
                    (x, 1.0 - x * x + e.sample(&mut rng))
                })
                .unzip()
        }
        Family::CoarseMonotone => {
            let e = gaussian(p["noise_sd"])?;
            (0..n)
                .map(|_| {
                    let x: f64 = rng.random_range(0.0..10.0);
                    (x, x + e.sample(&mut rng))
                })
                .unzip()
        }
        Family::Sinusoid => sinusoid(&mut rng, n, p["periods"], p["phase"], p["noise_sd"])?,
        Family::HeteroStep => hetero_step(&mut rng, n, p["threshold"], p["spread_low"], p["spread_high"])?,
        Family::StepPlateau => step_plateau(&mut rng, n, p["step_count"])?,
    };
    PairedSample::new(xs, ys)
}

fn sinusoid<R: Rng>(rng: &mut R, n: usize, periods: f64, phase: f64, sd: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    if periods <= 0.0 {
        return Err(CorrError::InvalidParams("periods must be positive".into()));
    }
    let e = gaussian(sd)?;
    let span = TAU * periods;
    Ok((0..n)
        .map(|i| {
            let x = (i as f64 + rng.random::<f64>()) * span / n as f64;
            (x, (x + phase).sin() + e.sample(rng))
        })
        .unzip())
}

const HETERO_LO: f64 = -25.0;
const HETERO_HI: f64 = 0.0;

fn hetero_step<R: Rng>(rng: &mut R, n: usize, t: f64, low: f64, high: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    if t <= HETERO_LO || t >= HETERO_HI {
        return Err(CorrError::InvalidParams(format!(
            "threshold must lie in ({HETERO_LO}, {HETERO_HI})"
        )));
    }
    if low <= 0.0 || high <= 0.0 {
        return Err(CorrError::InvalidParams("spreads must be positive".into()));
    }
    let left = n / 2;
    let mut xs = Vec::with_capacity(n);
    let mut ys = Vec::with_capacity(n);
    for i in 0..n {
        let is_left = i < left;
        // first point of each group sits exactly on y = 0
        let first = i == 0 || i == left;
        if is_left {
            xs.push(rng.random_range(HETERO_LO..t));
            ys.push(if first { 0.0 } else { -rng.random_range(0.0..low) });
        } else {
            xs.push(rng.random_range(t..HETERO_HI));
            ys.push(if first { 0.0 } else { rng.random_range(0.0..high) });
        }
    }
    // a draw of exactly 0.0 would add a third median tie
    for (i, y) in ys.iter_mut().enumerate() {
        if *y == 0.0 && i != 0 && i != left {
            *y = if i < left { -f64::EPSILON } else { f64::EPSILON };
        }
    }
    Ok((xs, ys))
}

fn step_plateau<R: Rng>(rng: &mut R, n: usize, steps: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    if steps < 1.0 || steps.fract() != 0.0 {
        return Err(CorrError::InvalidParams("step_count must be a positive integer".into()));
    }
    let xs: Vec<f64> = (0..n)
        .map(|_| {
            let u: f64 = rng.random();
            1.0 - u * u
        })
        .collect();
    let mean = xs.iter().sum::<f64>() / n as f64;
    let below_mean = xs.iter().filter(|&&x| x < mean).count();
    // sign agreement count minus disagreement count is 2t + 2 r0 - n
    let top = ((n as f64 / 2.0).round() as usize).saturating_sub(below_mean).max(1);
    let low = n - top;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| xs[a].total_cmp(&xs[b]));
    let mut ys = vec![0.0; n];
    for (rank, &i) in order.iter().enumerate() {
        ys[i] = if rank < low {
            let k = rank as f64 / low as f64;
            ((k * steps).floor() + 0.1 * k) / steps
        } else {
            n as f64 + (rank - low) as f64 / n as f64
        };
    }
    Ok((xs, ys))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classic::{fechner_kappa, kendall, pearson, spearman};
    use crate::gcorr::fit_g;

    #[test]
    fn line_is_exact() {
        let s = generate(&FamilySpec::new(Family::Line, 10, 1).with("slope", 2.0).with("intercept", 1.0)).unwrap();
        for (x, y) in s.xs().iter().zip(s.ys()) {
            assert_eq!(*y, 2.0 * x + 1.0);
        }
        assert!((pearson(&s).unwrap() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn line_kappa_is_slope_sign() {
        for (a, k) in [(2.0, 1.0), (-3.0, -1.0), (0.5, 1.0)] {
            for seed in 0..20 {
                let s = generate(&FamilySpec::new(Family::Line, 37, seed).with("slope", a)).unwrap();
                assert_eq!(fechner_kappa(&s).unwrap(), k);
            }
        }
    }

    #[test]
    fn noise_is_weakly_correlated() {
        let s = generate(&FamilySpec::new(Family::Noise, 500, 3)).unwrap();
        for v in [pearson(&s), spearman(&s), kendall(&s)] {
            assert!(v.unwrap().abs() <= 0.15);
        }
    }

    #[test]
    fn same_spec_same_bits() {
        for family in Family::ALL {
            let spec = FamilySpec::new(family, 64, 17);
            assert_eq!(generate(&spec).unwrap(), generate(&spec).unwrap(), "{family}");
        }
    }

    #[test]
    fn every_family_handles_minimum_n() {
        for family in Family::ALL {
            for seed in 0..50 {
                let s = generate(&FamilySpec::new(family, MIN_POINTS, seed)).unwrap();
                assert_eq!(s.len(), MIN_POINTS);
            }
        }
    }

    #[test]
    fn invalid_params() {
        assert!(generate(&FamilySpec::new(Family::Noise, 3, 0)).is_err());
        assert!(generate(&FamilySpec::new(Family::Noise, 10, 0).with("slope", 1.0)).is_err());
        assert!(generate(&FamilySpec::new(Family::Curvilinear, 10, 0).with("noise_sd", -1.0)).is_err());
        assert!(generate(&FamilySpec::new(Family::StepPlateau, 10, 0).with("step_count", 1.5)).is_err());
        assert!(generate(&FamilySpec::new(Family::Sinusoid, 10, 0).with("periods", 0.0)).is_err());
        assert!("wave".parse::<Family>().is_err());
        assert_eq!("hetero-step".parse::<Family>().unwrap(), Family::HeteroStep);
    }

    #[test]
    fn sinusoid_weak_trend_strong_omega() {
        let s = generate(&FamilySpec::new(Family::Sinusoid, 400, 1)).unwrap();
        assert!(pearson(&s).unwrap().abs() <= 0.15);
        assert!(fit_g(&s).unwrap().omega >= 0.65);
        assert!(s.xs().iter().all(|&x| (0.0..=2.0 * TAU).contains(&x)));
    }

    #[test]
    fn hetero_step_median_ties() {
        for n in [20, 21, 200] {
            let s = generate(&FamilySpec::new(Family::HeteroStep, n, 11)).unwrap();
            let fit = fit_g(&s).unwrap();
            assert_eq!((fit.y_median, fit.removed_ties, fit.omega), (0.0, 2, 1.0));
            let back = fit_g(&s.swapped()).unwrap();
            assert!(back.omega < 1.0);
        }
    }

    #[test]
    fn step_plateau_defeats_fechner() {
        for seed in 0..50 {
            let s = generate(&FamilySpec::new(Family::StepPlateau, 100, seed)).unwrap();
            let mut pairs: Vec<(f64, f64)> = s.xs().iter().copied().zip(s.ys().iter().copied()).collect();
            pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
            assert!(pairs.windows(2).all(|w| w[0].0 < w[1].0 && w[0].1 < w[1].1));
            assert!(fechner_kappa(&s).unwrap().abs() <= 0.1);
            assert_eq!(fit_g(&s).unwrap().omega, 1.0);
        }
    }
}
