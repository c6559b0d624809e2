//! Correlation coefficients for paired samples: Pearson, Spearman, Kendall,
//! Fechner, the rank-grid nonlinear correlation coefficient (NCC) and the
//! g-correlation, plus seeded synthetic data, batch reports and SVG plots.
//!
//! ```
//! use corrkit::{fit_g, pearson, PairedSample};
//!
//! let xs: Vec<f64> = (1..=20).map(f64::from).collect();
//! let ys: Vec<f64> = xs.iter().map(|x| x * x).collect();
//! let s = PairedSample::new(xs, ys).unwrap();
//! assert!(pearson(&s).unwrap() < 1.0);
//! assert_eq!(fit_g(&s).unwrap().omega, 1.0);
//! ```

pub mod classic;
pub mod error;
pub mod gcorr;
pub mod harness;
pub mod io;
pub mod multi;
pub mod ncc;
pub mod plot;
pub mod sample;
pub mod synth;

pub use classic::{
    fechner, fechner_kappa, fechner_predict, kendall, pearson, rank_with_average_ties, spearman, FechnerTrace,
    MeanSide, RankVector,
};
pub use error::{CorrError, Result};
pub use gcorr::{
    estimate_g, fit_g, g_objective, g_predict, preprocess_ties, Diagonal, GCorrFit, MedianSide, QuadrantCounts,
    SplitEstimate, SplitPlan,
};
pub use harness::{
    compute_panel, render_report, run_panel, CoefValue, CoefficientPanel, ExperimentConfig, PanelReport, PanelRow,
    ReportFormat,
};
pub use io::{load_columns, load_paired, DataFormat};
pub use multi::{fit_g_multi, HyperplaneFit};
pub use ncc::{build_bin_grid, ncc, BinGrid, DEFAULT_BINS};
pub use sample::{sample_mean, sample_median, MultiSample, PairedSample, RngSeed};
pub use synth::{generate, Family, FamilySpec};
