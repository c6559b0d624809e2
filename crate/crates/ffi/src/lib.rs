//! C ABI over `corrkit`.
//!
//! Samples live behind an opaque `CorrkitSample` handle created by
//! [`corrkit_sample_new`] and released by [`corrkit_sample_free`]. Every
//! computation returns a [`CorrkitStatus`] and writes its result through an
//! out-pointer, which is left untouched on failure. Panics never cross the
//! boundary; they surface as `CORRKIT_STATUS_INTERNAL`.

use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::slice;

use corrkit::{CorrError, Diagonal, PairedSample, RngSeed, SplitPlan};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorrkitStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ShortSample = 3,
    NonFinite = 4,
    DegenerateVariance = 5,
    TooFewPoints = 6,
    AllTied = 7,
    ConstantX = 8,
    InvalidPlan = 9,
    Internal = 10,
}

impl From<&CorrError> for CorrkitStatus {
    fn from(e: &CorrError) -> Self {
        match e {
            CorrError::ShortSample { .. } | CorrError::EmptyInput => CorrkitStatus::ShortSample,
            CorrError::NonFiniteValue(_) => CorrkitStatus::NonFinite,
            CorrError::DegenerateVariance(_) => CorrkitStatus::DegenerateVariance,
            CorrError::TooFewPoints { .. } => CorrkitStatus::TooFewPoints,
            CorrError::AllTied | CorrError::ConstantY => CorrkitStatus::AllTied,
            CorrError::ConstantX => CorrkitStatus::ConstantX,
            CorrError::InvalidPlan(_) => CorrkitStatus::InvalidPlan,
            CorrError::InvalidBinCount(_) | CorrError::LengthMismatch { .. } | CorrError::InvalidParams(_) => {
                CorrkitStatus::InvalidArgument
            }
            _ => CorrkitStatus::Internal,
        }
    }
}

/// Opaque paired sample.
pub struct CorrkitSample {
    inner: PairedSample,
}

/// Result of `corrkit_fit_g`.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CorrkitGFit {
    pub c: f64,
    pub y_median: f64,
    pub omega: f64,
    /// 0 for the main diagonal (C1+ with C2-), 1 for the anti diagonal.
    pub anti_diagonal: i32,
    pub c1_plus: usize,
    pub c1_minus: usize,
    pub c2_plus: usize,
    pub c2_minus: usize,
    pub removed_ties: usize,
}

/// Result of `corrkit_estimate_g`.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CorrkitSplitEstimate {
    pub omega_mean: f64,
    pub omega_stddev: f64,
    pub degenerate: usize,
}

fn guard<F: FnOnce() -> CorrkitStatus>(f: F) -> CorrkitStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(CorrkitStatus::Internal)
}

unsafe fn sample_ref<'a>(s: *const CorrkitSample) -> Option<&'a PairedSample> {
    s.as_ref().map(|h| &h.inner)
}

/// Runs `f` on the sample and stores its value in `out`.
unsafe fn scalar(
    sample: *const CorrkitSample,
    out: *mut f64,
    f: impl FnOnce(&PairedSample) -> corrkit::Result<f64>,
) -> CorrkitStatus {
    guard(|| {
        let (Some(s), false) = (sample_ref(sample), out.is_null()) else {
            return CorrkitStatus::NullPointer;
        };
        match f(s) {
            Ok(v) => {
                *out = v;
                CorrkitStatus::Ok
            }
            Err(e) => CorrkitStatus::from(&e),
        }
    })
}

/// Copies `n` values from `xs` and `ys` into a new sample.
///
/// # Safety
/// `xs` and `ys` must point to `n` readable doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn corrkit_sample_new(
    xs: *const f64,
    ys: *const f64,
    n: usize,
    out: *mut *mut CorrkitSample,
) -> CorrkitStatus {
    guard(|| {
        if xs.is_null() || ys.is_null() || out.is_null() {
            return CorrkitStatus::NullPointer;
        }
        let xs = slice::from_raw_parts(xs, n).to_vec();
        let ys = slice::from_raw_parts(ys, n).to_vec();
        match PairedSample::new(xs, ys) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(CorrkitSample { inner }));
                CorrkitStatus::Ok
            }
            Err(e) => CorrkitStatus::from(&e),
        }
    })
}

/// Releases a sample. Null is a no-op.
///
/// # Safety
/// `sample` must come from `corrkit_sample_new` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn corrkit_sample_free(sample: *mut CorrkitSample) {
    if !sample.is_null() {
        drop(Box::from_raw(sample));
    }
}

/// # Safety
/// `sample` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn corrkit_sample_len(sample: *const CorrkitSample) -> usize {
    sample_ref(sample).map_or(0, PairedSample::len)
}

/// # Safety
/// `sample` must be a live handle or null; `out` writable or null.
#[no_mangle]
pub unsafe extern "C" fn corrkit_pearson(sample: *const CorrkitSample, out: *mut f64) -> CorrkitStatus {
    scalar(sample, out, corrkit::pearson)
}

/// # Safety
/// As `corrkit_pearson`.
#[no_mangle]
pub unsafe extern "C" fn corrkit_spearman(sample: *const CorrkitSample, out: *mut f64) -> CorrkitStatus {
    scalar(sample, out, corrkit::spearman)
}

/// # Safety
/// As `corrkit_pearson`.
#[no_mangle]
pub unsafe extern "C" fn corrkit_kendall(sample: *const CorrkitSample, out: *mut f64) -> CorrkitStatus {
    scalar(sample, out, corrkit::kendall)
}

/// # Safety
/// As `corrkit_pearson`.
#[no_mangle]
pub unsafe extern "C" fn corrkit_fechner(sample: *const CorrkitSample, out: *mut f64) -> CorrkitStatus {
    scalar(sample, out, corrkit::fechner_kappa)
}

/// `bins = 0` selects the default of 10.
///
/// # Safety
/// As `corrkit_pearson`.
#[no_mangle]
pub unsafe extern "C" fn corrkit_ncc(sample: *const CorrkitSample, bins: usize, out: *mut f64) -> CorrkitStatus {
    let b = if bins == 0 { corrkit::DEFAULT_BINS } else { bins };
    scalar(sample, out, |s| corrkit::ncc(s, b))
}

/// Full-data g-correlation fit.
///
/// # Safety
/// As `corrkit_pearson`.
#[no_mangle]
pub unsafe extern "C" fn corrkit_fit_g(sample: *const CorrkitSample, out: *mut CorrkitGFit) -> CorrkitStatus {
    guard(|| {
        let (Some(s), false) = (sample_ref(sample), out.is_null()) else {
            return CorrkitStatus::NullPointer;
        };
        match corrkit::fit_g(s) {
            Ok(fit) => {
                *out = CorrkitGFit {
                    c: fit.c,
                    y_median: fit.y_median,
                    omega: fit.omega,
                    anti_diagonal: i32::from(fit.dominant_diagonal == Diagonal::Anti),
                    c1_plus: fit.counts.c1_plus,
                    c1_minus: fit.counts.c1_minus,
                    c2_plus: fit.counts.c2_plus,
                    c2_minus: fit.counts.c2_minus,
                    removed_ties: fit.removed_ties,
                };
                CorrkitStatus::Ok
            }
            Err(e) => CorrkitStatus::from(&e),
        }
    })
}

/// Repeated train/evaluation split estimate.
///
/// # Safety
/// As `corrkit_pearson`.
#[no_mangle]
pub unsafe extern "C" fn corrkit_estimate_g(
    sample: *const CorrkitSample,
    train_size: usize,
    eval_size: usize,
    iterations: usize,
    seed: u64,
    out: *mut CorrkitSplitEstimate,
) -> CorrkitStatus {
    guard(|| {
        let (Some(s), false) = (sample_ref(sample), out.is_null()) else {
            return CorrkitStatus::NullPointer;
        };
        let est = SplitPlan::new(train_size, eval_size, iterations, RngSeed(seed))
            .and_then(|plan| corrkit::estimate_g(s, &plan));
        match est {
            Ok(est) => {
                *out = CorrkitSplitEstimate {
                    omega_mean: est.omega_mean,
                    omega_stddev: est.omega_stddev,
                    degenerate: est.degenerate,
                };
                CorrkitStatus::Ok
            }
            Err(e) => CorrkitStatus::from(&e),
        }
    })
}

/// Static, NUL-terminated description of a status code.
#[no_mangle]
pub extern "C" fn corrkit_status_message(status: CorrkitStatus) -> *const c_char {
    let msg: &'static CStr = match status {
        CorrkitStatus::Ok => c"ok",
        CorrkitStatus::NullPointer => c"null pointer argument",
        CorrkitStatus::InvalidArgument => c"invalid argument",
        CorrkitStatus::ShortSample => c"sample too short",
        CorrkitStatus::NonFinite => c"non-finite value",
        CorrkitStatus::DegenerateVariance => c"constant variable",
        CorrkitStatus::TooFewPoints => c"fewer points than bins",
        CorrkitStatus::AllTied => c"Y is constant",
        CorrkitStatus::ConstantX => c"X is constant",
        CorrkitStatus::InvalidPlan => c"invalid split plan",
        CorrkitStatus::Internal => c"internal error",
    };
    msg.as_ptr()
}
