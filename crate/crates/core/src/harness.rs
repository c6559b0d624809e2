//! Coefficient panels and batch reports over many variable pairs.

use std::io::Write;
use std::path::PathBuf;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classic::{fechner_kappa, kendall, pearson, spearman};
use crate::error::{CorrError, Result};
use crate::gcorr::{estimate_g, omega_or_uncorrelated, SplitPlan};
use crate::io::{load_columns, DataFormat};
use crate::ncc::{ncc, DEFAULT_BINS};
use crate::sample::PairedSample;

/// A coefficient value, or the reason it could not be computed. A value may
/// carry a note too (e.g. ω = 0.5 for constant Y).
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct CoefValue {
    pub value: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CoefValue {
    pub fn ok(value: f64) -> Self {
        CoefValue { value: Some(value), note: None }
    }

    pub fn is_valid(&self) -> bool {
        self.value.is_some()
    }

    fn from_result(r: Result<f64>) -> Self {
        match r {
            Ok(v) => CoefValue::ok(v),
            Err(e) => CoefValue {
                value: None,
                note: Some(e.to_string()),
            },
        }
    }
}

/// The six coefficients for one (X, Y) pair.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct CoefficientPanel {
    pub r: CoefValue,
    pub rho: CoefValue,
    pub tau: CoefValue,
    pub kappa: CoefValue,
    pub ncc: CoefValue,
    /// Full-data fit, or the split-estimate mean when a plan is used.
    pub omega: CoefValue,
    /// Present only for split estimates.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega_stddev: Option<f64>,
}

/// Coefficient keys in report column order.
pub const COEFFICIENTS: [&str; 6] = ["r", "rho", "tau", "kappa", "ncc", "omega"];

impl CoefficientPanel {
    pub fn get(&self, key: &str) -> Option<&CoefValue> {
        match key {
            "r" => Some(&self.r),
            "rho" => Some(&self.rho),
            "tau" => Some(&self.tau),
            "kappa" => Some(&self.kappa),
            "ncc" => Some(&self.ncc),
            "omega" => Some(&self.omega),
            _ => None,
        }
    }

    fn get_mut(&mut self, key: &str) -> Option<&mut CoefValue> {
        match key {
            "r" => Some(&mut self.r),
            "rho" => Some(&mut self.rho),
            "tau" => Some(&mut self.tau),
            "kappa" => Some(&mut self.kappa),
            "ncc" => Some(&mut self.ncc),
            "omega" => Some(&mut self.omega),
            _ => None,
        }
    }

    /// Copy with `|value|` for every coefficient; presentation only.
    pub fn absolute(&self) -> Self {
        let mut out = self.clone();
        for key in COEFFICIENTS {
            let c = out.get_mut(key).expect("known key");
            c.value = c.value.map(f64::abs);
        }
        out
    }
}

pub fn omega_value(s: &PairedSample, split: Option<&SplitPlan>) -> (CoefValue, Option<f64>) {
    match split {
        None => match omega_or_uncorrelated(s) {
            Ok((v, note)) => (
                CoefValue {
                    value: Some(v),
                    note: note.map(str::to_string),
                },
                None,
            ),
            Err(e) => (CoefValue::from_result(Err(e)), None),
        },
        Some(plan) => match estimate_g(s, plan) {
            Ok(est) => {
                let note = (est.degenerate > 0)
                    .then(|| format!("{} of {} training partitions degenerate", est.degenerate, est.iterations));
                (
                    CoefValue {
                        value: Some(est.omega_mean),
                        note,
                    },
                    Some(est.omega_stddev),
                )
            }
            Err(e) => (CoefValue::from_result(Err(e)), None),
        },
    }
}

/// Every coefficient on one pair; failures become notes instead of errors.
pub fn compute_panel(s: &PairedSample, bins: usize, split: Option<&SplitPlan>) -> CoefficientPanel {
    let (omega, omega_stddev) = omega_value(s, split);
    CoefficientPanel {
        r: CoefValue::from_result(pearson(s)),
        rho: CoefValue::from_result(spearman(s)),
        tau: CoefValue::from_result(kendall(s)),
        kappa: CoefValue::from_result(fechner_kappa(s)),
        ncc: CoefValue::from_result(ncc(s, bins)),
        omega,
        omega_stddev,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    Csv,
    Json,
}

impl std::str::FromStr for ReportFormat {
    type Err = CorrError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            other => Err(CorrError::InvalidParams(format!("unknown report format '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub input: PathBuf,
    /// Inferred from the file extension when absent.
    pub format: Option<DataFormat>,
    pub independents: Vec<String>,
    pub dependents: Vec<String>,
    pub split: Option<SplitPlan>,
    pub bins: usize,
    pub output_format: ReportFormat,
}

impl ExperimentConfig {
    pub fn new(input: impl Into<PathBuf>, independents: &[&str], dependents: &[&str]) -> Self {
        ExperimentConfig {
            input: input.into(),
            format: None,
            independents: independents.iter().map(|s| s.to_string()).collect(),
            dependents: dependents.iter().map(|s| s.to_string()).collect(),
            split: None,
            bins: DEFAULT_BINS,
            output_format: ReportFormat::Csv,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PanelRow {
    pub independent: String,
    pub dependent: String,
    pub panel: CoefficientPanel,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ReportMeta {
    pub seed: Option<u64>,
    pub iterations: Option<usize>,
    pub train_size: Option<usize>,
    pub eval_size: Option<usize>,
    pub bins: usize,
    /// Left unset by [`run_panel`] so reports are reproducible; callers may
    /// stamp it.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<String>,
}

pub const REPORT_SCHEMA: &str = "corrkit.panel.v1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PanelReport {
    pub schema: String,
    pub metadata: ReportMeta,
    /// Independent-major, dependent-minor, in config order.
    pub rows: Vec<PanelRow>,
}

impl PanelReport {
    pub fn absolute(&self) -> Self {
        let mut out = self.clone();
        for row in &mut out.rows {
            row.panel = row.panel.absolute();
        }
        out
    }
}

/// Loads every configured column once and computes a panel per pair.
pub fn run_panel(cfg: &ExperimentConfig) -> Result<PanelReport> {
    if cfg.independents.is_empty() || cfg.dependents.is_empty() {
        return Err(CorrError::InvalidParams(
            "need at least one independent and one dependent column".into(),
        ));
    }
    let format = cfg.format.unwrap_or_else(|| DataFormat::from_path(&cfg.input));
    let mut names: Vec<&str> = Vec::new();
    for c in cfg.independents.iter().chain(&cfg.dependents) {
        if !names.contains(&c.as_str()) {
            names.push(c);
        }
    }
    let columns = load_columns(&cfg.input, format, &names)?;
    let column = |name: &str| &columns[names.iter().position(|n| *n == name).expect("loaded")];
    if let Some(plan) = &cfg.split {
        plan.check_for(column(&cfg.independents[0]).len())?;
    }

    let pairs: Vec<(&String, &String)> = cfg
        .independents
        .iter()
        .flat_map(|x| cfg.dependents.iter().map(move |y| (x, y)))
        .collect();
    let rows = pairs
        .par_iter()
        .map(|&(x, y)| {
            let panel = match PairedSample::new(column(x).clone(), column(y).clone()) {
                Ok(s) => compute_panel(&s, cfg.bins, cfg.split.as_ref()),
                Err(e) => {
                    let failed = CoefValue::from_result(Err(e));
                    CoefficientPanel {
                        r: failed.clone(),
                        rho: failed.clone(),
                        tau: failed.clone(),
                        kappa: failed.clone(),
                        ncc: failed.clone(),
                        omega: failed,
                        omega_stddev: None,
                    }
                }
            };
            PanelRow {
                independent: x.clone(),
                dependent: y.clone(),
                panel,
            }
        })
        .collect();

    Ok(PanelReport {
        schema: REPORT_SCHEMA.to_string(),
        metadata: ReportMeta {
            seed: cfg.split.map(|p| p.seed.0),
            iterations: cfg.split.map(|p| p.iterations),
            train_size: cfg.split.map(|p| p.train_size),
            eval_size: cfg.split.map(|p| p.eval_size),
            bins: cfg.bins,
            timestamp: None,
        },
        rows,
    })
}

pub const CSV_HEADER: [&str; 10] = [
    "independent",
    "dependent",
    "r",
    "rho",
    "tau",
    "kappa",
    "ncc",
    "omega",
    "omega_stddev",
    "note",
];

fn fmt_opt(v: Option<f64>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

/// Notes as `key: message` joined by `"; "`.
fn join_notes(p: &CoefficientPanel) -> String {
    COEFFICIENTS
        .iter()
        .filter_map(|k| p.get(k).and_then(|c| c.note.as_ref()).map(|n| format!("{k}: {n}")))
        .collect::<Vec<_>>()
        .join("; ")
}

/// CSV: one header line plus one line per row; metadata is omitted.
/// JSON: the [`PanelReport`] serialization, schema [`REPORT_SCHEMA`].
pub fn render_report(rep: &PanelReport, format: ReportFormat) -> Result<Vec<u8>> {
    match format {
        ReportFormat::Json => {
            let mut out = serde_json::to_vec_pretty(rep).map_err(|e| CorrError::Io(e.to_string()))?;
            out.push(b'\n');
            Ok(out)
        }
        ReportFormat::Csv => {
            let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
            let io_err = |e: csv::Error| CorrError::Io(e.to_string());
            w.write_record(CSV_HEADER).map_err(io_err)?;
            for row in &rep.rows {
                let p = &row.panel;
                let mut rec = vec![row.independent.clone(), row.dependent.clone()];
                rec.extend(COEFFICIENTS.iter().map(|k| fmt_opt(p.get(k).and_then(|c| c.value))));
                rec.push(fmt_opt(p.omega_stddev));
                rec.push(join_notes(p));
                w.write_record(&rec).map_err(io_err)?;
            }
            w.into_inner().map_err(|e| CorrError::Io(e.to_string()))
        }
    }
}

pub fn write_report<W: Write>(mut out: W, rep: &PanelReport, format: ReportFormat) -> Result<()> {
    out.write_all(&render_report(rep, format)?)?;
    Ok(())
}

/// Parses rows back from the CSV rendering.
pub fn parse_report_csv(bytes: &[u8]) -> Result<Vec<PanelRow>> {
    let mut rdr = csv::Reader::from_reader(bytes);
    let header = rdr.headers().map_err(|e| CorrError::Io(e.to_string()))?.clone();
    if header.iter().ne(CSV_HEADER) {
        return Err(CorrError::Parse {
            row: 0,
            column: "header".into(),
        });
    }
    let mut rows = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let row = i + 1;
        let rec = rec.map_err(|_| CorrError::Parse {
            row,
            column: String::new(),
        })?;
        let num = |idx: usize| -> Result<Option<f64>> {
            let cell = &rec[idx];
            if cell.is_empty() {
                return Ok(None);
            }
            cell.parse().map(Some).map_err(|_| CorrError::Parse {
                row,
                column: CSV_HEADER[idx].into(),
            })
        };
        let mut panel = CoefficientPanel::default();
        for (k, key) in COEFFICIENTS.iter().enumerate() {
            panel.get_mut(key).expect("known key").value = num(2 + k)?;
        }
        panel.omega_stddev = num(8)?;
        for note in rec[9].split("; ").filter(|s| !s.is_empty()) {
            let (key, msg) = note.split_once(": ").ok_or(CorrError::Parse {
                row,
                column: "note".into(),
            })?;
            panel
                .get_mut(key)
                .ok_or(CorrError::Parse {
                    row,
                    column: "note".into(),
                })?
                .note = Some(msg.to_string());
        }
        rows.push(PanelRow {
            independent: rec[0].to_string(),
            dependent: rec[1].to_string(),
            panel,
        });
    }
    Ok(rows)
}

pub fn parse_report_json(bytes: &[u8]) -> Result<PanelReport> {
    serde_json::from_slice(bytes).map_err(|e| CorrError::Io(e.to_string()))
}
