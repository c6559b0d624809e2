//! `corrkit` command-line tool.
//!
//! Exit codes: 0 success, 1 usage error, 2 data error.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use corrkit::harness::{omega_value, COEFFICIENTS};
use corrkit::io::write_paired_csv;
use corrkit::plot::render_svg;
use corrkit::{
    classic, compute_panel, fit_g, generate, load_paired, ncc, render_report, run_panel, CoefValue, CorrError,
    DataFormat, ExperimentConfig, Family, FamilySpec, PairedSample, ReportFormat, RngSeed, SplitPlan,
};

/// Seed used when neither `--seed` nor `CORRKIT_SEED` is given.
const DEFAULT_SEED: u64 = 42;
const SEED_ENV: &str = "CORRKIT_SEED";
const COMPUTE_SCHEMA: &str = "corrkit.compute.v1";

#[derive(Parser)]
#[command(name = "corrkit", version, about = "Correlation coefficients, g-correlation and synthetic data")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Coefficients for one (X, Y) pair.
    Compute(ComputeArgs),
    /// Coefficient table for every independent x dependent column pair.
    Panel(PanelArgs),
    /// Write a synthetic family as CSV.
    Synth(SynthArgs),
    /// SVG scatter with the fitted separators.
    Plot(PlotArgs),
}

#[derive(Args)]
struct InputArgs {
    /// CSV or JSONL file.
    #[arg(long = "in", value_name = "PATH")]
    input: PathBuf,
    /// Input format; inferred from the extension when omitted.
    #[arg(long, value_parser = parse_format)]
    format: Option<DataFormat>,
}

#[derive(Args)]
struct SplitArgs {
    /// Training partition size; enables the split estimate of omega.
    #[arg(long, requires = "eval")]
    train: Option<usize>,
    /// Evaluation partition size.
    #[arg(long, requires = "train")]
    eval: Option<usize>,
    /// Number of random partitions.
    #[arg(long, default_value_t = corrkit::gcorr::DEFAULT_ITERATIONS)]
    iters: usize,
    /// RNG seed (falls back to CORRKIT_SEED, then 42).
    #[arg(long)]
    seed: Option<u64>,
}

impl SplitArgs {
    fn plan(&self) -> Result<Option<SplitPlan>, Failure> {
        match (self.train, self.eval) {
            (Some(t), Some(e)) => Ok(Some(
                SplitPlan::new(t, e, self.iters, RngSeed(resolve_seed(self.seed)?)).map_err(Failure::Usage)?,
            )),
            _ => Ok(None),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Coef {
    R,
    Rho,
    Tau,
    Kappa,
    Ncc,
    Omega,
}

impl Coef {
    fn key(self) -> &'static str {
        COEFFICIENTS[self as usize]
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TextOrJson {
    Json,
    Text,
}

#[derive(Args)]
struct ComputeArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, default_value = "x")]
    x: String,
    #[arg(long, default_value = "y")]
    y: String,
    /// Coefficients to compute (repeatable or comma separated).
    #[arg(long, value_enum, value_delimiter = ',')]
    coef: Vec<Coef>,
    /// Compute the full panel.
    #[arg(long)]
    all: bool,
    /// NCC rank bins per axis.
    #[arg(long, default_value_t = corrkit::DEFAULT_BINS)]
    bins: usize,
    #[command(flatten)]
    split: SplitArgs,
    #[arg(long, value_enum, default_value = "json")]
    output: TextOrJson,
    /// Print absolute values.
    #[arg(long)]
    abs: bool,
}

#[derive(Args)]
struct PanelArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Independent columns (repeatable or comma separated).
    #[arg(long, value_delimiter = ',', required = true)]
    independent: Vec<String>,
    /// Dependent columns (repeatable or comma separated).
    #[arg(long, value_delimiter = ',', required = true)]
    dependent: Vec<String>,
    #[arg(long, default_value_t = corrkit::DEFAULT_BINS)]
    bins: usize,
    #[command(flatten)]
    split: SplitArgs,
    #[arg(long, value_enum, default_value = "csv")]
    output: ReportKind,
    /// Report file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Render absolute values (storage stays signed).
    #[arg(long)]
    abs: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportKind {
    Csv,
    Json,
}

#[derive(Args)]
struct FamilyArgs {
    /// noise, line, curvilinear, coarse_monotone, sinusoid, hetero_step, step_plateau
    #[arg(long, value_parser = parse_family)]
    family: Option<Family>,
    #[arg(long, default_value_t = 200)]
    n: usize,
    /// Family parameter override, KEY=VALUE (repeatable).
    #[arg(long = "param", value_parser = parse_param)]
    params: Vec<(String, f64)>,
    #[arg(long)]
    seed: Option<u64>,
}

impl FamilyArgs {
    fn spec(&self, family: Family) -> Result<FamilySpec, Failure> {
        let mut spec = FamilySpec::new(family, self.n, resolve_seed(self.seed)?);
        spec.params = self.params.iter().cloned().collect::<BTreeMap<_, _>>();
        Ok(spec)
    }
}

#[derive(Args)]
struct SynthArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// CSV file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PlotArgs {
    /// Data file; alternatively use --family.
    #[arg(long = "in", value_name = "PATH", conflicts_with = "family")]
    input: Option<PathBuf>,
    #[arg(long, value_parser = parse_format)]
    format: Option<DataFormat>,
    #[arg(long, default_value = "x")]
    x: String,
    #[arg(long, default_value = "y")]
    y: String,
    #[command(flatten)]
    family: FamilyArgs,
    /// SVG output path.
    #[arg(long)]
    out: PathBuf,
}

fn parse_format(s: &str) -> Result<DataFormat, String> {
    s.parse().map_err(|e: CorrError| e.to_string())
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: CorrError| e.to_string())
}

fn parse_param(s: &str) -> Result<(String, f64), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected KEY=VALUE, got '{s}'"))?;
    let v: f64 = v.trim().parse().map_err(|_| format!("'{v}' is not a number"))?;
    Ok((k.trim().to_string(), v))
}

enum Failure {
    Usage(CorrError),
    Data(String),
}

impl From<CorrError> for Failure {
    fn from(e: CorrError) -> Self {
        Failure::Data(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Data(e.to_string())
    }
}

fn resolve_seed(flag: Option<u64>) -> Result<u64, Failure> {
    if let Some(seed) = flag {
        return Ok(seed);
    }
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(CorrError::InvalidParams(format!("{SEED_ENV}='{v}' is not a u64")))),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

fn write_out(path: Option<&Path>, bytes: &[u8]) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, bytes)?,
        None => io::stdout().lock().write_all(bytes)?,
    }
    Ok(())
}

fn coef_json(c: &CoefValue, abs: bool) -> Value {
    let mut m = Map::new();
    m.insert("value".into(), json!(c.value.map(|v| if abs { v.abs() } else { v })));
    if let Some(note) = &c.note {
        m.insert("note".into(), json!(note));
    }
    Value::Object(m)
}

fn compute_one(s: &PairedSample, coef: Coef, bins: usize, plan: Option<&SplitPlan>) -> (CoefValue, Option<f64>) {
    let wrap = |r: corrkit::Result<f64>| match r {
        Ok(v) => CoefValue::ok(v),
        Err(e) => CoefValue {
            value: None,
            note: Some(e.to_string()),
        },
    };
    match coef {
        Coef::R => (wrap(classic::pearson(s)), None),
        Coef::Rho => (wrap(classic::spearman(s)), None),
        Coef::Tau => (wrap(classic::kendall(s)), None),
        Coef::Kappa => (wrap(classic::fechner_kappa(s)), None),
        Coef::Ncc => (wrap(ncc(s, bins)), None),
        Coef::Omega => omega_value(s, plan),
    }
}

fn cmd_compute(a: &ComputeArgs) -> Result<(), Failure> {
    let format = a.input.format.unwrap_or_else(|| DataFormat::from_path(&a.input.input));
    let plan = a.split.plan()?;
    let s = load_paired(&a.input.input, format, &a.x, &a.y)?;

    let wanted: Vec<Coef> = if a.all || a.coef.is_empty() {
        vec![Coef::R, Coef::Rho, Coef::Tau, Coef::Kappa, Coef::Ncc, Coef::Omega]
    } else {
        a.coef.clone()
    };
    let results: Vec<(Coef, CoefValue, Option<f64>)> = if wanted.len() == COEFFICIENTS.len() {
        let p = compute_panel(&s, a.bins, plan.as_ref());
        wanted
            .iter()
            .map(|&c| {
                let sd = if c == Coef::Omega { p.omega_stddev } else { None };
                (c, p.get(c.key()).expect("known key").clone(), sd)
            })
            .collect()
    } else {
        wanted
            .iter()
            .map(|&c| {
                let (v, sd) = compute_one(&s, c, a.bins, plan.as_ref());
                (c, v, sd)
            })
            .collect()
    };

    let mut out = String::new();
    match a.output {
        TextOrJson::Json => {
            let mut coefs = Map::new();
            for (c, v, sd) in &results {
                if c == &Coef::Omega && plan.is_some() {
                    let mut m = Map::new();
                    m.insert("omega_mean".into(), json!(v.value));
                    m.insert("omega_stddev".into(), json!(sd));
                    if let Some(note) = &v.note {
                        m.insert("note".into(), json!(note));
                    }
                    coefs.insert("omega".into(), Value::Object(m));
                } else {
                    coefs.insert(c.key().into(), coef_json(v, a.abs));
                }
            }
            let mut doc = json!({
                "schema": COMPUTE_SCHEMA,
                "x": a.x,
                "y": a.y,
                "n": s.len(),
                "bins": a.bins,
                "coefficients": coefs,
            });
            if let Some(p) = &plan {
                doc["split"] = serde_json::to_value(p).expect("plain struct");
            }
            out.push_str(&serde_json::to_string_pretty(&doc).expect("json value"));
            out.push('\n');
        }
        TextOrJson::Text => {
            for (c, v, sd) in &results {
                let value = v
                    .value
                    .map(|x| format!("{}", if a.abs { x.abs() } else { x }))
                    .unwrap_or_else(|| "-".into());
                let name = if c == &Coef::Omega && plan.is_some() { "omega_mean" } else { c.key() };
                out.push_str(&format!("{name:<12} {value}"));
                if let Some(note) = &v.note {
                    out.push_str(&format!("  ({note})"));
                }
                out.push('\n');
                if let Some(sd) = sd {
                    out.push_str(&format!("{:<12} {sd}\n", "omega_stddev"));
                }
            }
        }
    }
    write_out(None, out.as_bytes())?;

    let failed: Vec<String> = results
        .iter()
        .filter(|(_, v, _)| v.value.is_none())
        .map(|(c, v, _)| format!("{}: {}", c.key(), v.note.as_deref().unwrap_or("undefined")))
        .collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Data(failed.join("; ")))
    }
}

fn cmd_panel(a: &PanelArgs) -> Result<(), Failure> {
    let mut cfg = ExperimentConfig::new(&a.input.input, &[], &[]);
    cfg.independents = a.independent.clone();
    cfg.dependents = a.dependent.clone();
    cfg.format = a.input.format;
    cfg.bins = a.bins;
    cfg.split = a.split.plan()?;
    cfg.output_format = match a.output {
        ReportKind::Csv => ReportFormat::Csv,
        ReportKind::Json => ReportFormat::Json,
    };
    let report = run_panel(&cfg)?;
    let report = if a.abs { report.absolute() } else { report };
    write_out(a.out.as_deref(), &render_report(&report, cfg.output_format)?)
}

fn cmd_synth(a: &SynthArgs) -> Result<(), Failure> {
    let family = a
        .family
        .family
        .ok_or_else(|| Failure::Usage(CorrError::InvalidParams("--family is required".into())))?;
    let s = generate(&a.family.spec(family)?).map_err(Failure::Usage)?;
    let mut buf = Vec::new();
    write_paired_csv(&mut buf, &s, "x", "y")?;
    write_out(a.out.as_deref(), &buf)
}

fn cmd_plot(a: &PlotArgs) -> Result<(), Failure> {
    let (s, title) = match (&a.input, a.family.family) {
        (Some(path), _) => {
            let format = a.format.unwrap_or_else(|| DataFormat::from_path(path));
            (load_paired(path, format, &a.x, &a.y)?, format!("{} vs {}", a.y, a.x))
        }
        (None, Some(f)) => (generate(&a.family.spec(f)?).map_err(Failure::Usage)?, f.to_string()),
        (None, None) => {
            return Err(Failure::Usage(CorrError::InvalidParams(
                "plot needs --in or --family".into(),
            )))
        }
    };
    let fit = fit_g(&s)?;
    fs::write(&a.out, render_svg(&s, &fit, &title))?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = match &cli.command {
        Command::Compute(a) => cmd_compute(a),
        Command::Panel(a) => cmd_panel(a),
        Command::Synth(a) => cmd_synth(a),
        Command::Plot(a) => cmd_plot(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Data(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
