//! CSV and JSONL ingestion.
//!
//! CSV: comma separator, header row, `.` decimal point. JSONL: one JSON
//! object per line; numeric fields may be JSON numbers or numeric strings.
//! Non-finite values are rejected with the 1-based data row number.

use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{CorrError, Result};
use crate::sample::PairedSample;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DataFormat {
    Csv,
    Jsonl,
}

impl DataFormat {
    /// `.jsonl` and `.ndjson` are JSONL; everything else is CSV.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("jsonl") || ext.eq_ignore_ascii_case("ndjson") => {
                DataFormat::Jsonl
            }
            _ => DataFormat::Csv,
        }
    }
}

impl FromStr for DataFormat {
    type Err = CorrError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(DataFormat::Csv),
            "jsonl" | "ndjson" => Ok(DataFormat::Jsonl),
            other => Err(CorrError::InvalidParams(format!("unknown data format '{other}'"))),
        }
    }
}

fn open(path: &Path) -> Result<File> {
    File::open(path).map_err(|e| match e.kind() {
        std::io::ErrorKind::NotFound => CorrError::FileNotFound(path.to_path_buf()),
        _ => CorrError::from(e),
    })
}

fn parse_cell(raw: &str, row: usize, column: &str) -> Result<f64> {
    let v: f64 = raw.trim().parse().map_err(|_| CorrError::Parse {
        row,
        column: column.to_string(),
    })?;
    if !v.is_finite() {
        return Err(CorrError::NonFiniteValue(row));
    }
    Ok(v)
}

/// Loads the named columns, in the order given, preserving row order.
pub fn load_columns(path: &Path, format: DataFormat, names: &[&str]) -> Result<Vec<Vec<f64>>> {
    let file = open(path)?;
    match format {
        DataFormat::Csv => read_csv_columns(file, names),
        DataFormat::Jsonl => read_jsonl_columns(BufReader::new(file), names),
    }
}

pub fn read_csv_columns<R: std::io::Read>(reader: R, names: &[&str]) -> Result<Vec<Vec<f64>>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let headers = rdr.headers().map_err(|e| CorrError::Io(e.to_string()))?.clone();
    let idx: Vec<usize> = names
        .iter()
        .map(|name| {
            headers
                .iter()
                .position(|h| h == *name)
                .ok_or_else(|| CorrError::MissingColumn(name.to_string()))
        })
        .collect::<Result<_>>()?;

    let mut columns = vec![Vec::new(); names.len()];
    for (r, record) in rdr.records().enumerate() {
        let row = r + 1;
        let record = record.map_err(|_| CorrError::Parse {
            row,
            column: String::new(),
        })?;
        for (k, (&i, name)) in idx.iter().zip(names).enumerate() {
            let raw = record.get(i).ok_or_else(|| CorrError::Parse {
                row,
                column: name.to_string(),
            })?;
            columns[k].push(parse_cell(raw, row, name)?);
        }
    }
    Ok(columns)
}

pub fn read_jsonl_columns<R: BufRead>(reader: R, names: &[&str]) -> Result<Vec<Vec<f64>>> {
    let mut columns = vec![Vec::new(); names.len()];
    let mut row = 0;
    for line in reader.lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        row += 1;
        let value: serde_json::Value = serde_json::from_str(&line).map_err(|_| CorrError::Parse {
            row,
            column: String::new(),
        })?;
        let obj = value.as_object().ok_or(CorrError::Parse {
            row,
            column: String::new(),
        })?;
        for (k, name) in names.iter().enumerate() {
            let v = match obj.get(*name) {
                None if row == 1 => return Err(CorrError::MissingColumn(name.to_string())),
                None => {
                    return Err(CorrError::Parse {
                        row,
                        column: name.to_string(),
                    })
                }
                Some(serde_json::Value::Number(num)) => num.as_f64().ok_or(CorrError::Parse {
                    row,
                    column: name.to_string(),
                })?,
                Some(serde_json::Value::String(s)) => parse_cell(s, row, name)?,
                Some(_) => {
                    return Err(CorrError::Parse {
                        row,
                        column: name.to_string(),
                    })
                }
            };
            if !v.is_finite() {
                return Err(CorrError::NonFiniteValue(row));
            }
            columns[k].push(v);
        }
    }
    Ok(columns)
}

pub fn load_paired(path: &Path, format: DataFormat, x_col: &str, y_col: &str) -> Result<PairedSample> {
    let mut cols = load_columns(path, format, &[x_col, y_col])?;
    let ys = cols.pop().unwrap_or_default();
    let xs = cols.pop().unwrap_or_default();
    PairedSample::new(xs, ys)
}

/// Writes columns as CSV. Values use the shortest representation that
/// parses back to the same `f64`.
pub fn write_columns_csv<W: Write>(mut out: W, names: &[&str], columns: &[&[f64]]) -> Result<()> {
    writeln!(out, "{}", names.join(","))?;
    let n = columns.first().map_or(0, |c| c.len());
    for i in 0..n {
        let line: Vec<String> = columns.iter().map(|c| c[i].to_string()).collect();
        writeln!(out, "{}", line.join(","))?;
    }
    Ok(())
}

pub fn write_paired_csv<W: Write>(out: W, sample: &PairedSample, x_col: &str, y_col: &str) -> Result<()> {
    write_columns_csv(out, &[x_col, y_col], &[sample.xs(), sample.ys()])
}
