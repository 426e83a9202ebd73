//! Study records as read from CSV or JSON-lines input.
//!
//! CSV input has the header `label,n,mean,sd`; the `sd` cell is empty for
//! single-observation studies. JSON-lines input carries the same fields and
//! may also give `variance` or `m2`, which take precedence over `sd` (`m2`
//! first) so that this tool's own output reads back without loss.

use std::collections::HashSet;

use pooled_core::oracle::RawDataset;
use pooled_core::SampleSummary;
use serde::Deserialize;

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq)]
pub struct StudyRecord {
    pub label: String,
    pub summary: SampleSummary,
}

const CSV_HEADER: [&str; 4] = ["label", "n", "mean", "sd"];

/// Parses records in file order. The format is JSON-lines when the first
/// non-blank line starts with `{`, CSV otherwise.
pub fn parse_records(input: &str, variance_input: bool) -> Result<Vec<StudyRecord>, CliError> {
    let first = input.lines().map(str::trim).find(|l| !l.is_empty());
    let records = match first {
        None => Vec::new(),
        Some(line) if line.starts_with('{') => parse_json_lines(input, variance_input)?,
        Some(_) => parse_csv(input, variance_input)?,
    };
    let mut seen = HashSet::new();
    for (line, record) in &records {
        if !seen.insert(record.label.as_str()) {
            return Err(CliError::malformed(
                *line,
                "label",
                format!("duplicate label {:?}", record.label),
            ));
        }
    }
    Ok(records.into_iter().map(|(_, r)| r).collect())
}

fn parse_csv(input: &str, variance_input: bool) -> Result<Vec<(u64, StudyRecord)>, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(input.as_bytes());
    let header = reader
        .headers()
        .map_err(|e| CliError::malformed(1, "header", e.to_string()))?;
    if header.iter().ne(CSV_HEADER) {
        return Err(CliError::malformed(
            1,
            "header",
            format!("expected `{}`", CSV_HEADER.join(",")),
        ));
    }

    let mut out = Vec::new();
    for row in reader.records() {
        let row = row.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            CliError::malformed(line, "row", e.to_string())
        })?;
        let line = row.position().map_or(0, |p| p.line());
        let label = row[0].to_string();
        let n = row[1]
            .parse::<u64>()
            .map_err(|e| CliError::malformed(line, "n", format!("{:?}: {e}", &row[1])))?;
        let mean = parse_real(line, "mean", &row[2])?;
        let spread = match &row[3] {
            "" => None,
            cell => Some(parse_real(line, "sd", cell)?),
        };
        let summary = build_summary(line, n, mean, spread.map(|v| Spread::sd(v, variance_input)))?;
        out.push((line, record(line, label, summary)?));
    }
    Ok(out)
}

#[derive(Deserialize)]
struct JsonRecord {
    label: String,
    n: u64,
    mean: f64,
    #[serde(default)]
    sd: Option<f64>,
    #[serde(default)]
    variance: Option<f64>,
    #[serde(default)]
    m2: Option<f64>,
}

fn parse_json_lines(
    input: &str,
    variance_input: bool,
) -> Result<Vec<(u64, StudyRecord)>, CliError> {
    let mut out = Vec::new();
    for (idx, text) in input.lines().enumerate() {
        let line = idx as u64 + 1;
        if text.trim().is_empty() {
            continue;
        }
        let raw: JsonRecord = serde_json::from_str(text)
            .map_err(|e| CliError::malformed(line, json_field(&e), e.to_string()))?;
        let spread = match (raw.m2, raw.variance, raw.sd) {
            (Some(m2), _, _) => Some(Spread::M2(m2)),
            (None, Some(v), _) => Some(Spread::Variance(v)),
            (None, None, Some(sd)) => Some(Spread::sd(sd, variance_input)),
            (None, None, None) => None,
        };
        let summary = build_summary(line, raw.n, raw.mean, spread)?;
        out.push((line, record(line, raw.label, summary)?));
    }
    Ok(out)
}

fn json_field(e: &serde_json::Error) -> &'static str {
    let msg = e.to_string();
    ["label", "n", "mean", "sd", "variance", "m2"]
        .into_iter()
        .find(|f| msg.contains(&format!("`{f}`")))
        .unwrap_or("record")
}

#[derive(Debug, Clone, Copy)]
enum Spread {
    Sd(f64),
    Variance(f64),
    M2(f64),
}

impl Spread {
    fn sd(value: f64, variance_input: bool) -> Self {
        if variance_input {
            Spread::Variance(value)
        } else {
            Spread::Sd(value)
        }
    }

    fn field(&self) -> &'static str {
        match self {
            Spread::Sd(_) => "sd",
            Spread::Variance(_) => "variance",
            Spread::M2(_) => "m2",
        }
    }
}

fn build_summary(
    line: u64,
    n: u64,
    mean: f64,
    spread: Option<Spread>,
) -> Result<SampleSummary, CliError> {
    if !mean.is_finite() {
        return Err(CliError::malformed(line, "mean", "must be finite"));
    }
    match (n, spread) {
        (0, _) => Err(CliError::malformed(
            line,
            "n",
            "a study needs at least one observation",
        )),
        (1, None) | (1, Some(Spread::M2(0.0))) => Ok(SampleSummary::singleton(mean)?),
        (1, Some(s)) => Err(CliError::malformed(
            line,
            s.field(),
            "must be empty when n = 1 (no dispersion for a single observation)",
        )),
        (_, None) => Err(CliError::malformed(line, "sd", "required when n >= 2")),
        (_, Some(s)) => {
            let (field, value) = match s {
                Spread::Sd(v) | Spread::Variance(v) | Spread::M2(v) => (s.field(), v),
            };
            if !value.is_finite() || value < 0.0 {
                return Err(CliError::malformed(
                    line,
                    field,
                    format!("must be finite and non-negative, got {value}"),
                ));
            }
            let summary = match s {
                Spread::Sd(sd) => SampleSummary::from_stats(n, mean, sd * sd),
                Spread::Variance(v) => SampleSummary::from_stats(n, mean, v),
                Spread::M2(m2) => SampleSummary::from_m2(n, mean, m2),
            };
            summary.map_err(|e| CliError::malformed(line, field, e.to_string()))
        }
    }
}

fn record(line: u64, label: String, summary: SampleSummary) -> Result<StudyRecord, CliError> {
    if label.trim().is_empty() {
        return Err(CliError::malformed(line, "label", "must not be empty"));
    }
    Ok(StudyRecord { label, summary })
}

fn parse_real(line: u64, field: &'static str, cell: &str) -> Result<f64, CliError> {
    let value = cell
        .parse::<f64>()
        .map_err(|e| CliError::malformed(line, field, format!("{cell:?}: {e}")))?;
    if value.is_finite() {
        Ok(value)
    } else {
        Err(CliError::malformed(
            line,
            field,
            format!("{cell:?} is not finite"),
        ))
    }
}

/// Raw values, one per line. Blank lines and lines starting with `#` are
/// skipped.
pub fn parse_raw_values(input: &str) -> Result<RawDataset, CliError> {
    let mut values = Vec::new();
    for (idx, text) in input.lines().enumerate() {
        let text = text.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        values.push(parse_real(idx as u64 + 1, "value", text)?);
    }
    Ok(RawDataset::new(values)?)
}
