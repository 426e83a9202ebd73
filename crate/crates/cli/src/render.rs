use pooled_core::SampleSummary;
use serde::Serialize;

use crate::config::{OutputFormat, RunConfig};

/// Display-rounded copies of the numeric fields.
#[derive(Debug, Serialize)]
pub struct Rounded {
    pub mean: Option<String>,
    pub sd: Option<String>,
    pub variance: Option<String>,
}

/// One summary as written by `combine` and `recover`. Numbers are
/// serialized at full precision; `display` holds the rounded text.
#[derive(Debug, Serialize)]
pub struct SummaryLine<'a> {
    pub label: &'a str,
    pub n: u64,
    pub mean: Option<f64>,
    pub sd: Option<f64>,
    pub variance: Option<f64>,
    pub m2: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kernel: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub between: Option<f64>,
    pub display: Rounded,
}

impl<'a> SummaryLine<'a> {
    pub fn new(label: &'a str, s: &SampleSummary, precision: usize) -> Self {
        SummaryLine {
            label,
            n: s.n(),
            mean: s.mean(),
            sd: s.sample_sd(),
            variance: s.sample_variance(),
            m2: s.m2(),
            kernel: None,
            between: None,
            display: Rounded {
                mean: s.mean().map(|v| fixed(v, precision)),
                sd: s.sample_sd().map(|v| fixed(v, precision)),
                variance: s.sample_variance().map(|v| fixed(v, precision)),
            },
        }
    }

    pub fn render(&self, cfg: &RunConfig) -> String {
        match cfg.format {
            OutputFormat::JsonLines => json_line(self),
            OutputFormat::Table => {
                let p = cfg.precision;
                let mut rows = vec![("label", self.label.to_string())];
                if let Some(kernel) = self.kernel {
                    rows.push(("kernel", kernel.to_string()));
                }
                rows.push(("n", self.n.to_string()));
                rows.push(("mean", opt(self.mean, p)));
                rows.push(("sd", opt(self.sd, p)));
                rows.push(("variance", opt(self.variance, p)));
                if let Some(between) = self.between {
                    rows.push(("between", fixed(between, p)));
                }
                key_values(&rows)
            }
        }
    }
}

pub fn json_line<T: Serialize>(value: &T) -> String {
    let mut line = serde_json::to_string(value).expect("plain data serializes");
    line.push('\n');
    line
}

pub fn fixed(value: f64, precision: usize) -> String {
    format!("{value:.precision$}")
}

pub fn opt(value: Option<f64>, precision: usize) -> String {
    value.map_or_else(|| "-".to_string(), |v| fixed(v, precision))
}

fn key_values(rows: &[(&str, String)]) -> String {
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    rows.iter()
        .map(|(k, v)| format!("{k:<width$}  {v}\n"))
        .collect()
}

/// Left-aligned columns separated by two spaces.
pub fn columns(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: Vec<&str>| {
        let text: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        format!("{}\n", text.join("  ").trim_end())
    };
    let mut out = line(header.to_vec());
    for row in rows {
        out.push_str(&line(row.iter().map(String::as_str).collect()));
    }
    out
}
