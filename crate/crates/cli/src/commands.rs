use pooled_core::oracle::{concat_summarize, summarize, RawDataset};
use pooled_core::{
    combine_all, combine_stable, combine_textbook, recover_component, Kernel, SampleSummary,
};
use serde::Serialize;

use crate::config::{OutputFormat, RunConfig};
use crate::error::CliError;
use crate::records::StudyRecord;
use crate::render::{columns, json_line, opt, SummaryLine};

/// Relative tolerance when `|mean| / sd <= BENIGN_RATIO`.
pub const BENIGN_TOLERANCE: f64 = 1e-12;
/// Relative tolerance for data dominated by a large offset.
pub const OFFSET_TOLERANCE: f64 = 1e-9;
pub const BENIGN_RATIO: f64 = 1e3;

/// Merges all records in file order and renders the result.
pub fn cmd_combine(records: &[StudyRecord], cfg: &RunConfig) -> Result<String, CliError> {
    let label = match records {
        [] => return Err(CliError::Input("no records to combine".into())),
        [only] => only.label.as_str(),
        _ => "combined",
    };
    let parts: Vec<SampleSummary> = records.iter().map(|r| r.summary).collect();
    let report = combine_all(&parts, cfg.kernel)?;
    let mut line = SummaryLine::new(label, &report.combined, cfg.precision);
    line.kernel = Some(report.kernel.as_str());
    line.between = Some(report.between_term);
    Ok(line.render(cfg))
}

/// Solves for the part of `total` not covered by `known` and renders it.
pub fn cmd_recover(
    total: &StudyRecord,
    known: &StudyRecord,
    cfg: &RunConfig,
) -> Result<String, CliError> {
    let missing = recover_component(&total.summary, &known.summary)?;
    Ok(SummaryLine::new("missing", &missing, cfg.precision).render(cfg))
}

#[derive(Debug, Clone, Serialize)]
pub struct Comparison {
    pub source: &'static str,
    pub n: u64,
    pub mean: Option<f64>,
    pub sd: Option<f64>,
    pub variance: Option<f64>,
    pub mean_rel_err: f64,
    pub variance_rel_err: f64,
    pub within_tolerance: bool,
}

#[derive(Debug)]
pub struct CheckOutcome {
    pub rendered: String,
    pub warnings: Vec<String>,
    pub passed: bool,
}

impl CheckOutcome {
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            3
        }
    }
}

/// Compares both merge kernels against the summary of the concatenated raw
/// data.
///
/// The stable kernel must always be within tolerance. The textbook kernel
/// must be too, unless the stable kernel is the selected one, in which case
/// its failure is only a warning.
pub fn cmd_check(
    x: &RawDataset,
    y: &RawDataset,
    cfg: &RunConfig,
) -> Result<CheckOutcome, CliError> {
    if x.len() + y.len() < 2 {
        return Err(CliError::Input(
            "check needs at least two values across both files".into(),
        ));
    }
    let (sx, sy) = (summarize(x), summarize(y));
    let oracle = concat_summarize(x, y);
    let tolerance = tolerance_for(&oracle);
    let mean_scale = [sx.mean(), sy.mean()]
        .into_iter()
        .flatten()
        .fold(0.0, |m, v| f64::max(m, v.abs()));

    let compare = |source: &'static str, s: &SampleSummary| {
        let mean_rel_err = relative_error(
            s.mean().unwrap_or(0.0),
            oracle.mean().unwrap_or(0.0),
            mean_scale,
        );
        let variance_rel_err = match (s.sample_variance(), oracle.sample_variance()) {
            (Some(a), Some(b)) => relative_error(a, b, 0.0),
            _ => f64::INFINITY,
        };
        let within_tolerance =
            s.n() == oracle.n() && mean_rel_err <= tolerance && variance_rel_err <= tolerance;
        Comparison {
            source,
            n: s.n(),
            mean: s.mean(),
            sd: s.sample_sd(),
            variance: s.sample_variance(),
            mean_rel_err,
            variance_rel_err,
            within_tolerance,
        }
    };

    let reference = compare("oracle", &oracle);
    let stable = compare("stable", &combine_stable(&sx, &sy)?.combined);
    let textbook = match combine_textbook(&sx, &sy) {
        Ok(r) => compare("textbook", &r.combined),
        Err(e) if e.is_inconsistency() => Comparison {
            within_tolerance: false,
            mean_rel_err: f64::INFINITY,
            variance_rel_err: f64::INFINITY,
            ..compare("textbook", &SampleSummary::EMPTY)
        },
        Err(e) => return Err(e.into()),
    };

    let mut warnings = Vec::new();
    let mut passed = stable.within_tolerance;
    if !textbook.within_tolerance {
        let msg = format!(
            "textbook kernel outside tolerance {tolerance:e} (variance relative error {:e})",
            textbook.variance_rel_err
        );
        if cfg.kernel == Kernel::Stable {
            warnings.push(msg);
        } else {
            passed = false;
        }
    }
    if !stable.within_tolerance {
        warnings.push(format!(
            "stable kernel outside tolerance {tolerance:e} (variance relative error {:e})",
            stable.variance_rel_err
        ));
    }

    let rows = [reference, stable, textbook];
    let rendered = match cfg.format {
        OutputFormat::JsonLines => rows.iter().map(json_line).collect(),
        OutputFormat::Table => {
            let p = cfg.precision;
            let body: Vec<Vec<String>> = rows
                .iter()
                .map(|c| {
                    vec![
                        c.source.to_string(),
                        c.n.to_string(),
                        opt(c.mean, p),
                        opt(c.sd, p),
                        opt(c.variance, p),
                        format!("{:.3e}", c.mean_rel_err),
                        format!("{:.3e}", c.variance_rel_err),
                        if c.within_tolerance { "ok" } else { "FAIL" }.to_string(),
                    ]
                })
                .collect();
            let mut out = columns(
                &[
                    "source",
                    "n",
                    "mean",
                    "sd",
                    "variance",
                    "mean_rel_err",
                    "var_rel_err",
                    "status",
                ],
                &body,
            );
            out.push_str(&format!(
                "tolerance {tolerance:e} (selected kernel: {})\n",
                cfg.kernel
            ));
            out
        }
    };
    Ok(CheckOutcome {
        rendered,
        warnings,
        passed,
    })
}

/// Tolerance for a comparison against `oracle`: tight for benign data and
/// looser once the mean exceeds the spread by more than `BENIGN_RATIO`.
pub fn tolerance_for(oracle: &SampleSummary) -> f64 {
    let mean = oracle.mean().unwrap_or(0.0).abs();
    let sd = oracle.sample_sd().unwrap_or(0.0);
    if mean <= BENIGN_RATIO * sd {
        BENIGN_TOLERANCE
    } else {
        OFFSET_TOLERANCE
    }
}

/// `|a - b| / max(|a|, |b|, scale)`, 0 when the denominator is 0.
pub fn relative_error(a: f64, b: f64, scale: f64) -> f64 {
    let denom = a.abs().max(b.abs()).max(scale.abs());
    if denom == 0.0 {
        0.0
    } else {
        (a - b).abs() / denom
    }
}
