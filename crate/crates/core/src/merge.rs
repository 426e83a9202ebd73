//! Merging summaries of disjoint datasets into the summary of their union.
//!
//! Two kernels compute the same quantity. [`combine_textbook`] evaluates the
//! classical pooled-variance expression
//!
//! ```text
//! S^2 = [ (R-1) Sx^2 + (A-1) Sy^2 + R x^2 + A y^2 - (R x + A y)^2 / (R+A) ] / (R+A-1)
//! ```
//!
//! term by term, which cancels catastrophically once the means dwarf the
//! spread. [`combine_stable`] uses the rearrangement in terms of the
//! difference of means and is the one to use in practice.

use std::fmt;
use std::str::FromStr;

use crate::error::{Result, SummaryError};
use crate::summary::{clamp_non_negative, SampleSummary};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Kernel {
    /// Literal power-sum form of the pooled-variance formula.
    Textbook,
    /// Difference-of-means form.
    #[default]
    Stable,
}

impl Kernel {
    pub fn as_str(&self) -> &'static str {
        match self {
            Kernel::Textbook => "textbook",
            Kernel::Stable => "stable",
        }
    }
}

impl fmt::Display for Kernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Kernel {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "textbook" => Ok(Kernel::Textbook),
            "stable" => Ok(Kernel::Stable),
            other => Err(format!(
                "unknown kernel {other:?} (expected stable or textbook)"
            )),
        }
    }
}

/// Result of a merge together with its decomposition.
///
/// `combined.m2() == within + between_term`, where `within` is the sum of
/// the operands' own `m2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MergeReport {
    pub combined: SampleSummary,
    /// Contribution of the operands' means differing:
    /// `R x^2 + A y^2 - (R x + A y)^2 / (R+A)`, i.e. `R A / (R+A) * (x - y)^2`.
    pub between_term: f64,
    pub kernel: Kernel,
}

impl MergeReport {
    fn passthrough(s: SampleSummary, kernel: Kernel) -> Self {
        MergeReport {
            combined: s,
            between_term: 0.0,
            kernel,
        }
    }
}

/// Mean of the union, `(R x + A y) / (R + A)`.
///
/// Equal means are returned as is, without rounding through the weighted sum.
pub fn combined_mean(a: &SampleSummary, b: &SampleSummary) -> Result<f64> {
    match (a.n, b.n) {
        (0, 0) => Err(SummaryError::EmptyUnion),
        (_, 0) => Ok(a.mean),
        (0, _) => Ok(b.mean),
        _ if a.mean == b.mean => Ok(a.mean),
        (r, s) => {
            let (r, s) = (r as f64, s as f64);
            Ok((r * a.mean + s * b.mean) / (r + s))
        }
    }
}

pub fn combine(a: &SampleSummary, b: &SampleSummary, kernel: Kernel) -> Result<MergeReport> {
    match kernel {
        Kernel::Textbook => combine_textbook(a, b),
        Kernel::Stable => combine_stable(a, b),
    }
}

/// Pooled summary by the classical power-sum formula, evaluated as written.
///
/// `(R-1) Sx^2` is taken to be `m2` of the operand so that empty and
/// single-observation operands need no special casing. An empty operand
/// returns the other one unchanged.
pub fn combine_textbook(a: &SampleSummary, b: &SampleSummary) -> Result<MergeReport> {
    if b.n == 0 {
        return Ok(MergeReport::passthrough(*a, Kernel::Textbook));
    }
    if a.n == 0 {
        return Ok(MergeReport::passthrough(*b, Kernel::Textbook));
    }
    let n = total_count(a, b)?;
    let (r, s) = (a.n as f64, b.n as f64);
    let total = r + s;

    let weighted_sum = r * a.mean + s * b.mean;
    let mean = combined_mean(a, b)?;
    let squares = r * a.mean * a.mean + s * b.mean * b.mean;
    let mut between = squares - weighted_sum * weighted_sum / total;
    let within = a.m2 + b.m2;
    let mut m2 = within + between;

    if m2 < 0.0 {
        // Rounding here is relative to the cancelled squares, not to m2.
        m2 = clamp_non_negative(m2, within + squares).ok_or(SummaryError::NegativeMerge { m2 })?;
        between = -within;
    }
    Ok(MergeReport {
        combined: SampleSummary { n, mean, m2 },
        between_term: between,
        kernel: Kernel::Textbook,
    })
}

/// Pooled summary from the difference of means:
/// `mean = x + A (y - x) / (R+A)`, `m2 = m2x + m2y + (y - x)^2 R A / (R+A)`.
pub fn combine_stable(a: &SampleSummary, b: &SampleSummary) -> Result<MergeReport> {
    if b.n == 0 {
        return Ok(MergeReport::passthrough(*a, Kernel::Stable));
    }
    if a.n == 0 {
        return Ok(MergeReport::passthrough(*b, Kernel::Stable));
    }
    let n = total_count(a, b)?;
    let (r, s) = (a.n as f64, b.n as f64);
    let total = r + s;

    let delta = b.mean - a.mean;
    let mean = a.mean + s * delta / total;
    let between = r * s / total * delta * delta;
    let m2 = (a.m2 + b.m2) + between;
    Ok(MergeReport {
        combined: SampleSummary { n, mean, m2 },
        between_term: between,
        kernel: Kernel::Stable,
    })
}

/// Summary of the concatenation of `parts`, folded left to right.
///
/// Empty parts are skipped. The reported `between_term` is the sum of the
/// between-group terms of each pairwise step. Fails with
/// [`SummaryError::EmptyUnion`] if no part has observations.
pub fn combine_all(parts: &[SampleSummary], kernel: Kernel) -> Result<MergeReport> {
    let mut non_empty = parts.iter().filter(|p| p.n > 0);
    let first = *non_empty.next().ok_or(SummaryError::EmptyUnion)?;
    non_empty.try_fold(MergeReport::passthrough(first, kernel), |acc, part| {
        let step = combine(&acc.combined, part, kernel)?;
        Ok(MergeReport {
            combined: step.combined,
            between_term: acc.between_term + step.between_term,
            kernel,
        })
    })
}

/// Same result as [`combine_all`] up to rounding, merged as a balanced tree.
pub fn combine_tree(parts: &[SampleSummary], kernel: Kernel) -> Result<MergeReport> {
    let non_empty: Vec<SampleSummary> = parts.iter().copied().filter(|p| p.n > 0).collect();
    if non_empty.is_empty() {
        return Err(SummaryError::EmptyUnion);
    }
    tree(&non_empty, kernel)
}

fn tree(parts: &[SampleSummary], kernel: Kernel) -> Result<MergeReport> {
    if let [single] = parts {
        return Ok(MergeReport::passthrough(*single, kernel));
    }
    let (left, right) = parts.split_at(parts.len() / 2);
    let left = tree(left, kernel)?;
    let right = tree(right, kernel)?;
    let step = combine(&left.combined, &right.combined, kernel)?;
    Ok(MergeReport {
        combined: step.combined,
        between_term: left.between_term + right.between_term + step.between_term,
        kernel,
    })
}

fn total_count(a: &SampleSummary, b: &SampleSummary) -> Result<u64> {
    a.n.checked_add(b.n)
        .ok_or_else(|| SummaryError::InvalidSummary("combined count overflows u64".into()))
}
