//! Reference summaries computed from raw values by the definitions.
//!
//! Everything here works on the data itself: a two-pass mean and sum of
//! squared deviations, accumulated with Neumaier compensated summation.
//! None of it goes through the merge algebra, which is what makes it usable
//! as ground truth for that algebra.

use crate::error::{Result, SummaryError};
use crate::summary::{PowerSums, SampleSummary};

/// An ordered list of finite values.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RawDataset {
    values: Vec<f64>,
}

impl RawDataset {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if let Some(&value) = values.iter().find(|v| !v.is_finite()) {
            return Err(SummaryError::NonFinite {
                field: "value",
                value,
            });
        }
        Ok(RawDataset { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// The multiset union `self ++ other`, order preserved.
    pub fn concat(&self, other: &RawDataset) -> RawDataset {
        let mut values = Vec::with_capacity(self.len() + other.len());
        values.extend_from_slice(&self.values);
        values.extend_from_slice(&other.values);
        RawDataset { values }
    }
}

impl TryFrom<Vec<f64>> for RawDataset {
    type Error = SummaryError;

    fn try_from(values: Vec<f64>) -> Result<Self> {
        RawDataset::new(values)
    }
}

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn total(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = CompensatedSum::default();
        for v in iter {
            acc.add(v);
        }
        acc
    }
}

/// Definitional summary of `data`.
///
/// The mean is refined once by the compensated sum of residuals, and `m2`
/// carries the usual two-pass correction `-(sum of residuals)^2 / n`.
pub fn summarize(data: &RawDataset) -> SampleSummary {
    let values = data.values();
    let n = values.len();
    if n == 0 {
        return SampleSummary::EMPTY;
    }
    let nf = n as f64;
    let rough: CompensatedSum = values.iter().copied().collect();
    let rough = rough.total() / nf;
    let residual: CompensatedSum = values.iter().map(|&v| v - rough).collect();
    let mean = rough + residual.total() / nf;

    if n == 1 {
        return SampleSummary {
            n: 1,
            mean,
            m2: 0.0,
        };
    }
    let mut deviations = CompensatedSum::default();
    let mut squares = CompensatedSum::default();
    for &v in values {
        let d = v - mean;
        deviations.add(d);
        squares.add(d * d);
    }
    let d = deviations.total();
    let m2 = (squares.total() - d * d / nf).max(0.0);
    SampleSummary {
        n: n as u64,
        mean,
        m2,
    }
}

/// `summarize(x ++ y)`.
pub fn concat_summarize(x: &RawDataset, y: &RawDataset) -> SampleSummary {
    summarize(&x.concat(y))
}

/// `(n, sum x, sum x^2)` with compensated accumulation.
pub fn power_sums(data: &RawDataset) -> PowerSums {
    let mut sum = CompensatedSum::default();
    let mut sum_sq = CompensatedSum::default();
    for &v in data.values() {
        sum.add(v);
        sum_sq.add(v * v);
    }
    PowerSums {
        n: data.len() as u64,
        sum: sum.total(),
        sum_sq: sum_sq.total(),
    }
}
