//! Summary representations of a dataset.
//!
//! A [`SampleSummary`] keeps the count, the mean and `m2`, the sum of squared
//! deviations from the mean. Storing `m2` instead of the sample variance makes
//! empty and single-observation summaries representable; the variance is a
//! derived view that only exists for `n >= 2`.

use crate::error::{Result, SummaryError};

/// Relative size of a negative rounding artifact that is clamped to zero
/// rather than reported as an inconsistency.
pub const CLAMP_RELATIVE: f64 = 1e-9;

/// Absolute clamp threshold for a quantity computed at magnitude `scale`.
pub fn clamp_tolerance(scale: f64) -> f64 {
    CLAMP_RELATIVE * scale.abs().max(1.0)
}

/// Size, mean and sum of squared deviations of a dataset.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SampleSummary {
    pub(crate) n: u64,
    pub(crate) mean: f64,
    pub(crate) m2: f64,
}

impl SampleSummary {
    /// The summary of an empty dataset; the identity of every merge.
    pub const EMPTY: SampleSummary = SampleSummary {
        n: 0,
        mean: 0.0,
        m2: 0.0,
    };

    pub fn empty() -> Self {
        Self::EMPTY
    }

    pub fn singleton(value: f64) -> Result<Self> {
        check_finite("mean", value)?;
        Ok(SampleSummary {
            n: 1,
            mean: value,
            m2: 0.0,
        })
    }

    /// Builds a summary from a reported size, mean and sample variance
    /// (Bessel divisor), so that `m2 = (n - 1) * variance`.
    pub fn from_stats(n: u64, mean: f64, variance: f64) -> Result<Self> {
        if n < 2 {
            return Err(SummaryError::UndefinedVariance { n });
        }
        check_finite("mean", mean)?;
        check_finite("variance", variance)?;
        if variance < 0.0 {
            return Err(SummaryError::NegativeVariance(variance));
        }
        Self::from_m2(n, mean, (n - 1) as f64 * variance)
    }

    /// Builds a summary directly from its stored representation.
    pub fn from_m2(n: u64, mean: f64, m2: f64) -> Result<Self> {
        check_finite("mean", mean)?;
        check_finite("m2", m2)?;
        if m2 < 0.0 {
            return Err(SummaryError::InvalidSummary(format!(
                "m2 must be non-negative, got {m2}"
            )));
        }
        match n {
            0 if mean != 0.0 || m2 != 0.0 => Err(SummaryError::InvalidSummary(
                "an empty summary must have zero mean and m2".into(),
            )),
            1 if m2 != 0.0 => Err(SummaryError::InvalidSummary(format!(
                "a single observation has no dispersion, got m2 = {m2}"
            ))),
            _ => Ok(SampleSummary { n, mean, m2 }),
        }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Mean of the data; `None` for the empty summary.
    pub fn mean(&self) -> Option<f64> {
        (self.n > 0).then_some(self.mean)
    }

    /// Sum of squared deviations from the mean.
    pub fn m2(&self) -> f64 {
        self.m2
    }

    /// `m2 / (n - 1)`, or `None` when `n < 2`.
    pub fn sample_variance(&self) -> Option<f64> {
        (self.n >= 2).then(|| self.m2 / (self.n - 1) as f64)
    }

    pub fn sample_sd(&self) -> Option<f64> {
        self.sample_variance().map(f64::sqrt)
    }

    /// `m2 / n`, or `None` for the empty summary.
    pub fn population_variance(&self) -> Option<f64> {
        (self.n >= 1).then(|| self.m2 / self.n as f64)
    }
}

/// Raw power sums `(n, sum x, sum x^2)` of a dataset.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PowerSums {
    pub n: u64,
    pub sum: f64,
    pub sum_sq: f64,
}

impl PowerSums {
    pub fn new(n: u64, sum: f64, sum_sq: f64) -> Result<Self> {
        check_finite("sum", sum)?;
        check_finite("sum_sq", sum_sq)?;
        if n == 0 && (sum != 0.0 || sum_sq != 0.0) {
            return Err(SummaryError::InvalidSummary(
                "empty power sums must be zero".into(),
            ));
        }
        if sum_sq < 0.0 {
            return Err(SummaryError::InvalidSummary(format!(
                "sum of squares must be non-negative, got {sum_sq}"
            )));
        }
        Ok(PowerSums { n, sum, sum_sq })
    }

    /// Power sums implied by a summary: `sum = n * mean`, `sum_sq` from
    /// [`sum_of_squares`].
    pub fn from_summary(s: &SampleSummary) -> Self {
        PowerSums {
            n: s.n,
            sum: s.n as f64 * s.mean,
            sum_sq: sum_of_squares(s),
        }
    }
}

/// Sum of squares of the underlying data, `m2 + n * mean^2`.
///
/// This is the raw second power sum recovered from `(n, mean, S^2)` as
/// `(n - 1) * S^2 + n * mean^2`. The empty summary yields 0.
pub fn sum_of_squares(s: &SampleSummary) -> f64 {
    if s.n == 0 {
        return 0.0;
    }
    s.m2 + s.n as f64 * s.mean * s.mean
}

/// Sample variance `[sum_sq - n * (sum / n)^2] / (n - 1)` from power sums.
///
/// A negative numerator within rounding of `sum_sq` is clamped to zero;
/// anything below that is reported as inconsistent.
pub fn variance_from_power_sums(ps: &PowerSums) -> Result<f64> {
    if ps.n < 2 {
        return Err(SummaryError::UndefinedVariance { n: ps.n });
    }
    let n = ps.n as f64;
    let mean = ps.sum / n;
    let numerator = ps.sum_sq - n * mean * mean;
    let numerator = clamp_non_negative(numerator, ps.sum_sq)
        .ok_or(SummaryError::InconsistentPowerSums { numerator })?;
    Ok(numerator / (n - 1.0))
}

/// Returns `value` if non-negative, 0 if it is a small negative rounding
/// artifact relative to `scale`, and `None` otherwise.
pub(crate) fn clamp_non_negative(value: f64, scale: f64) -> Option<f64> {
    if value >= 0.0 {
        Some(value)
    } else if value >= -clamp_tolerance(scale) {
        Some(0.0)
    } else {
        None
    }
}

fn check_finite(field: &'static str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(SummaryError::NonFinite { field, value })
    }
}
