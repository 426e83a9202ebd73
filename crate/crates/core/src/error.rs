use thiserror::Error;

pub type Result<T, E = SummaryError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SummaryError {
    /// A variance was supplied or requested for fewer than two observations.
    #[error("sample variance is undefined for n = {n} (need n >= 2)")]
    UndefinedVariance { n: u64 },

    #[error("variance must be non-negative, got {0}")]
    NegativeVariance(f64),

    #[error("{field} must be finite, got {value}")]
    NonFinite { field: &'static str, value: f64 },

    #[error("invalid summary: {0}")]
    InvalidSummary(String),

    /// Mean or merge of a union that contains no observations.
    #[error("the union of the inputs is empty")]
    EmptyUnion,

    #[error("cannot recover a component: total has n = {total}, known part has n = {known}")]
    Infeasible { total: u64, known: u64 },

    /// Power sums with `n * sum_sq < sum^2` beyond rounding.
    #[error("power sums violate n*sum_sq >= sum^2 (numerator {numerator})")]
    InconsistentPowerSums { numerator: f64 },

    /// The claimed total is less dispersed than the known part allows.
    #[error(
        "total is inconsistent with the known part: missing m2 would be {missing_m2}; \
         the smallest consistent total variance is {min_total_variance}"
    )]
    InconsistentRecovery {
        missing_m2: f64,
        min_total_variance: f64,
    },

    /// A merge kernel produced a sum of squared deviations below the rounding tolerance.
    #[error("merge produced a negative sum of squared deviations ({m2})")]
    NegativeMerge { m2: f64 },
}

impl SummaryError {
    /// True for errors that mean the inputs contradict each other, as opposed
    /// to being individually malformed.
    pub fn is_inconsistency(&self) -> bool {
        matches!(
            self,
            SummaryError::Infeasible { .. }
                | SummaryError::InconsistentPowerSums { .. }
                | SummaryError::InconsistentRecovery { .. }
                | SummaryError::NegativeMerge { .. }
        )
    }
}
