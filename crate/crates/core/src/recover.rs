//! Recovering the summary of a missing subgroup from the summary of the
//! whole dataset and the summary of the part that is known.

use crate::error::{Result, SummaryError};
use crate::summary::{clamp_tolerance, SampleSummary};

/// Solves `total = known U missing` for `missing`.
///
/// The missing size is `total.n - known.n`. Its mean and `m2` follow by
/// inverting the stable merge:
///
/// ```text
/// y   = (N t - R k) / A          (evaluated as t + R (t - k) / A)
/// m2y = m2t - m2k - (y - k)^2 R A / N
/// ```
///
/// A negative `m2y` within `1e-9 * max(1, m2t)` is a rounding artifact and
/// becomes 0. Anything more negative means the total cannot contain the
/// known part, reported as [`SummaryError::InconsistentRecovery`] with the
/// smallest total variance that would have been consistent. A missing
/// singleton must come out with zero dispersion under the same tolerance.
pub fn recover_component(total: &SampleSummary, known: &SampleSummary) -> Result<SampleSummary> {
    if total.n <= known.n {
        return Err(SummaryError::Infeasible {
            total: total.n,
            known: known.n,
        });
    }
    if known.n == 0 {
        return Ok(*total);
    }
    let missing_n = total.n - known.n;
    let (n, r, a) = (total.n as f64, known.n as f64, missing_n as f64);

    let mean = total.mean + r * (total.mean - known.mean) / a;
    let delta = mean - known.mean;
    let between = r * a / n * delta * delta;
    let m2 = total.m2 - known.m2 - between;

    let tol = clamp_tolerance(total.m2);
    let inconsistent = || SummaryError::InconsistentRecovery {
        missing_m2: m2,
        min_total_variance: (known.m2 + between) / (n - 1.0),
    };
    let m2 = if m2 < -tol {
        return Err(inconsistent());
    } else if m2 < 0.0 || (missing_n == 1 && m2 <= tol) {
        0.0
    } else if missing_n == 1 {
        return Err(inconsistent());
    } else {
        m2
    };
    Ok(SampleSummary {
        n: missing_n,
        mean,
        m2,
    })
}
