//! Mergeable summaries of datasets.
//!
//! A dataset is summarised by its size, mean and sum of squared deviations
//! ([`SampleSummary`]). Summaries of disjoint datasets combine exactly into
//! the summary of their union ([`combine_stable`], [`combine_textbook`],
//! [`combine_all`]), and the summary of a missing part can be solved for
//! given the whole and the rest ([`recover_component`]).
//!
//! The [`oracle`] module recomputes summaries from raw values and is the
//! reference the merge algebra is tested against.

mod error;
mod merge;
pub mod oracle;
mod recover;
mod summary;

pub use error::{Result, SummaryError};
pub use merge::{
    combine, combine_all, combine_stable, combine_textbook, combine_tree, combined_mean, Kernel,
    MergeReport,
};
pub use recover::recover_component;
pub use summary::{
    clamp_tolerance, sum_of_squares, variance_from_power_sums, PowerSums, SampleSummary,
    CLAMP_RELATIVE,
};
