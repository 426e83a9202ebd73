use pooled_core::Kernel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Table,
    JsonLines,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunConfig {
    pub kernel: Kernel,
    /// Read the `sd` input column as a variance.
    pub variance_input: bool,
    pub format: OutputFormat,
    /// Digits after the decimal point in display values, 1..=17.
    pub precision: usize,
}

impl RunConfig {
    pub const MIN_PRECISION: usize = 1;
    pub const MAX_PRECISION: usize = 17;
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            kernel: Kernel::Stable,
            variance_input: false,
            format: OutputFormat::Table,
            precision: 6,
        }
    }
}
