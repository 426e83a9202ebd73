use std::io::Read;
use std::path::{Path, PathBuf};
use std::process;

use clap::{Parser, Subcommand, ValueEnum};
use pooled_cli::{
    cmd_check, cmd_combine, cmd_recover, parse_raw_values, parse_records, CliError, OutputFormat,
    RunConfig, StudyRecord,
};
use pooled_core::Kernel;

/// Combine (n, mean, sd) study summaries into the summary of their union,
/// or recover a missing subgroup from a total and a known part.
#[derive(Debug, Parser)]
#[command(name = "pooled", version)]
struct Cli {
    /// Merge kernel.
    #[arg(long, global = true, value_enum, default_value_t = KernelArg::Stable)]
    kernel: KernelArg,

    /// Read the `sd` input field as a variance.
    #[arg(long, global = true)]
    variance_input: bool,

    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Table)]
    format: FormatArg,

    /// Digits after the decimal point in displayed values.
    #[arg(long, global = true, default_value_t = 6,
          value_parser = clap::value_parser!(u8).range(1..=17))]
    precision: u8,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Merge every record of a CSV or JSON-lines file, in file order.
    Combine {
        /// Input file; stdin when omitted or `-`.
        input: Option<PathBuf>,
    },
    /// Solve for the records missing from a total, given a known part.
    ///
    /// Without --total/--known the input must hold exactly two records:
    /// the total first and the known part second.
    Recover {
        input: Option<PathBuf>,
        /// Label of the record describing the whole dataset.
        #[arg(long)]
        total: Option<String>,
        /// Label of the record describing the known part.
        #[arg(long)]
        known: Option<String>,
    },
    /// Verify both kernels against the summary of two raw data files.
    Check { x: PathBuf, y: PathBuf },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum KernelArg {
    Stable,
    Textbook,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Table,
    Jsonl,
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            process::exit(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let cfg = RunConfig {
        kernel: match cli.kernel {
            KernelArg::Stable => Kernel::Stable,
            KernelArg::Textbook => Kernel::Textbook,
        },
        variance_input: cli.variance_input,
        format: match cli.format {
            FormatArg::Table => OutputFormat::Table,
            FormatArg::Jsonl => OutputFormat::JsonLines,
        },
        precision: cli.precision as usize,
    };
    let code = match run(&cli.command, &cfg) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    process::exit(code);
}

fn run(command: &Command, cfg: &RunConfig) -> Result<i32, CliError> {
    match command {
        Command::Combine { input } => {
            let records = parse_records(&read_input(input.as_deref())?, cfg.variance_input)?;
            print!("{}", cmd_combine(&records, cfg)?);
            Ok(0)
        }
        Command::Recover {
            input,
            total,
            known,
        } => {
            let records = parse_records(&read_input(input.as_deref())?, cfg.variance_input)?;
            let (total, known) = select_pair(&records, total.as_deref(), known.as_deref())?;
            print!("{}", cmd_recover(total, known, cfg)?);
            Ok(0)
        }
        Command::Check { x, y } => {
            let x = parse_raw_values(&read_input(Some(x))?)?;
            let y = parse_raw_values(&read_input(Some(y))?)?;
            let outcome = cmd_check(&x, &y, cfg)?;
            print!("{}", outcome.rendered);
            for w in &outcome.warnings {
                eprintln!("warning: {w}");
            }
            Ok(outcome.exit_code())
        }
    }
}

fn select_pair<'a>(
    records: &'a [StudyRecord],
    total: Option<&str>,
    known: Option<&str>,
) -> Result<(&'a StudyRecord, &'a StudyRecord), CliError> {
    let find = |label: &str| {
        records
            .iter()
            .find(|r| r.label == label)
            .ok_or_else(|| CliError::Input(format!("no record labelled {label:?}")))
    };
    let other = |picked: &StudyRecord| match records {
        [a, b] => Ok(if a.label == picked.label { b } else { a }),
        _ => Err(CliError::Input(
            "give both --total and --known unless the input has exactly two records".into(),
        )),
    };
    match (total, known) {
        (Some(t), Some(k)) => Ok((find(t)?, find(k)?)),
        (Some(t), None) => {
            let t = find(t)?;
            Ok((t, other(t)?))
        }
        (None, Some(k)) => {
            let k = find(k)?;
            Ok((other(k)?, k))
        }
        (None, None) => match records {
            [t, k] => Ok((t, k)),
            _ => Err(CliError::Input(format!(
                "recover expects two records (total, known), found {}",
                records.len()
            ))),
        },
    }
}

fn read_input(path: Option<&Path>) -> Result<String, CliError> {
    let mut text = String::new();
    match path {
        None => read_stdin(&mut text),
        Some(p) if p == Path::new("-") => read_stdin(&mut text),
        Some(p) => {
            text = std::fs::read_to_string(p).map_err(|source| CliError::Io {
                path: p.display().to_string(),
                source,
            })?;
            Ok(())
        }
    }?;
    Ok(text)
}

fn read_stdin(buf: &mut String) -> Result<(), CliError> {
    std::io::stdin()
        .read_to_string(buf)
        .map(drop)
        .map_err(|source| CliError::Io {
            path: "<stdin>".into(),
            source,
        })
}
