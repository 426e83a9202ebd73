//! Seeded data generators and helpers shared by the integration tests.
#![allow(dead_code)]

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use pooled_core::oracle::{summarize, RawDataset};
use pooled_core::SampleSummary;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `|a - b| / max(|a|, |b|, scale)`; 0 when everything is zero.
pub fn rel(a: f64, b: f64, scale: f64) -> f64 {
    let denom = a.abs().max(b.abs()).max(scale.abs());
    if denom == 0.0 {
        0.0
    } else {
        (a - b).abs() / denom
    }
}

pub fn mean_of(s: &SampleSummary) -> f64 {
    s.mean().unwrap_or(0.0)
}

pub fn raw(values: Vec<f64>) -> RawDataset {
    RawDataset::new(values).unwrap()
}

/// Between 0 and `max_len` values, uniform on [-1e3, 1e3].
pub fn uniform_values(rng: &mut impl Rng, max_len: usize) -> Vec<f64> {
    let n = rng.gen_range(0..=max_len);
    (0..n).map(|_| rng.gen_range(-1e3..1e3)).collect()
}

/// A pair of raw datasets of 0..=50 values each with at least two in total.
pub fn uniform_pair(rng: &mut impl Rng) -> (RawDataset, RawDataset) {
    loop {
        let x = uniform_values(rng, 50);
        let y = uniform_values(rng, 50);
        if x.len() + y.len() >= 2 {
            return (raw(x), raw(y));
        }
    }
}

/// `n` values with sample sd 0.5 whose mean is `offset + centre`.
pub fn shifted_group(rng: &mut impl Rng, n: usize, offset: f64, centre: f64) -> Vec<f64> {
    let base: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let s = summarize(&raw(base.clone()));
    let (mean, sd) = (mean_of(&s), s.sample_sd().unwrap());
    base.iter()
        .map(|v| offset + centre + 0.5 * (v - mean) / sd)
        .collect()
}

/// Size in 1..=50, |mean| <= 1e3, sd in [1e2, 1e3].
pub fn comparable_summary(rng: &mut impl Rng) -> SampleSummary {
    let n = rng.gen_range(1..=50u64);
    let mean = rng.gen_range(-1e3..1e3);
    if n == 1 {
        return SampleSummary::singleton(mean).unwrap();
    }
    let sd: f64 = rng.gen_range(1e2..1e3);
    SampleSummary::from_stats(n, mean, sd * sd).unwrap()
}

/// Size in 2..=1000, sd in [1, 1e3], |mean| / sd <= 10.
pub fn benign_summary(rng: &mut impl Rng) -> SampleSummary {
    let n = rng.gen_range(2..=1000u64);
    let sd: f64 = rng.gen_range(1.0..1e3);
    let mean = rng.gen_range(-10.0..10.0) * sd;
    SampleSummary::from_stats(n, mean, sd * sd).unwrap()
}

pub fn bin() -> PathBuf {
    PathBuf::from(env!("CARGO_BIN_EXE_pooled"))
}

pub fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(bin())
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn pooled");
    // The child may exit before reading stdin (usage errors).
    let _ = child.stdin.take().unwrap().write_all(stdin.as_bytes());
    child.wait_with_output().unwrap()
}

pub fn write_values(dir: &Path, name: &str, values: &[f64]) -> PathBuf {
    let path = dir.join(name);
    let mut text = String::from("# generated\n");
    for v in values {
        text.push_str(&format!("{v:?}\n"));
    }
    std::fs::write(&path, text).unwrap();
    path
}

pub fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

pub fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}
