//! Acceptance suite: one line per criterion, all must pass.

mod common;

use std::time::{Duration, Instant};

use common::*;
use pooled_cli::parse_records;
use pooled_core::oracle::{concat_summarize, summarize};
use pooled_core::{
    combine, combine_all, combine_stable, combine_textbook, combine_tree, recover_component,
    sum_of_squares, variance_from_power_sums, Kernel, PowerSums, SampleSummary, SummaryError,
};

const KERNELS: [Kernel; 2] = [Kernel::Textbook, Kernel::Stable];

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check_close(
    what: &str,
    got: &SampleSummary,
    want: &SampleSummary,
    mean_scale: f64,
    tol: f64,
) -> Result<(), String> {
    if got.n() != want.n() {
        return Err(format!("{what}: n {} != {}", got.n(), want.n()));
    }
    let dm = rel(mean_of(got), mean_of(want), mean_scale);
    if dm > tol {
        return Err(format!(
            "{what}: mean {:?} vs {:?} (rel {dm:e})",
            got.mean(),
            want.mean()
        ));
    }
    match (got.sample_variance(), want.sample_variance()) {
        (Some(a), Some(b)) if rel(a, b, 0.0) > tol => Err(format!(
            "{what}: variance {a} vs {b} (rel {:e})",
            rel(a, b, 0.0)
        )),
        (Some(_), Some(_)) => Ok(()),
        (a, b) if a == b => Ok(()),
        (a, b) => Err(format!("{what}: variance {a:?} vs {b:?}")),
    }
}

fn central_identity() -> Outcome {
    let mut rng = rng(0xA11CE);
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for case in 0..1000 {
        let (x, y) = uniform_pair(&mut rng);
        let (sx, sy) = (summarize(&x), summarize(&y));
        let want = concat_summarize(&x, &y);
        let scale = mean_of(&sx).abs().max(mean_of(&sy).abs());
        for kernel in KERNELS {
            let got = combine(&sx, &sy, kernel)
                .map_err(|e| e.to_string())?
                .combined;
            check_close(&format!("case {case} {kernel}"), &got, &want, scale, 1e-12)?;
            worst = worst.max(rel(
                got.sample_variance().unwrap_or(0.0),
                want.sample_variance().unwrap_or(0.0),
                0.0,
            ));
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(1) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!(
        "1000 pairs, worst variance rel err {worst:.2e}, {elapsed:?}"
    ))
}

fn worked_fixture() -> Outcome {
    let x = summarize(&raw(vec![1.0, 2.0, 3.0]));
    let y = summarize(&raw(vec![4.0, 6.0]));
    // Hand substitution: R = 3, x = 2, Sx^2 = 1; A = 2, y = 5, Sy^2 = 2.
    let (r, xm, sx2, a, ym, sy2) = (3.0, 2.0, 1.0, 2.0, 5.0, 2.0);
    let hand = ((r - 1.0) * sx2 + (a - 1.0) * sy2 + r * xm * xm + a * ym * ym
        - (r * xm + a * ym) * (r * xm + a * ym) / (r + a))
        / (r + a - 1.0);
    let hand_mean = (r * xm + a * ym) / (r + a);
    let oracle = concat_summarize(&raw(vec![1.0, 2.0, 3.0]), &raw(vec![4.0, 6.0]));
    let expected = SampleSummary::from_stats(5, 3.2, 3.7).unwrap();
    let textbook = combine_textbook(&x, &y)
        .map_err(|e| e.to_string())?
        .combined;
    let stable = combine_stable(&x, &y).map_err(|e| e.to_string())?.combined;
    let hand = SampleSummary::from_stats(5, hand_mean, hand).unwrap();
    for (what, s) in [
        ("oracle", oracle),
        ("textbook", textbook),
        ("stable", stable),
        ("hand", hand),
    ] {
        check_close(what, &s, &expected, 3.2, 1e-12)?;
    }
    Ok("(5, 3.2, 3.7) from oracle, both kernels and hand substitution".into())
}

fn power_sum_round_trip() -> Outcome {
    let mut rng = rng(0xB0B);
    let mut worst: f64 = 0.0;
    for case in 0..1000 {
        let s = benign_summary(&mut rng);
        let ps = PowerSums::new(s.n(), s.n() as f64 * mean_of(&s), sum_of_squares(&s))
            .map_err(|e| e.to_string())?;
        let v = variance_from_power_sums(&ps).map_err(|e| e.to_string())?;
        let err = rel(v, s.sample_variance().unwrap(), 0.0);
        if err > 1e-12 {
            return Err(format!("case {case}: {s:?} -> {v} (rel {err:e})"));
        }
        worst = worst.max(err);
    }
    Ok(format!("1000 summaries, worst rel err {worst:.2e}"))
}

fn recovery_round_trip() -> Outcome {
    let mut rng = rng(0xC0FFEE);
    for case in 0..1000 {
        let a = comparable_summary(&mut rng);
        let b = comparable_summary(&mut rng);
        let total = combine_stable(&a, &b).map_err(|e| e.to_string())?.combined;
        let got = recover_component(&total, &a).map_err(|e| format!("case {case}: {e}"))?;
        let scale = mean_of(&a).abs().max(mean_of(&b).abs());
        check_close(&format!("case {case}"), &got, &b, scale, 1e-9)?;
    }

    let mut rejected = 0;
    for _ in 0..100 {
        let known = loop {
            let s = comparable_summary(&mut rng);
            if s.n() >= 2 {
                break s;
            }
        };
        let extra = rand::Rng::gen_range(&mut rng, 1..=50u64);
        let n = known.n() + extra;
        let mean = rand::Rng::gen_range(&mut rng, -1e3..1e3);
        // Any superset of `known` with this size and mean has at least this m2.
        let delta = (mean - mean_of(&known)) * n as f64 / extra as f64;
        let min_m2 = known.m2() + known.n() as f64 * extra as f64 / n as f64 * delta * delta;
        let fraction = rand::Rng::gen_range(&mut rng, 0.0..0.99);
        let fabricated = SampleSummary::from_m2(n, mean, fraction * min_m2).unwrap();
        if let Err(SummaryError::InconsistentRecovery { .. }) =
            recover_component(&fabricated, &known)
        {
            rejected += 1;
        }
    }
    if rejected != 100 {
        return Err(format!("only {rejected}/100 fabricated totals rejected"));
    }
    Ok("1000 round trips within 1e-9; 100/100 fabricated totals rejected".into())
}

fn cancellation_demonstration() -> Outcome {
    let mut rng = rng(0xDEAD);
    let mut worst_stable: f64 = 0.0;
    let mut best_textbook = f64::INFINITY;
    for trial in 0..20 {
        let x = raw(shifted_group(&mut rng, 25, 1e8, 0.003));
        let y = raw(shifted_group(&mut rng, 25, 1e8, -0.002));
        let (sx, sy) = (summarize(&x), summarize(&y));
        let oracle = concat_summarize(&x, &y).sample_variance().unwrap();
        let stable = combine_stable(&sx, &sy)
            .map_err(|e| e.to_string())?
            .combined;
        let textbook = combine_textbook(&sx, &sy)
            .map_err(|e| e.to_string())?
            .combined;
        let es = rel(stable.sample_variance().unwrap(), oracle, 0.0);
        let et = rel(textbook.sample_variance().unwrap(), oracle, 0.0);
        if es > 1e-9 {
            return Err(format!("trial {trial}: stable rel err {es:e}"));
        }
        if et <= 1e-6 {
            return Err(format!("trial {trial}: textbook rel err only {et:e}"));
        }
        worst_stable = worst_stable.max(es);
        best_textbook = best_textbook.min(et);
    }
    Ok(format!(
        "20 trials: stable worst {worst_stable:.2e} <= 1e-9, textbook best {best_textbook:.2e} > 1e-6"
    ))
}

fn fold_coherence() -> Outcome {
    let mut rng = rng(0xF01D);
    for k in 2..=16 {
        for trial in 0..50 {
            let parts: Vec<SampleSummary> = (0..k).map(|_| comparable_summary(&mut rng)).collect();
            let scale = parts.iter().map(|p| mean_of(p).abs()).fold(0.0, f64::max);
            for kernel in KERNELS {
                let left = combine_all(&parts, kernel).map_err(|e| e.to_string())?;
                let tree = combine_tree(&parts, kernel).map_err(|e| e.to_string())?;
                check_close(
                    &format!("k={k} trial {trial} {kernel}"),
                    &left.combined,
                    &tree.combined,
                    scale,
                    1e-10,
                )?;
            }
        }
    }
    for case in 0..1000 {
        let s = summarize(&raw(uniform_values(&mut rng, 50)));
        let a = summarize(&raw(uniform_values(&mut rng, 50)));
        for kernel in KERNELS {
            let e = SampleSummary::EMPTY;
            let right = combine(&s, &e, kernel).map_err(|e| e.to_string())?.combined;
            let left = combine(&e, &s, kernel).map_err(|e| e.to_string())?.combined;
            if right != s || left != s {
                return Err(format!("identity case {case} {kernel}"));
            }
            let sa = combine(&s, &a, kernel).map_err(|e| e.to_string())?.combined;
            let as_ = combine(&a, &s, kernel).map_err(|e| e.to_string())?.combined;
            let scale = mean_of(&s).abs().max(mean_of(&a).abs());
            check_close(
                &format!("symmetry case {case} {kernel}"),
                &sa,
                &as_,
                scale,
                1e-12,
            )?;
        }
    }
    Ok("k=2..16 x 50 folds within 1e-10; identity and symmetry on 1000 cases".into())
}

fn cli_end_to_end() -> Outcome {
    let csv = "label,n,mean,sd\nX,3,2.0,1.0\nY,2,5.0,1.4142135623730951\n";
    let out = run(&["combine", "--format", "jsonl", "--precision", "17"], csv);
    if out.status.code() != Some(0) {
        return Err(format!(
            "combine exited {:?}: {}",
            out.status.code(),
            stderr(&out)
        ));
    }
    let back = parse_records(&stdout(&out), false).map_err(|e| e.to_string())?;
    let records = parse_records(csv, false).map_err(|e| e.to_string())?;
    let parts: Vec<SampleSummary> = records.iter().map(|r| r.summary).collect();
    let lib = combine_all(&parts, Kernel::Stable)
        .map_err(|e| e.to_string())?
        .combined;
    let got = back[0].summary;
    if got.n() != lib.n()
        || got.mean().map(f64::to_bits) != lib.mean().map(f64::to_bits)
        || got.m2().to_bits() != lib.m2().to_bits()
    {
        return Err(format!("re-parsed {got:?} != library {lib:?}"));
    }

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut r = rng(0xE2E);
    let x = write_values(dir.path(), "x.txt", &shifted_group(&mut r, 25, 1e8, 0.003));
    let y = write_values(dir.path(), "y.txt", &shifted_group(&mut r, 25, 1e8, -0.002));
    let (x, y) = (x.to_str().unwrap(), y.to_str().unwrap());
    let classes: [(&str, Vec<&str>, &str, i32); 4] = [
        ("valid", vec!["combine"], csv, 0),
        (
            "malformed",
            vec!["combine"],
            "label,n,mean,sd\nX,three,2.0,1.0\n",
            1,
        ),
        (
            "inconsistent",
            vec!["recover", "--variance-input"],
            "label,n,mean,sd\nT,5,3.2,1.0\nK,3,2.0,1.0\n",
            2,
        ),
        (
            "tolerance",
            vec!["check", "--kernel", "textbook", x, y],
            "",
            3,
        ),
    ];
    for (class, args, input, code) in classes {
        let out = run(&args, input);
        if out.status.code() != Some(code) {
            return Err(format!(
                "{class}: exit {:?}, expected {code}",
                out.status.code()
            ));
        }
    }
    Ok("jsonl output re-parses bit-exact; exit codes 0/1/2/3 by input class".into())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 7] = [
        ("central identity", central_identity),
        ("worked fixture", worked_fixture),
        ("power-sum round trip", power_sum_round_trip),
        ("recovery round trip", recovery_round_trip),
        ("cancellation demonstration", cancellation_demonstration),
        ("fold coherence", fold_coherence),
        ("cli end-to-end", cli_end_to_end),
    ];
    let mut failed = Vec::new();
    for (name, criterion) in criteria {
        match criterion() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(why) => {
                println!("FAIL  {name}: {why}");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
