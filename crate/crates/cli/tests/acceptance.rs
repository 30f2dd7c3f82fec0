//! Runs every acceptance criterion and prints one PASS/FAIL line for each.
//! Built without the libtest harness so the lines always reach stdout.

use std::process::Command;
use std::time::{Duration, Instant};

use colnum::battery::{self, CriterionReport};

const SEED: u64 = 7;

struct Line {
    id: u32,
    passed: bool,
    text: String,
}

fn timed(limit_secs: u64, run: impl FnOnce() -> CriterionReport) -> Line {
    let start = Instant::now();
    let rep = run();
    line(rep, start.elapsed(), limit_secs)
}

fn line(rep: CriterionReport, took: Duration, limit_secs: u64) -> Line {
    let in_time = took <= Duration::from_secs(limit_secs);
    let passed = rep.passed && in_time;
    let mut text = format!(
        "criterion {:>2} {} {} ({} checks, {:.2}s of {}s)",
        rep.id,
        if passed { "PASS" } else { "FAIL" },
        rep.name,
        rep.checked,
        took.as_secs_f64(),
        limit_secs
    );
    for f in &rep.failures {
        text += &format!("\n    {f}");
    }
    Line { id: rep.id, passed, text }
}

fn verify_all_bytes() -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_colnum"))
        .args(["verify", "all", "--seed", &SEED.to_string(), "--no-timestamp"])
        .output()
        .expect("binary runs");
    assert!(out.status.code().is_some(), "verify all was killed");
    out.stdout
}

fn main() {
    let mut lines = vec![
        timed(120, || battery::suite_oracle(SEED)),
        timed(300, || battery::suite_sandwich(SEED)),
        timed(900, || battery::suite_width_parameters(SEED)),
    ];

    let start = Instant::now();
    let (layered, collect) = battery::suite_layered_bound(SEED);
    let took = start.elapsed();
    lines.push(line(layered, took, 600));
    lines.push(line(collect, took, 600));

    lines.push(timed(1200, || battery::suite_dyadic(SEED)));
    lines.push(timed(600, || battery::suite_multi(SEED)));
    lines.push(timed(600, || battery::suite_eps(SEED)));
    lines.push(timed(600, || battery::suite_two_radii(SEED)));

    let first = verify_all_bytes();
    let second = verify_all_bytes();
    let identical = !first.is_empty() && first == second;
    lines.push(Line {
        id: 9,
        passed: identical,
        text: format!(
            "criterion  9 {} verify all --seed {SEED} twice gives byte-identical reports ({} bytes)",
            if identical { "PASS" } else { "FAIL" },
            first.len()
        ),
    });

    lines.sort_by_key(|l| l.id);
    for l in &lines {
        println!("{}", l.text);
    }
    let failed: Vec<u32> = lines.iter().filter(|l| !l.passed).map(|l| l.id).collect();
    if failed.is_empty() {
        println!("acceptance: all {} criteria pass", lines.len());
    } else {
        println!("acceptance: failing criteria {failed:?}");
        std::process::exit(1);
    }
}
