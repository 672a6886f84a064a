//! One PASS/FAIL line per acceptance criterion, each under a time limit.
//!
//! Criterion 6 is known to fail: the HSpin8 module is irreducible mod 2 by
//! an exact computation, while the expected verdict is the weaker "at most 2
//! blocks". The test pins that outcome instead of hiding it.

use std::process::Command;
use std::time::{Duration, Instant};

use heckendo_cli::reproduce::{criterion, Row};

const LIMITS: [(u32, u64); 9] = [(1, 1), (2, 5), (3, 30), (4, 300), (5, 60), (6, 300), (7, 1), (8, 1), (9, 600)];

/// Criteria whose expectation is not met, with a fragment of the reason.
const KNOWN_FAILURES: [(u32, &str); 1] = [(6, "HSpin8: irreducible with 1 class(es)")];

fn line(row: &Row, elapsed: Duration, limit: Duration) -> (bool, String) {
    let in_time = elapsed <= limit;
    let ok = row.passed && in_time;
    let mut s = format!(
        "criterion {:>2} {}  {}  ({:.2}s, limit {}s)",
        row.criterion,
        if ok { "PASS" } else { "FAIL" },
        row.title,
        elapsed.as_secs_f64(),
        limit.as_secs()
    );
    if !in_time {
        s.push_str("  over the time limit");
    }
    for d in row.details.iter().filter(|d| d.starts_with("mismatch")) {
        s.push_str(&format!("\n    {d}"));
    }
    (ok, s)
}

fn determinism() -> (bool, String) {
    let bin = env!("CARGO_BIN_EXE_heckendo");
    let dir = std::env::temp_dir().join(format!("heckendo-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let run = |name: &str| {
        let path = dir.join(name);
        let out = Command::new(bin)
            .args(["reproduce-paper", "--format", "json", "--out"])
            .arg(&path)
            .output()
            .expect("binary runs");
        (std::fs::read(&path).expect("report written"), out.stdout, out.status.code())
    };
    let t = Instant::now();
    let a = run("first.json");
    let b = run("second.json");
    let _ = std::fs::remove_dir_all(&dir);
    let ok = a == b && !a.0.is_empty();
    (
        ok,
        format!(
            "criterion 10 {}  determinism: two reproduce-paper runs, {} report bytes, identical: {}  ({:.2}s)",
            if ok { "PASS" } else { "FAIL" },
            a.0.len(),
            a == b,
            t.elapsed().as_secs_f64()
        ),
    )
}

fn main() {
    let mut unexpected = Vec::new();
    for (k, secs) in LIMITS {
        let t = Instant::now();
        let row = criterion(k);
        let (ok, text) = line(&row, t.elapsed(), Duration::from_secs(secs));
        println!("{text}");
        let known = KNOWN_FAILURES.iter().find(|(c, _)| *c == k);
        match (ok, known) {
            (true, None) => {}
            (false, Some((_, why))) if row.details.iter().any(|d| d.contains(why)) => {
                println!("    known failure, see the project notes");
            }
            (true, Some(_)) => unexpected.push(format!("criterion {k} now passes; update KNOWN_FAILURES")),
            _ => unexpected.push(format!("criterion {k} failed")),
        }
    }
    let (ok, text) = determinism();
    println!("{text}");
    if !ok {
        unexpected.push("criterion 10 failed".into());
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected acceptance results: {unexpected:?}");
        std::process::exit(1);
    }
}
