//! One line per acceptance criterion. Run with `--nocapture` to see the
//! table; the test fails if any criterion fails or runs past its time limit.

use std::time::{Duration, Instant};

use pegtool::suites::{run_criterion, Context, CRITERIA};

/// Wall-clock ceiling per criterion, seconds.
fn limit(criterion: u8) -> u64 {
    match criterion {
        1 | 2 => 10,
        3 | 5 | 6 | 8 => 300,
        4 => 130,
        7 | 9 => 600,
        10 => 60,
        11 => 120,
        12 => 660,
        13 => 1,
        _ => unreachable!(),
    }
}

#[test]
fn acceptance() {
    let ctx = Context::default();
    let mut failures = Vec::new();
    for c in CRITERIA {
        let clock = Instant::now();
        let results = run_criterion(c, &ctx);
        let elapsed = clock.elapsed();
        let within = elapsed <= Duration::from_secs(limit(c));
        let passed = !results.is_empty() && results.iter().all(|r| r.passed) && within;
        let names: Vec<String> = results
            .iter()
            .map(|r| format!("{}{}", r.name, if r.passed { "" } else { " [failed]" }))
            .collect();
        println!(
            "criterion {c:>2}: {} ({} ms, limit {} s) {}",
            if passed { "PASS" } else { "FAIL" },
            elapsed.as_millis(),
            limit(c),
            names.join("; ")
        );
        if !passed {
            for r in results.iter().filter(|r| !r.passed) {
                println!("    {}: {}", r.name, r.detail);
            }
            failures.push(c);
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
