//! Runs all twelve acceptance criteria, printing one PASS/FAIL line each,
//! and enforces the runtime limits.

use std::time::{Duration, Instant};

use lietype::suite::{run_criterion, CRITERIA};
use lietype::Limits;

fn limit(number: usize) -> Option<Duration> {
    match number {
        3 => Some(Duration::from_secs(10)),
        5 => Some(Duration::from_secs(30)),
        8 => Some(Duration::from_secs(60)),
        _ => None,
    }
}

fn main() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for number in 1..=CRITERIA.len() {
        let outcome = match run_criterion(number, Limits::default()) {
            Ok(o) => o,
            Err(e) => {
                println!(
                    "FAIL criterion {number:>2}: {} (error: {e})",
                    CRITERIA[number - 1]
                );
                failures.push(number);
                continue;
            }
        };
        let mut ok = outcome.pass();
        let mut notes = Vec::new();
        if let Some(max) = limit(number) {
            if outcome.elapsed > max {
                ok = false;
                notes.push(format!("took {:?}, limit {max:?}", outcome.elapsed));
            }
        }
        if number == 1 {
            for (case, t) in &outcome.case_times {
                if *t > Duration::from_secs(1) {
                    ok = false;
                    notes.push(format!("{case} took {t:?}"));
                }
            }
        }
        let passed = outcome.claims.iter().filter(|c| c.pass).count();
        println!(
            "{} criterion {number:>2}: {} ({passed}/{} claims, {:.2?})",
            if ok { "PASS" } else { "FAIL" },
            outcome.title,
            outcome.claims.len(),
            outcome.elapsed
        );
        for c in outcome.claims.iter().filter(|c| !c.pass) {
            println!(
                "    failed: {}: expected {}, computed {}",
                c.description, c.expected, c.computed
            );
        }
        for n in notes {
            println!("    {n}");
        }
        if !ok {
            failures.push(number);
        }
    }
    let total = start.elapsed();
    println!("suite runtime {total:.2?}");
    if total > Duration::from_secs(180) {
        println!("FAIL suite runtime exceeds 3 minutes");
        std::process::exit(1);
    }
    if !failures.is_empty() {
        println!("failed criteria: {failures:?}");
        std::process::exit(1);
    }
}
