//! Acceptance criteria, one line per criterion.
//!
//! Runs without the libtest harness so the lines are printed even when
//! everything passes. `SETFAM_SEED` and `SETFAM_JOBS` override the defaults.

use std::process::ExitCode;

use setfam_core::claims::desk_suite;
use setfam_core::RunConfig;

fn env_or(key: &str, default: u64) -> u64 {
    std::env::var(key).ok().and_then(|v| v.trim().parse().ok()).unwrap_or(default)
}

fn main() -> ExitCode {
    let config = RunConfig {
        seed: env_or("SETFAM_SEED", 0),
        jobs: env_or("SETFAM_JOBS", 1).max(1) as usize,
    };
    println!("acceptance suite (seed {}, {} job(s))", config.seed, config.jobs);
    let items = desk_suite(&config);
    for item in &items {
        println!("{}", item.summary_line());
        if !item.passed {
            for report in &item.reports {
                for note in &report.notes {
                    println!("    note: {note}");
                }
                for w in report.counterexamples.iter().take(3) {
                    println!("    counterexample: {w}");
                }
            }
        }
    }
    let passed = items.iter().filter(|i| i.passed).count();
    println!("{passed}/{} criteria passed", items.len());
    if passed == items.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
