//! Runs every acceptance criterion and prints one PASS/FAIL line each.
//! `VMINOR_SEED` overrides the seed; arguments select criteria by id.

use std::process::ExitCode;
use std::time::Instant;

use vminor_suite::{criteria, SuiteConfig};

fn main() -> ExitCode {
    let mut cfg = SuiteConfig::default();
    if let Some(seed) = std::env::var("VMINOR_SEED").ok().and_then(|s| s.parse().ok()) {
        cfg.seed = seed;
    }
    // Cargo passes libtest flags such as `--nocapture`; only numbers select.
    let only: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for c in criteria().iter().filter(|c| only.is_empty() || only.contains(&c.id)) {
        let start = Instant::now();
        let report = c.run(&cfg);
        println!("{report} ({:.1}s)", start.elapsed().as_secs_f64());
        if !report.passed {
            failed += 1;
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
