//! Runs every acceptance suite at full size and prints one line per
//! criterion. Exits non-zero if any criterion fails.

use std::time::Instant;

use fusionforge::suites::{self, Suite};
use fusionforge::Config;

fn main() {
    let cfg = Config::default();
    let mut all_passed = true;
    let mut first_runs = Vec::new();
    for suite in Suite::ALL.into_iter().filter(|&s| s != Suite::Determinism) {
        let start = Instant::now();
        match suites::run(suite, &cfg, None) {
            Ok(report) => {
                println!(
                    "{} in {:.1}s",
                    suites::summary_line(&report),
                    start.elapsed().as_secs_f64()
                );
                if !report.passed {
                    for c in report.cases.iter().filter(|c| c.failures > 0).take(5) {
                        println!("    {}: {}", c.name, c.first_failure.as_deref().unwrap_or(""));
                    }
                }
                all_passed &= report.passed;
                first_runs.push((suite, report.to_json()));
            }
            Err(e) => {
                println!("criterion {} [{}]: FAIL ({:#})", suite.criterion(), suite.name(), e);
                all_passed = false;
            }
        }
    }

    // second run on a different worker count; the bytes must not move
    let start = Instant::now();
    let other = Config {
        parallelism: if cfg.parallelism == 1 { 2 } else { 1 },
        ..cfg.clone()
    };
    let mut diffs = Vec::new();
    for (suite, first) in &first_runs {
        let again = suites::run(*suite, &other, None).map(|r| r.to_json());
        if again.as_ref().ok() != Some(first) {
            diffs.push(suite.name());
        }
    }
    let ok = diffs.is_empty() && first_runs.len() == Suite::ALL.len() - 1;
    println!(
        "criterion 8 [determinism]: {} ({} suites re-run, {} diffs{}) in {:.1}s",
        if ok { "PASS" } else { "FAIL" },
        first_runs.len(),
        diffs.len(),
        if diffs.is_empty() {
            String::new()
        } else {
            format!(": {}", diffs.join(", "))
        },
        start.elapsed().as_secs_f64()
    );
    all_passed &= ok;

    if !all_passed {
        println!("acceptance: FAIL");
        std::process::exit(1);
    }
    println!("acceptance: PASS");
}
