//! Runs the randomized property suites and prints the per-property counts.

use hilbgeom::verify::{run, Suite, VerifyConfig};

fn main() -> hilbgeom::Result<()> {
    let seed = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(0);
    let report = run(
        Suite::All,
        &VerifyConfig {
            seed,
            trials: 100,
            check_tol: None,
        },
    )?;
    for p in &report.properties {
        println!(
            "{:>15} {:<38} {:>4}/{:<4}",
            p.suite.name(),
            p.name,
            p.passed,
            p.trials
        );
    }
    println!("all passed: {}", report.passed);
    Ok(())
}
