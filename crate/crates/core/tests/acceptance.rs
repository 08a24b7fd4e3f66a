//! One line per acceptance criterion. Tolerances, seeds and time limits are
//! the constants in `cantor_spectra::acceptance`. Runs without the test
//! harness so the lines are always printed.

use std::process::ExitCode;

use cantor_spectra::acceptance;

fn main() -> ExitCode {
    let results = acceptance::run_all();
    for r in &results {
        println!(
            "[{}] criterion {} ({}): {} [{:.2?}]",
            if r.pass { "PASS" } else { "FAIL" },
            r.id,
            r.name,
            r.detail,
            r.elapsed
        );
    }
    let failed: Vec<u8> = results.iter().filter(|r| !r.pass).map(|r| r.id).collect();
    if failed.is_empty() {
        println!("acceptance: {} of {} criteria passed", results.len(), results.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failing criteria {failed:?}");
        ExitCode::FAILURE
    }
}
