//! Runs every acceptance criterion and prints one line each.

use cantor_spectra::acceptance;

fn main() {
    let results = acceptance::run_all();
    for r in &results {
        let mark = if r.pass { "PASS" } else { "FAIL" };
        println!(
            "[{mark}] {} {}: {} ({:.2?})",
            r.id, r.name, r.detail, r.elapsed
        );
    }
    if results.iter().any(|r| !r.pass) {
        std::process::exit(1);
    }
}
