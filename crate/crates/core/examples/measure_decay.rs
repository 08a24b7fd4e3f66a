//! Label measure of the labels along which λ stays alive, exactly and by
//! Monte Carlo.

use cantor_spectra::constructions::DigitSet;
use cantor_spectra::decision::{decay_profile, monte_carlo_survival};
use num_traits::ToPrimitive;

fn main() -> cantor_spectra::Result<()> {
    let c = DigitSet::new(&[1, 3])?;
    let profile = decay_profile(&c, -1, 10);
    println!("C = {{1, 3}}, λ = -1:");
    for (k, q) in profile.iter().enumerate() {
        println!("  k={k:>2}  {q}");
    }
    let est = monte_carlo_survival(&c, -1, 10, 100_000, 0)?;
    let exact = profile[10].to_f64().unwrap_or(f64::NAN);
    println!(
        "Monte Carlo: {} ± {:.5} (exact {exact}), seed {}",
        est.fraction, est.std_error, est.seed
    );

    let c = DigitSet::new(&[3, 15])?;
    let q = decay_profile(&c, 1, 12);
    println!("C = {{3, 15}}, λ = 1, depth 12: {}", q[12]);
    Ok(())
}
