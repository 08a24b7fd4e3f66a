//! The transform of the quarter Cantor measure, its integer zeros and the
//! orthogonality of truncated sets.

use cantor_spectra::constructions::{enumerate_lambda, Selector};
use cantor_spectra::fourier::{check_orthogonality, is_zero_exact, mu4_hat};

fn main() -> cantor_spectra::Result<()> {
    for xi in [0.0, 0.5, 1.0, 2.0, 3.0, 4.0, 8.0, 16.0] {
        let v = mu4_hat(xi, 25)?;
        println!(
            "μ̂₄({xi:>4}) = {:+.6} {:+.6}i  (tail ≤ {:.1e})",
            v.re, v.im, v.tail_bound
        );
    }
    let zeros: Vec<i64> = (1..=40)
        .filter(|&z| is_zero_exact(z).unwrap_or(false))
        .collect();
    println!("positive integer zeros up to 40: {zeros:?}");

    for s in [
        Selector::Canonical,
        Selector::Scaled(3),
        Selector::Scaled(2),
    ] {
        let set: Vec<i64> = enumerate_lambda(&s, 6)?.into_iter().collect();
        let r = check_orthogonality(&set, 0)?;
        println!(
            "{s}: orthogonal {} ({} pairs, first bad pair {:?})",
            r.orthogonal, r.pairs, r.offending
        );
    }
    Ok(())
}
