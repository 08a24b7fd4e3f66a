//! The map h_p sending a signed digit word ω ∈ {-p,0,p}^∞ to Σ Π(4^{k-1} ω_k).

use cantor_spectra::adic::{hp_prefix, hp_word, SignedWord};

fn main() -> cantor_spectra::Result<()> {
    for (p, text) in [(1, "(1)"), (3, "(-3)"), (3, "3(0,-3)"), (5, "5,-5(0)")] {
        let omega = SignedWord::parse_inferred(text)?;
        let word = hp_word(p, &omega)?;
        println!(
            "p={p} ω={:<10} h_p = {:<12} integer {:?}, first digits {:?}",
            omega.to_literal(),
            word.to_string(),
            word.to_integer(),
            hp_prefix(p, &omega, 8)?
        );
    }
    Ok(())
}
