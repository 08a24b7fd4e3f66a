//! Integers with a (finite or infinite) quasi 4-based expansion along a label.

use cantor_spectra::adic::SignedWord;
use cantor_spectra::constructions::lambda_i_members;
use cantor_spectra::decision::Expansion;

fn main() -> cantor_spectra::Result<()> {
    for text in ["(1)", "(3)", "(1,3)"] {
        let label = SignedWord::parse_inferred(text)?;
        println!("label {text}:");
        for m in lambda_i_members(&label, 20)? {
            match &m.expansion {
                Expansion::Finite { digits } => println!("  {:>4}  finite   {digits:?}", m.lambda),
                Expansion::Infinite { certificate } => println!(
                    "  {:>4}  infinite {:?} then ({:?})^∞",
                    m.lambda, certificate.transient, certificate.cycle
                ),
                Expansion::NotMember { .. } => unreachable!(),
            }
        }
    }
    Ok(())
}
