//! Which constant and periodic labels give a spectrum.

use cantor_spectra::adic::SignedWord;
use cantor_spectra::decision::is_spectrum_ep_label;

fn main() -> cantor_spectra::Result<()> {
    let mut spectra = Vec::new();
    let mut failures = Vec::new();
    for p in (1..=45).step_by(2) {
        let d = is_spectrum_ep_label(&SignedWord::from_digits(vec![], vec![p])?)?;
        match d.witness {
            None => spectra.push(p),
            Some(w) => failures.push((p, w.lambda)),
        }
    }
    println!("pΛ₁ is a spectrum for p = {spectra:?}");
    println!("and fails for (p, witness λ) = {failures:?}");

    for text in ["(1,3)", "(3,1)", "15(3)", "-1(1)", "(1,-1,-1)"] {
        let d = is_spectrum_ep_label(&SignedWord::parse_inferred(text)?)?;
        println!(
            "{text:<10} spectrum {:<5} ({} states, witness {:?})",
            d.spectrum,
            d.states_examined,
            d.witness.map(|w| w.lambda)
        );
    }
    Ok(())
}
