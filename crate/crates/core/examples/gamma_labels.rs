//! Γ labels: c₁ = 4^{r+1} - 1 at every (r+1)-th level makes -1 an element of
//! Λ_I but not of Λ, so none of them is a spectrum.

use cantor_spectra::constructions::{gamma_label, gamma_witness, FreeChoice, LevelLabel};
use cantor_spectra::decision::{expansion_type, is_spectrum_ep_label};

fn main() -> cantor_spectra::Result<()> {
    for r in 1..=3 {
        for free in [FreeChoice::C0, FreeChoice::C1, FreeChoice::Alternate] {
            let label = LevelLabel::gamma(r, free)?;
            let word = label.as_periodic().expect("Γ labels are periodic");
            let decision = is_spectrum_ep_label(&word)?;
            println!(
                "{:<26} {:?}  spectrum: {}",
                label.to_string(),
                gamma_label(r, free, 2 * (r as usize + 1))?,
                decision.spectrum
            );
            assert!(matches!(
                expansion_type(&word, -1)?,
                cantor_spectra::decision::Expansion::Infinite { .. }
            ));
        }
        println!("  expansion of -1: {}", gamma_witness(r)?.to_literal());
    }
    Ok(())
}
