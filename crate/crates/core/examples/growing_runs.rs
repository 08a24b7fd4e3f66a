//! The label p·τ₁τ₂τ₃⋯ with τ_n = 1^n (-1)^{n+1}, and the cycle refutation
//! showing that its Λ is a spectrum.

use cantor_spectra::constructions::thm47_label;
use cantor_spectra::decision::thm47_check;

fn main() -> cantor_spectra::Result<()> {
    println!("first 24 digits for p=5: {:?}", thm47_label(5, 24)?);
    for p in [1, 3, 5, 7] {
        let report = thm47_check(p, 8)?;
        println!(
            "p={p}: {} candidate cycles, prefix {} scanned, verdict {}",
            report.cycles.len(),
            report.scanned_prefix,
            report.verdict
        );
    }
    let report = thm47_check(3, 4)?;
    if let Some(c) = report
        .cycles
        .iter()
        .find(|c| c.digits.iter().any(|&d| d != 0))
    {
        println!(
            "example cycle {:?} through {:?}, refuted in blocks {:?}",
            c.digits, c.states, c.blocks_checked
        );
    }
    Ok(())
}
