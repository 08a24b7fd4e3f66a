//! Frame-function diagnostics Q(ξ) = Σ |μ̂₄(ξ - λ)|² on truncated sets, next
//! to the exact verdict.

use cantor_spectra::constructions::{enumerate_lambda, LevelLabel, Selector};
use cantor_spectra::fourier::{frame_function, spectrum_numeric_report, TruncationParams};

fn main() -> cantor_spectra::Result<()> {
    let params = TruncationParams::standard(10)?;
    for p in [1, 3, 5] {
        let set: Vec<i64> = enumerate_lambda(&Selector::Scaled(p), 10)?
            .into_iter()
            .collect();
        let r = frame_function(&set, &params)?;
        println!(
            "{}Λ₁ depth 10: min Q {:.6} at ξ = {:.4}, max Q {:.6}",
            if p == 1 { String::new() } else { p.to_string() },
            r.refined_min_q,
            r.argmin_q,
            r.max_q
        );
    }

    let params = TruncationParams::standard(12)?;
    for s in [
        Selector::Canonical,
        Selector::Scaled(3),
        Selector::Label(LevelLabel::growing_runs(5)?),
    ] {
        let r = spectrum_numeric_report(&s, &params)?;
        println!(
            "{s}: exact {:?} via {}, concordant {} ({})",
            r.exact.spectrum, r.exact.method, r.concordant, r.note
        );
    }
    Ok(())
}
