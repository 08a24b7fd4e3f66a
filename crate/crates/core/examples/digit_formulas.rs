//! Single digits, partial sums of 4-adic series and recoding into base 4^s.

use cantor_spectra::adic::{digit_at, series_prefix, EpWord};
use num_bigint::BigInt;

fn main() -> cantor_spectra::Result<()> {
    let lambda = BigInt::from(-1000);
    let digits: Vec<u64> = (1..=10)
        .map(|n| digit_at(&lambda, n))
        .collect::<Result<_, _>>()?;
    println!("digits of -1000: {digits:?}");
    println!("word:            {}", EpWord::from_integer(&lambda, 4)?);

    // Σ 4^{k-1} λ_k for λ = (1, -1, 2): 1 - 4 + 32 = 29
    println!("series prefix: {:?}", series_prefix(&[1, -1, 2], 6)?);
    println!("29 is          {}", EpWord::from_i64(29, 4)?);

    let w = EpWord::parse("1(23)", 4)?;
    let r = w.block_recode(2)?;
    println!(
        "{w} in base 16: {r}; decoded back: {}",
        r.block_decode(2, 4)?
    );
    Ok(())
}
