//! Exact arithmetic on eventually periodic 4-adic words.

use cantor_spectra::adic::EpWord;

fn main() -> cantor_spectra::Result<()> {
    let minus_one = EpWord::from_i64(-1, 4)?;
    let seven = EpWord::from_i64(7, 4)?;
    println!("-1 = {minus_one}");
    println!(" 7 = {seven}");

    let sum = minus_one.add(&seven)?;
    println!("-1 + 7 = {sum} = {:?}", sum.to_integer());

    // 1/3 is a 4-adic integer: 3 · (1/3) = 1
    let third = EpWord::from_i64(1, 4)?.div_by_coprime(3)?;
    println!("1/3 = {third}, and 3 · that = {}", third.scalar_mul(3));
    assert_eq!(third.to_integer(), None);

    let x = EpWord::parse("12(30)", 4)?;
    let y = EpWord::parse("12(31)", 4)?;
    println!("ρ({x}, {y}) = {}", x.rho(&y)?);
    println!("-{x} = {}", x.neg());
    Ok(())
}
