//! Truncations of Λ(A) for level labels and for a general tree label.

use cantor_spectra::constructions::{
    enumerate_general, enumerate_lambda, parse_label, GeneralLabelPrefix, Selector,
};

fn main() -> cantor_spectra::Result<()> {
    let selectors = [
        Selector::Canonical,
        Selector::Scaled(5),
        Selector::Label(parse_label("(1,-3)")?),
        Selector::Label(parse_label("gamma r=1 free=c0")?),
    ];
    for s in &selectors {
        let set = enumerate_lambda(s, 3)?;
        println!("{:<28} depth 3: {set:?}", s.to_string());
    }

    // different digits on different right edges of the same level
    let general = GeneralLabelPrefix::new(vec![vec![1], vec![3, -1], vec![1, 1, 5, 7]])?;
    println!(
        "general label depth 3: {:?}",
        enumerate_general(&general, 3)?
    );
    Ok(())
}
