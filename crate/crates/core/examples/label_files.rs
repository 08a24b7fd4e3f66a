//! Labels given as literals, rules or the line-oriented file format.

use cantor_spectra::constructions::{parse_label, parse_label_file};

const FILE: &str = "\
# 15 first, then 3 forever
alphabet: 3, 15
preperiod: 1
period: 0
";

fn main() -> cantor_spectra::Result<()> {
    let from_file = parse_label_file(FILE)?;
    println!("{from_file}: {:?}", from_file.prefix(6));
    for text in ["(1,3)", "-5(5)", "thm47 p=3", "gamma r=2 free=alternate"] {
        let label = parse_label(text)?;
        println!(
            "{text:<26} -> {:<26} {:?}",
            label.to_string(),
            label.prefix(8)
        );
    }
    match parse_label("(2,3)") {
        Ok(_) => unreachable!(),
        Err(e) => println!("(2,3) is rejected: {e}"),
    }
    Ok(())
}
