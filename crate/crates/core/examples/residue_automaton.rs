//! The residue recursion r → (r - ω)/4 as a finite automaton on the core.

use cantor_spectra::decision::ResidueAutomaton;

fn main() -> cantor_spectra::Result<()> {
    let automaton = ResidueAutomaton::new(&[3, 15])?;
    println!(
        "alphabet {:?}, core |r| ≤ {}",
        automaton.alphabet(),
        automaton.bound()
    );
    for e in automaton.edges() {
        println!("  {:>3} --{:>2}--> {:>3}", e.from, e.digit, e.to);
    }
    if let Some((states, digits)) = automaton.find_nonzero_cycle() {
        println!("shortest nonzero cycle: states {states:?}, digits {digits:?}");
    }
    for lambda in [1000, -123_456] {
        println!(
            "{lambda} enters the core after {} steps",
            automaton.core_entry_steps(lambda)
        );
    }
    Ok(())
}
