//! Decisions for a digit set C: does some label over C fail to be a spectrum,
//! and does every label fail?

use cantor_spectra::constructions::DigitSet;
use cantor_spectra::decision::{exists_infinite_expansion, universal_game, GameVerdict};

fn main() -> cantor_spectra::Result<()> {
    for digits in [&[1, 7][..], &[1, 5], &[1, 3], &[3, 15], &[-1, 5, 9]] {
        let c = DigitSet::new(digits)?;
        let exists = exists_infinite_expansion(&c);
        let game = universal_game(&c);
        print!("C = {:?}: ", c.digits());
        match &exists {
            None => print!("every label gives a spectrum"),
            Some(w) => print!("λ = {} fails along ({:?})^∞", w.lambda, w.cycle),
        }
        match &game.verdict {
            GameVerdict::SeekerWins { winning, .. } => {
                println!("; no label works (winning {winning:?})")
            }
            GameVerdict::AdversaryWins => println!(),
        }
        if let Some(w) = exists {
            w.replay(64).expect("certificates replay");
        }
    }

    let game = universal_game(&DigitSet::new(&[3, 15])?);
    let labels = [3, 15, 15, 3, 3, 3, 15, 3];
    println!(
        "playout against {labels:?}: nonzero digits at {:?}",
        game.playout(-1, &labels)
    );
    Ok(())
}
