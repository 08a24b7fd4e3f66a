use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::automaton::{step, ResidueAutomaton};
use crate::constructions::DigitSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum GameVerdict {
    /// From every residue in `winning`, the seeker keeps an expansion
    /// alive with infinitely many nonzero digits whatever labels appear.
    /// `strategy[r][c]` is the digit played at residue `r` against label `c`.
    SeekerWins {
        winning: Vec<i64>,
        strategy: BTreeMap<i64, BTreeMap<i64, i64>>,
    },
    /// No residue is winning. This says nothing about whether every label
    /// gives a spectrum.
    AdversaryWins,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GameResult {
    pub digits: Vec<i64>,
    pub core_bound: i64,
    #[serde(flatten)]
    pub verdict: GameVerdict,
}

impl GameResult {
    pub fn seeker_wins(&self) -> bool {
        matches!(self.verdict, GameVerdict::SeekerWins { .. })
    }

    /// Plays the strategy from `start` against the given label sequence and
    /// returns the 0-based steps with nonzero digits. Fails if the strategy
    /// has no move or leaves the winning region.
    pub fn playout(&self, start: i64, labels: &[i64]) -> std::result::Result<Vec<usize>, String> {
        let GameVerdict::SeekerWins { strategy, .. } = &self.verdict else {
            return Err("adversary wins; no strategy".into());
        };
        let mut r = start;
        let mut accepting = Vec::new();
        for (k, c) in labels.iter().enumerate() {
            let omega = *strategy
                .get(&r)
                .ok_or_else(|| format!("step {k}: residue {r} is not winning"))?
                .get(c)
                .ok_or_else(|| format!("step {k}: no move against {c}"))?;
            r = step(r, omega).ok_or_else(|| format!("step {k}: digit {omega} not congruent"))?;
            if omega != 0 {
                accepting.push(k);
            }
        }
        Ok(accepting)
    }
}

/// Solves the Büchi game where, at residue `r`, the adversary reveals a
/// right-edge label `c ∈ C` and the seeker answers with `ω ∈ {0, c}`
/// satisfying `4 | (r - ω)`, moving to `(r - ω)/4`; nonzero answers are
/// accepting.
///
/// Computed as `νZ. μY. CPre((accepting ∧ Z) ∨ Y)` with states in
/// ascending order. The seeker never has a real choice (0 and `c` differ
/// mod 4), so the strategy table is the forced move.
pub fn universal_game(c: &DigitSet) -> GameResult {
    let automaton = ResidueAutomaton::new(&c.with_zero()).expect("validated digit set");
    let bound = automaton.bound();
    let states: Vec<i64> = (-bound..=bound).collect();
    let moves = |r: i64, label: i64| -> Option<(i64, i64)> {
        [0, label]
            .into_iter()
            .find_map(|w| step(r, w).map(|t| (w, t)))
    };
    let cpre = |r: i64, z: &BTreeSet<i64>, y: &BTreeSet<i64>| {
        c.digits().iter().all(|&label| match moves(r, label) {
            Some((w, t)) => (w != 0 && z.contains(&t)) || y.contains(&t),
            None => false,
        })
    };
    let mut z: BTreeSet<i64> = states.iter().copied().collect();
    loop {
        let mut y = BTreeSet::new();
        loop {
            let next: BTreeSet<i64> = states
                .iter()
                .copied()
                .filter(|&r| cpre(r, &z, &y))
                .collect();
            if next == y {
                break;
            }
            y = next;
        }
        if y == z {
            break;
        }
        z = y;
    }
    let verdict = if z.is_empty() {
        GameVerdict::AdversaryWins
    } else {
        let strategy = z
            .iter()
            .map(|&r| {
                let row = c
                    .digits()
                    .iter()
                    .map(|&label| (label, moves(r, label).expect("winning state has moves").0))
                    .collect();
                (r, row)
            })
            .collect();
        GameVerdict::SeekerWins {
            winning: z.into_iter().collect(),
            strategy,
        }
    };
    GameResult {
        digits: c.digits().to_vec(),
        core_bound: bound,
        verdict,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_fifteen_seeker_wins() {
        let g = universal_game(&DigitSet::new(&[3, 15]).unwrap());
        let GameVerdict::SeekerWins { winning, strategy } = &g.verdict else {
            panic!("expected a seeker win");
        };
        assert!(winning.contains(&-1));
        assert_eq!(strategy[&-1][&3], 3);
        assert_eq!(strategy[&-1][&15], 15);
        assert_eq!(g.playout(-1, &[15, 3, 3, 15]).unwrap(), vec![0, 2, 3]);
    }

    #[test]
    fn adversary_wins_cases() {
        for c in [[1, 3], [1, 7], [1, 5]] {
            let g = universal_game(&DigitSet::new(&c).unwrap());
            assert_eq!(g.verdict, GameVerdict::AdversaryWins, "{c:?}");
        }
    }
}
