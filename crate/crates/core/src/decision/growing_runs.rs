use std::collections::BTreeSet;

use serde::Serialize;

use super::automaton::ResidueAutomaton;
use crate::constructions::{growing_runs_block_start, thm47_label};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleRefutation {
    pub length: usize,
    pub states: Vec<i64>,
    pub digits: Vec<i64>,
    /// Blocks `τ_N` in which every residue class of positions mod `length`
    /// was seen carrying both signs.
    pub blocks_checked: Vec<usize>,
    pub refuted: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrowingRunsReport {
    pub p: i64,
    pub cycle_bound: usize,
    pub core_bound: i64,
    pub scanned_prefix: usize,
    pub cycles: Vec<CycleRefutation>,
    /// `"spectrum"` when every candidate cycle is refuted, else
    /// `"surviving-cycle"`.
    pub verdict: String,
}

impl GrowingRunsReport {
    pub fn spectrum(&self) -> bool {
        self.verdict == "spectrum"
    }
}

/// Checks the label `p·τ₁τ₂τ₃⋯`, `τ_n = 1^n (-1)^{n+1}`, against every
/// cycle of length `t ≤ T` of the automaton on `{-p, 0, p}`.
///
/// An infinite expansion would eventually follow such a cycle, forcing
/// the label digits at positions `n₀ + i + mt` (for each nonzero cycle
/// digit `ω_i`) to equal `ω_i` for all large `m`. Each block `τ_N` with
/// `N ≥ t` holds a run of `+p` and a run of `-p` of length at least `t`,
/// so every residue class mod `t` meets both signs inside it. Since such
/// blocks recur forever, the progression cannot keep a constant sign. The
/// check confirms this inside `τ_{t+1}` and `τ_{t+2}` by scanning the first
/// `Σ_{n ≤ T+2} (2n+1)` label digits.
pub fn thm47_check(p: i64, t_bound: usize) -> Result<GrowingRunsReport> {
    if p % 2 == 0 {
        return Err(Error::NotOdd(p));
    }
    if t_bound < 1 {
        return Err(Error::Param("cycle bound must be at least 1".into()));
    }
    let automaton = ResidueAutomaton::new(&[-p, 0, p])?;
    let bound = automaton.bound();
    let scanned_prefix = (1..=t_bound + 2).map(|n| 2 * n + 1).sum::<usize>();
    let label = thm47_label(p, scanned_prefix)?;

    let mut seen = BTreeSet::new();
    let mut cycles = Vec::new();
    for t in 1..=t_bound {
        for start in -bound..=bound {
            if start == 0 {
                continue;
            }
            let Some((states, digits)) = closed_walk(&automaton, start, t) else {
                continue;
            };
            // one entry per rotation class
            let shift = (0..t).min_by_key(|&i| states[i]).expect("nonempty");
            let mut states = states;
            let mut digits = digits;
            states.rotate_left(shift);
            digits.rotate_left(shift);
            if !seen.insert((t, states.clone())) {
                continue;
            }
            let blocks_checked = vec![t + 1, t + 2];
            let refuted = digits.iter().any(|&d| d != 0)
                && blocks_checked
                    .iter()
                    .all(|&n| block_mixes_classes(&label, n, t));
            cycles.push(CycleRefutation {
                length: t,
                states,
                digits,
                blocks_checked,
                refuted,
            });
        }
    }
    let verdict = if cycles.iter().all(|c| c.refuted) {
        "spectrum"
    } else {
        "surviving-cycle"
    };
    Ok(GrowingRunsReport {
        p,
        cycle_bound: t_bound,
        core_bound: bound,
        scanned_prefix,
        cycles,
        verdict: verdict.into(),
    })
}

/// The closed walk of length `t` from `start`, if the (deterministic away
/// from dead states) automaton returns there after exactly `t` steps.
fn closed_walk(a: &ResidueAutomaton, start: i64, t: usize) -> Option<(Vec<i64>, Vec<i64>)> {
    let mut states = Vec::with_capacity(t);
    let mut digits = Vec::with_capacity(t);
    let mut r = start;
    for _ in 0..t {
        let mut succ = a.successors(r);
        let (d, next) = succ.next()?;
        debug_assert!(succ.next().is_none(), "at most one move on {{-p,0,p}}");
        states.push(r);
        digits.push(d);
        r = next;
    }
    (r == start).then_some((states, digits))
}

/// Whether, inside block `τ_n` of the scanned label, every residue class
/// of positions mod `t` holds both a positive and a negative digit.
fn block_mixes_classes(label: &[i64], n: usize, t: usize) -> bool {
    let start = growing_runs_block_start(n) - 1;
    let block = &label[start..start + 2 * n + 1];
    (0..t).all(|class| {
        let mut signs = block
            .iter()
            .enumerate()
            .filter(|(i, _)| (start + i) % t == class)
            .map(|(_, d)| d.signum());
        let first = signs.next();
        first.is_some() && signs.any(|s| Some(s) != first)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p_three_self_loops_refuted() {
        let r = thm47_check(3, 8).unwrap();
        assert!(r.spectrum());
        let loops: Vec<(Vec<i64>, Vec<i64>)> = r
            .cycles
            .iter()
            .filter(|c| c.length == 1)
            .map(|c| (c.states.clone(), c.digits.clone()))
            .collect();
        assert_eq!(loops, vec![(vec![-1], vec![3]), (vec![1], vec![-3])]);
        assert_eq!(r.scanned_prefix, (1..=10).map(|n| 2 * n + 1).sum::<usize>());
    }

    #[test]
    fn p_one_has_no_cycles() {
        let r = thm47_check(1, 8).unwrap();
        assert!(r.cycles.is_empty());
        assert!(r.spectrum());
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(thm47_check(4, 8).unwrap_err(), Error::NotOdd(4));
        assert!(thm47_check(3, 0).is_err());
    }

    #[test]
    fn constant_sign_would_survive() {
        // a run-free sign pattern is not mixed
        assert!(!block_mixes_classes(&[1; 40], 3, 2));
    }
}
