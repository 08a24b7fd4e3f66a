use std::collections::HashMap;

use serde::Serialize;

use super::automaton::{core_bound, step, ResidueAutomaton, WitnessCertificate};
use crate::adic::SignedWord;
use crate::constructions::DigitSet;
use crate::error::{Error, Result};

/// How an integer relates to `Λ_I` of a level label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Expansion {
    /// In `Λ(A)`: the digits up to the last nonzero one.
    Finite { digits: Vec<i64> },
    /// In `Λ_I(A) \ Λ(A)`.
    Infinite { certificate: WitnessCertificate },
    /// Not in `Λ_I(A)`; the congruence first fails at `depth`.
    NotMember { depth: usize },
}

/// Some general label over `C` gives an integer an infinite expansion iff
/// the automaton on `{0} ∪ C` has a cycle through a nonzero digit. Along a
/// single tree path every right-edge label is read at most once, so any
/// digit sequence the automaton allows is realised by choosing the labels
/// on that path.
pub fn exists_infinite_expansion(c: &DigitSet) -> Option<WitnessCertificate> {
    let automaton = ResidueAutomaton::new(&c.with_zero()).expect("digit set is validated");
    let (states, cycle) = automaton.find_nonzero_cycle()?;
    Some(WitnessCertificate {
        lambda: states[0],
        transient: vec![],
        cycle,
        states,
    })
}

fn check_label(label: &SignedWord) -> Result<()> {
    match label.used_digits().into_iter().find(|d| d % 2 == 0) {
        Some(d) => Err(Error::EvenDigit(d)),
        None => Ok(()),
    }
}

/// Phase of 0-based position `k` in an eventually periodic word.
fn phase(label: &SignedWord, k: usize) -> usize {
    let pre = label.preperiod().len();
    if k < pre {
        k
    } else {
        pre + (k - pre) % label.period().len()
    }
}

/// The unique digit in `{0, a}` congruent to `r`, `a` odd.
fn forced_digit(r: i64, a: i64) -> Option<i64> {
    if step(r, 0).is_some() {
        Some(0)
    } else if step(r, a).is_some() {
        Some(a)
    } else {
        None
    }
}

/// Classifies `lambda` against an eventually periodic level label.
///
/// At each level the options `0` and `a_k` differ mod 4, so at most one
/// survives and the expansion is unique. The pair (residue, label phase)
/// ranges over a finite set, so the run either dies, reaches residue 0 or
/// repeats a pair with nonzero residue; the last case is an infinite,
/// ultimately periodic expansion.
pub fn expansion_type(label: &SignedWord, lambda: i64) -> Result<Expansion> {
    check_label(label)?;
    let mut seen: HashMap<(i64, usize), usize> = HashMap::new();
    let mut digits = Vec::new();
    let mut states = Vec::new();
    let mut r = lambda;
    let mut k = 0usize;
    loop {
        if r == 0 {
            while digits.last() == Some(&0) {
                digits.pop();
            }
            return Ok(Expansion::Finite { digits });
        }
        let key = (r, phase(label, k));
        if let Some(&start) = seen.get(&key) {
            let cycle = digits.split_off(start);
            return Ok(Expansion::Infinite {
                certificate: WitnessCertificate {
                    lambda,
                    transient: digits,
                    cycle,
                    states,
                },
            });
        }
        seen.insert(key, k);
        let Some(d) = forced_digit(r, label.digit(k)) else {
            return Ok(Expansion::NotMember { depth: k + 1 });
        };
        states.push(r);
        digits.push(d);
        r = step(r, d).expect("forced digit is congruent");
        k += 1;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum PrefixOutcome {
    /// The residue reached 0 after this many digits: a finite expansion.
    Finite(usize),
    /// No digit fits at this 1-based level.
    Dead(usize),
    /// Still nonzero after the whole prefix, with this residue.
    Alive(i64),
}

/// Runs the recursion for `lambda` along a finite label prefix.
pub fn expansion_along_prefix(label: &[i64], lambda: i64) -> PrefixOutcome {
    let mut r = lambda;
    for (k, &a) in label.iter().enumerate() {
        if r == 0 {
            return PrefixOutcome::Finite(k);
        }
        match forced_digit(r, a) {
            Some(d) => r = step(r, d).expect("congruent"),
            None => return PrefixOutcome::Dead(k + 1),
        }
    }
    if r == 0 {
        PrefixOutcome::Finite(label.len())
    } else {
        PrefixOutcome::Alive(r)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumDecision {
    pub spectrum: bool,
    /// An integer with an infinite expansion when `spectrum` is false.
    pub witness: Option<WitnessCertificate>,
    pub core_bound: i64,
    pub phases: usize,
    /// Product states `(residue, phase)` examined.
    pub states_examined: usize,
}

/// Decides whether `Λ(A)` is a spectrum for an eventually periodic level
/// label `A` of odd digits, i.e. whether no integer has an infinite
/// expansion.
///
/// Infinite expansions end in a cycle of the product graph on
/// `{|r| ≤ B} × phases` with nonzero residues. Every node `(r, j)` is
/// reached from `λ = 4^j r`, whose first `j` digits are forced to 0, so a
/// cycle exists iff some integer fails. The witness is the node on a cycle
/// minimising `|4^j r|`.
pub fn is_spectrum_ep_label(label: &SignedWord) -> Result<SpectrumDecision> {
    check_label(label)?;
    let max_abs = label
        .used_digits()
        .iter()
        .map(|d| d.abs())
        .max()
        .unwrap_or(0);
    let bound = core_bound(max_abs);
    let phases = label.preperiod().len() + label.period().len();
    let next_phase = |j: usize| {
        if j + 1 < phases {
            j + 1
        } else {
            label.preperiod().len()
        }
    };
    // 0 unknown, 1 on stack, 2 finished without cycle, 3 on a cycle
    let width = (2 * bound + 1) as usize;
    let index = |r: i64, j: usize| j * width + (r + bound) as usize;
    let mut mark = vec![0u8; width * phases];
    let mut on_cycle = Vec::new();
    for j in 0..phases {
        for r0 in -bound..=bound {
            if mark[index(r0, j)] != 0 {
                continue;
            }
            let mut path = Vec::new();
            let (mut r, mut jj) = (r0, j);
            loop {
                if r == 0 {
                    break;
                }
                let m = mark[index(r, jj)];
                if m == 1 {
                    let start = path.iter().position(|&n| n == (r, jj)).expect("on stack");
                    for &(cr, cj) in &path[start..] {
                        mark[index(cr, cj)] = 3;
                        on_cycle.push((cr, cj));
                    }
                    break;
                }
                if m != 0 {
                    break;
                }
                mark[index(r, jj)] = 1;
                path.push((r, jj));
                match forced_digit(r, label.digit(jj)) {
                    Some(d) => {
                        r = step(r, d).expect("congruent");
                        jj = next_phase(jj);
                    }
                    None => break,
                }
            }
            for &(pr, pj) in &path {
                if mark[index(pr, pj)] == 1 {
                    mark[index(pr, pj)] = 2;
                }
            }
        }
    }
    let states_examined = mark.iter().filter(|&&m| m != 0).count();
    let witness = on_cycle
        .iter()
        .filter_map(|&(r, j)| {
            let scale = 4i64.checked_pow(u32::try_from(j).ok()?)?;
            r.checked_mul(scale)
        })
        .min_by_key(|&l| (l.abs(), l))
        .map(|lambda| match expansion_type(label, lambda) {
            Ok(Expansion::Infinite { certificate }) => Ok(certificate),
            other => Err(Error::Label(format!(
                "internal: cycle node {lambda} classified as {other:?}"
            ))),
        })
        .transpose()?;
    if !on_cycle.is_empty() && witness.is_none() {
        return Err(Error::Overflow("witness 4^j r"));
    }
    Ok(SpectrumDecision {
        spectrum: on_cycle.is_empty(),
        witness,
        core_bound: bound,
        phases,
        states_examined,
    })
}
