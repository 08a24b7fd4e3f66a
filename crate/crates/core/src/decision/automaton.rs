use std::collections::{BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Core bound `B = max(1, ⌊max|d| / 3⌋)`.
///
/// With `|r| ≤ B` and `|d| ≤ max|d| ≤ 3B + 2`, an integer `(r - d)/4` has
/// absolute value at most `⌊(4B + 2)/4⌋ = B`, so the core is closed. Any
/// state with `|r| > max|d|/3` strictly shrinks, so every cycle lies inside.
pub fn core_bound(max_abs: i64) -> i64 {
    (max_abs / 3).max(1)
}

/// One step of the residue recursion: `(r - ω)/4` when `4 | (r - ω)`.
pub fn step(r: i64, omega: i64) -> Option<i64> {
    let diff = i128::from(r) - i128::from(omega);
    diff.is_multiple_of(&4).then_some((diff / 4) as i64)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Edge {
    pub from: i64,
    pub digit: i64,
    pub to: i64,
}

/// The graph `r --ω--> (r - ω)/4` over a digit alphabet containing 0,
/// restricted to the core `|r| ≤ B`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResidueAutomaton {
    alphabet: Vec<i64>,
    bound: i64,
    edges: Vec<Edge>,
}

impl ResidueAutomaton {
    /// 0 is added to `alphabet` when missing; nonzero digits must be odd.
    pub fn new(alphabet: &[i64]) -> Result<Self> {
        let mut alphabet = alphabet.to_vec();
        alphabet.push(0);
        alphabet.sort_unstable();
        alphabet.dedup();
        if let Some(&d) = alphabet.iter().find(|&&d| d != 0 && d % 2 == 0) {
            return Err(Error::EvenDigit(d));
        }
        let max_abs = alphabet.iter().map(|d| d.abs()).max().unwrap_or(0);
        let bound = core_bound(max_abs);
        let mut edges = Vec::new();
        for from in -bound..=bound {
            for &digit in &alphabet {
                if let Some(to) = step(from, digit) {
                    debug_assert!(to.abs() <= bound);
                    edges.push(Edge { from, digit, to });
                }
            }
        }
        Ok(ResidueAutomaton {
            alphabet,
            bound,
            edges,
        })
    }

    pub fn alphabet(&self) -> &[i64] {
        &self.alphabet
    }

    pub fn bound(&self) -> i64 {
        self.bound
    }

    pub fn in_core(&self, r: i64) -> bool {
        r.abs() <= self.bound
    }

    /// Core edges in ascending `(from, digit)` order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Outgoing `(digit, target)` pairs of any integer state.
    pub fn successors(&self, r: i64) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.alphabet
            .iter()
            .filter_map(move |&d| step(r, d).map(|t| (d, t)))
    }

    /// Every residue reachable from `lambda` under some digit choices.
    pub fn reachable_from(&self, lambda: i64) -> BTreeSet<i64> {
        let mut seen = BTreeSet::from([lambda]);
        let mut queue = VecDeque::from([lambda]);
        while let Some(r) = queue.pop_front() {
            for (_, t) in self.successors(r) {
                if seen.insert(t) {
                    queue.push_back(t);
                }
            }
        }
        seen
    }

    /// The number of steps after which every path from `lambda` is inside
    /// the core (dead paths count as arrived).
    pub fn core_entry_steps(&self, lambda: i64) -> usize {
        let mut frontier: BTreeSet<i64> = BTreeSet::from([lambda]);
        let mut steps = 0;
        loop {
            frontier.retain(|&r| !self.in_core(r));
            if frontier.is_empty() {
                return steps;
            }
            frontier = frontier
                .iter()
                .flat_map(|&r| self.successors(r).map(|(_, t)| t).collect::<Vec<_>>())
                .collect();
            steps += 1;
        }
    }

    /// Shortest core path `from -> to` as `(states, digits)`, states
    /// excluding `to`. Ties break towards smaller digits.
    fn shortest_path(&self, from: i64, to: i64) -> Option<(Vec<i64>, Vec<i64>)> {
        let mut prev: std::collections::BTreeMap<i64, (i64, i64)> = Default::default();
        let mut queue = VecDeque::from([from]);
        let mut seen = BTreeSet::from([from]);
        while let Some(r) = queue.pop_front() {
            if r == to {
                let mut states = Vec::new();
                let mut digits = Vec::new();
                let mut cur = to;
                while cur != from {
                    let (p, d) = prev[&cur];
                    states.push(p);
                    digits.push(d);
                    cur = p;
                }
                states.reverse();
                digits.reverse();
                return Some((states, digits));
            }
            for (d, t) in self.successors(r) {
                if self.in_core(t) && seen.insert(t) {
                    prev.insert(t, (r, d));
                    queue.push_back(t);
                }
            }
        }
        None
    }

    /// A cycle through a nonzero-digit edge, if any, as `(states, digits)`
    /// starting at the edge's source. The cycle returned is the shortest,
    /// then the one whose start has the smallest `|r|`, then smallest `r`.
    pub fn find_nonzero_cycle(&self) -> Option<(Vec<i64>, Vec<i64>)> {
        let mut best = None;
        let mut best_key = (usize::MAX, i64::MAX, i64::MAX);
        for e in self.edges.iter().filter(|e| e.digit != 0) {
            let Some((mut states, mut digits)) = self.shortest_path(e.to, e.from) else {
                continue;
            };
            states.insert(0, e.from);
            digits.insert(0, e.digit);
            let key = (digits.len(), e.from.abs(), e.from);
            if key < best_key {
                best_key = key;
                best = Some((states, digits));
            }
        }
        best
    }
}

/// An infinite, ultimately periodic quasi 4-based expansion of `lambda`:
/// digits `transient` followed by `cycle` repeated forever. `states[i]` is
/// the residue before digit `i`, over one pass of transient and cycle.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WitnessCertificate {
    pub lambda: i64,
    pub transient: Vec<i64>,
    pub cycle: Vec<i64>,
    pub states: Vec<i64>,
}

impl WitnessCertificate {
    /// Digit `k` (0-based) of the expansion.
    pub fn digit(&self, k: usize) -> i64 {
        if k < self.transient.len() {
            self.transient[k]
        } else {
            self.cycle[(k - self.transient.len()) % self.cycle.len()]
        }
    }

    /// Checks `λ ≡ Σ_{k≤n} 4^{k-1} ω_k (mod 4^n)` for `n = 1..=steps` with
    /// arbitrary precision, that the cycle carries a nonzero digit and that
    /// the recorded states follow the recursion.
    pub fn replay(&self, steps: usize) -> std::result::Result<(), String> {
        if self.cycle.is_empty() {
            return Err("empty cycle".into());
        }
        if self.cycle.iter().all(|&d| d == 0) {
            return Err("cycle has no nonzero digit".into());
        }
        let lambda = BigInt::from(self.lambda);
        let mut sum = BigInt::zero();
        let mut weight = BigInt::from(1);
        for n in 1..=steps {
            sum += &weight * self.digit(n - 1);
            weight *= 4;
            if !(&lambda - &sum).is_multiple_of(&weight) {
                return Err(format!("congruence fails at n={n}"));
            }
        }
        let len = self.transient.len() + self.cycle.len();
        if self.states.len() != len {
            return Err(format!(
                "expected {len} states, found {}",
                self.states.len()
            ));
        }
        let mut r = self.lambda;
        for k in 0..len {
            if self.states[k] != r {
                return Err(format!(
                    "state {k} is {}, recursion gives {r}",
                    self.states[k]
                ));
            }
            r = step(r, self.digit(k)).ok_or_else(|| format!("digit {k} breaks divisibility"))?;
        }
        if r != self.states[self.transient.len()] {
            return Err("cycle does not close".into());
        }
        Ok(())
    }
}
