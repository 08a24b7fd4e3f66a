use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::automaton::step;
use crate::constructions::DigitSet;
use crate::error::{Error, Result};

/// One level of the expansion of residue `r` with the right-edge label
/// drawn uniformly from `C`: residues ≡ 0 (mod 4) take the left edge,
/// odd residues need a label ≡ r (mod 4), residues ≡ 2 die, and residue
/// 0 is a finished (finite) expansion, which is not counted as alive.
fn successors(c: &DigitSet, r: i64) -> Vec<i64> {
    if r == 0 {
        return vec![];
    }
    if let Some(t) = step(r, 0) {
        return vec![t];
    }
    c.digits().iter().filter_map(|&d| step(r, d)).collect()
}

/// The exact label measure of being alive (nonzero residue) after each of
/// the first `k` levels, starting from `lambda`.
///
/// Only the label entries on the expansion path matter and each is read
/// once, so the measure is a distribution over residues pushed forward one
/// level at a time: the cost is `O(k · m · states)` rather than `m^k`.
pub fn decay_profile(c: &DigitSet, lambda: i64, k: usize) -> Vec<BigRational> {
    let m = BigRational::from_integer(BigInt::from(c.len()));
    let mut dist: BTreeMap<i64, BigRational> = BTreeMap::new();
    if lambda != 0 {
        dist.insert(lambda, BigRational::one());
    }
    let mut out = vec![dist.values().cloned().sum::<BigRational>()];
    for _ in 0..k {
        let mut next: BTreeMap<i64, BigRational> = BTreeMap::new();
        for (&r, mass) in &dist {
            let forced = step(r, 0).is_some();
            for t in successors(c, r) {
                let share = if forced { mass.clone() } else { mass / &m };
                if t != 0 {
                    *next.entry(t).or_insert_with(BigRational::zero) += share;
                }
            }
        }
        dist = next;
        out.push(dist.values().cloned().sum());
    }
    out
}

/// The exact measure alive after `k` levels.
pub fn measure_decay_exact(c: &DigitSet, lambda: i64, k: usize) -> BigRational {
    decay_profile(c, lambda, k).pop().expect("nonempty profile")
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SurvivalEstimate {
    pub samples: u64,
    pub alive: u64,
    pub fraction: f64,
    pub std_error: f64,
    pub seed: u64,
}

const CHUNK: u64 = 4096;

/// Samples uniform label entries along the expansion path of `lambda` and
/// reports the fraction still alive after `depth` levels.
///
/// Samples are split into fixed chunks; chunk `i` uses ChaCha8 seeded with
/// `seed` on stream `i`, and the counts are summed, so the result does not
/// depend on the number of worker threads.
pub fn monte_carlo_survival(
    c: &DigitSet,
    lambda: i64,
    depth: usize,
    samples: u64,
    seed: u64,
) -> Result<SurvivalEstimate> {
    if samples == 0 {
        return Err(Error::Param("samples must be at least 1".into()));
    }
    let chunks = samples.div_ceil(CHUNK);
    let alive: u64 = (0..chunks)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i);
            let n = CHUNK.min(samples - i * CHUNK);
            (0..n)
                .filter(|_| survives(c, lambda, depth, &mut rng))
                .count() as u64
        })
        .sum();
    let fraction = alive as f64 / samples as f64;
    let std_error = (fraction * (1.0 - fraction) / samples as f64).sqrt();
    Ok(SurvivalEstimate {
        samples,
        alive,
        fraction,
        std_error,
        seed,
    })
}

fn survives(c: &DigitSet, lambda: i64, depth: usize, rng: &mut ChaCha8Rng) -> bool {
    let digits = c.digits();
    let mut r = lambda;
    for _ in 0..depth {
        if r == 0 {
            return false;
        }
        if let Some(t) = step(r, 0) {
            r = t;
            continue;
        }
        let label = digits[rng.random_range(0..digits.len())];
        match step(r, label) {
            Some(t) => r = t,
            None => return false,
        }
    }
    r != 0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[i64]) -> DigitSet {
        DigitSet::new(v).unwrap()
    }

    fn pow2(k: usize) -> BigRational {
        BigRational::new(BigInt::one(), BigInt::from(2).pow(k as u32))
    }

    #[test]
    fn one_three_halves_each_level() {
        let profile = decay_profile(&set(&[1, 3]), -1, 10);
        for (k, m) in profile.iter().enumerate() {
            assert_eq!(*m, pow2(k));
        }
    }

    #[test]
    fn three_fifteen_never_decays() {
        assert_eq!(
            measure_decay_exact(&set(&[3, 15]), -1, 12),
            BigRational::one()
        );
    }

    #[test]
    fn one_seven_dies() {
        for lambda in -20..=20 {
            assert!(
                measure_decay_exact(&set(&[1, 7]), lambda, 6).is_zero(),
                "{lambda}"
            );
        }
    }

    #[test]
    fn monte_carlo_is_reproducible() {
        let c = set(&[1, 3]);
        let a = monte_carlo_survival(&c, -1, 4, 10_000, 7).unwrap();
        let b = monte_carlo_survival(&c, -1, 4, 10_000, 7).unwrap();
        assert_eq!(a, b);
        assert!((a.fraction - 1.0 / 16.0).abs() < 4.0 * a.std_error);
        let all = monte_carlo_survival(&set(&[3, 15]), -1, 10, 1000, 0).unwrap();
        assert_eq!(all.fraction, 1.0);
        assert!(monte_carlo_survival(&c, -1, 4, 0, 0).is_err());
    }
}
