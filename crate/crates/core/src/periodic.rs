//! Canonical storage for eventually periodic sequences `u v^∞`.

use std::collections::HashMap;
use std::hash::Hash;

/// An eventually periodic sequence kept in canonical form: the period is
/// primitive and the preperiod is as short as possible. Two sequences are
/// equal iff their canonical forms are identical, so derived `Eq`/`Hash`
/// are structural equality on the infinite sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Periodic<T> {
    pre: Vec<T>,
    period: Vec<T>,
}

impl<T: Clone + PartialEq> Periodic<T> {
    /// `period` must be nonempty; callers validate that.
    pub(crate) fn new(mut pre: Vec<T>, mut period: Vec<T>) -> Self {
        debug_assert!(!period.is_empty());
        let root = primitive_root_len(&period);
        period.truncate(root);
        while let (Some(a), Some(b)) = (pre.last(), period.last()) {
            if a != b {
                break;
            }
            pre.pop();
            period.rotate_right(1);
        }
        Periodic { pre, period }
    }

    pub(crate) fn pre(&self) -> &[T] {
        &self.pre
    }

    pub(crate) fn period(&self) -> &[T] {
        &self.period
    }

    /// Element at 0-based index `i`.
    pub(crate) fn get(&self, i: usize) -> &T {
        if i < self.pre.len() {
            &self.pre[i]
        } else {
            &self.period[(i - self.pre.len()) % self.period.len()]
        }
    }

    pub(crate) fn prefix(&self, n: usize) -> Vec<T> {
        (0..n).map(|i| self.get(i).clone()).collect()
    }

    /// Re-expresses the sequence with a preperiod of exactly `pre_len`
    /// elements and a period of exactly `period_len` elements. Requires
    /// `pre_len >= self.pre.len()` and `period_len` a multiple of the
    /// canonical period length.
    pub(crate) fn aligned(&self, pre_len: usize, period_len: usize) -> (Vec<T>, Vec<T>) {
        debug_assert!(pre_len >= self.pre.len());
        debug_assert!(period_len.is_multiple_of(self.period.len()));
        let pre = self.prefix(pre_len);
        let period = (pre_len..pre_len + period_len)
            .map(|i| self.get(i).clone())
            .collect();
        (pre, period)
    }

    /// Index beyond which two sequences agreeing so far agree forever.
    pub(crate) fn horizon(&self, other: &Self) -> usize {
        self.pre.len().max(other.pre.len())
            + num_integer::lcm(self.period.len(), other.period.len())
    }

    pub(crate) fn map<U: Clone + PartialEq>(&self, f: impl Fn(&T) -> U) -> Periodic<U> {
        Periodic::new(
            self.pre.iter().map(&f).collect(),
            self.period.iter().map(&f).collect(),
        )
    }
}

fn primitive_root_len<T: PartialEq>(period: &[T]) -> usize {
    let n = period.len();
    (1..=n)
        .find(|&d| n.is_multiple_of(d) && (d..n).all(|i| period[i] == period[i - d]))
        .unwrap_or(n)
}

/// Runs a deterministic finite-state transducer over an aligned periodic
/// input `pre · period^∞` and returns the output as `(pre, period)`.
///
/// The output of a whole period block and the state after it depend only on
/// the state at the start of the block, so the output becomes periodic as
/// soon as a block-start state repeats. The number of blocks simulated is at
/// most the number of distinct reachable states.
pub(crate) fn transduce<C, S, F>(
    pre: &[C],
    period: &[C],
    init: S,
    mut step: F,
) -> (Vec<u64>, Vec<u64>)
where
    S: Clone + Eq + Hash,
    F: FnMut(&S, &C) -> (u64, S),
{
    let mut out = Vec::with_capacity(pre.len());
    let mut state = init;
    for c in pre {
        let (d, next) = step(&state, c);
        out.push(d);
        state = next;
    }
    let mut seen: HashMap<S, usize> = HashMap::new();
    let mut blocks: Vec<Vec<u64>> = Vec::new();
    loop {
        if let Some(&first) = seen.get(&state) {
            for b in &blocks[..first] {
                out.extend_from_slice(b);
            }
            return (out, blocks[first..].concat());
        }
        seen.insert(state.clone(), blocks.len());
        let mut block = Vec::with_capacity(period.len());
        for c in period {
            let (d, next) = step(&state, c);
            block.push(d);
            state = next;
        }
        blocks.push(block);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_shortens_and_roots() {
        let w = Periodic::new(vec![1, 2, 3, 0], vec![3, 0, 3, 0]);
        assert_eq!(w.pre(), &[1, 2]);
        assert_eq!(w.period(), &[3, 0]);
        assert_eq!(w, Periodic::new(vec![1, 2], vec![3, 0, 3, 0, 3, 0]));
    }

    #[test]
    fn whole_preperiod_absorbed() {
        let w = Periodic::new(vec![0, 0, 0], vec![0]);
        assert!(w.pre().is_empty());
        assert_eq!(w.period(), &[0]);
    }

    #[test]
    fn aligned_view_preserves_sequence() {
        let w = Periodic::new(vec![5], vec![1, 2]);
        let (pre, per) = w.aligned(4, 6);
        assert_eq!(pre, vec![5, 1, 2, 1]);
        assert_eq!(per, vec![2, 1, 2, 1, 2, 1]);
    }
}
