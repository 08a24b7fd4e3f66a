//! Independent oracles shared by the integration tests. They work on raw
//! congruences and never call the library's residue recursion.
#![allow(dead_code)]

/// Every digit sequence `ω_1..ω_depth` with `ω_k ∈ {0, a_k}` satisfying
/// `λ ≡ Σ_{k≤n} 4^{k-1} ω_k (mod 4^n)` for all `n ≤ depth`, found by plain
/// branching with 128-bit arithmetic.
pub fn congruence_paths(label: &[i64], lambda: i64, depth: usize) -> Vec<Vec<i64>> {
    assert!(depth <= label.len() && depth <= 50);
    let lambda = lambda as i128;
    let mut paths = vec![(Vec::new(), 0i128)];
    let mut weight = 1i128;
    for &a in &label[..depth] {
        let modulus = weight * 4;
        let mut next = Vec::new();
        for (digits, sum) in &paths {
            for omega in [0, a] {
                let s = sum + weight * omega as i128;
                if (lambda - s).rem_euclid(modulus) == 0 {
                    let mut d: Vec<i64> = digits.clone();
                    d.push(omega);
                    next.push((d, s));
                }
            }
        }
        paths = next;
        weight = modulus;
    }
    paths.into_iter().map(|(d, _)| d).collect()
}

/// Exact value of a finite digit sequence.
pub fn value(digits: &[i64]) -> i128 {
    digits
        .iter()
        .rev()
        .fold(0i128, |acc, &d| acc * 4 + d as i128)
}

/// Oracle classification after `depth` levels: `None` if no path survives,
/// `Some(true)` if the surviving path sums to `λ` exactly (a finite
/// expansion), `Some(false)` otherwise.
pub fn classify(label: &[i64], lambda: i64, depth: usize) -> Option<bool> {
    let paths = congruence_paths(label, lambda, depth);
    assert!(paths.len() <= 1, "odd digits give at most one path");
    paths.first().map(|p| value(p) == lambda as i128)
}

/// All `2^n` subset sums `Σ_{k∈S} 4^{k-1} a_k`, by bit masks.
pub fn subset_sums(label: &[i64], n: usize) -> Vec<i64> {
    (0u64..1 << n)
        .map(|mask| {
            (0..n)
                .filter(|k| mask >> k & 1 == 1)
                .map(|k| label[k] * 4i64.pow(k as u32))
                .sum()
        })
        .collect()
}

/// Membership of `z` in `{μ̂₄ = 0} ∩ ℤ`, straight from the factor
/// `cos(2π z / 4^j)` vanishing: `z = 4^{j-1}·odd` for some `j ≥ 1`.
pub fn zero_set(z: i64) -> bool {
    if z == 0 {
        return false;
    }
    let mut z = z;
    while z % 4 == 0 {
        z /= 4;
    }
    z % 2 != 0
}
