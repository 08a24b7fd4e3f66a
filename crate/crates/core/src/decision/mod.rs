//! Exact decisions about quasi 4-based expansions.
//!
//! Everything here rests on one recursion. Writing `r_0 = λ`,
//! `λ ≡ Σ_{k≤n} 4^{k-1} ω_k (mod 4^n)` for all `n` holds iff each
//! `r_{k-1} - ω_k` is divisible by 4 and `r_k = (r_{k-1} - ω_k)/4`, since
//! `λ - Σ_{k≤n} 4^{k-1} ω_k = 4^n r_n`. The residues shrink towards a bounded
//! core, so every question about infinitely long expansions becomes a
//! question about cycles in a finite graph.

mod automaton;
mod decay;
mod expansion;
mod game;
mod growing_runs;

pub use automaton::{core_bound, step, Edge, ResidueAutomaton, WitnessCertificate};
pub use decay::{decay_profile, measure_decay_exact, monte_carlo_survival, SurvivalEstimate};
pub use expansion::{
    exists_infinite_expansion, expansion_along_prefix, expansion_type, is_spectrum_ep_label,
    Expansion, PrefixOutcome, SpectrumDecision,
};
pub use game::{universal_game, GameResult, GameVerdict};
pub use growing_runs::{thm47_check, CycleRefutation, GrowingRunsReport};
