//! Exact decision procedures for spectra of the quarter Cantor measure
//! `μ₄`, the self-similar measure with `μ₄ = ½ μ₄∘τ₁⁻¹ + ½ μ₄∘τ₂⁻¹`,
//! `τ₁x = x/4`, `τ₂x = (x+2)/4`.
//!
//! * [`adic`]: eventually periodic m-adic digit words and their arithmetic.
//! * [`constructions`]: `Λ₁`, `pΛ₁`, `Λ(L)`, `Λ_I(L)` and explicit labels.
//! * [`decision`]: residue automata, certificates, the seeker/adversary
//!   game, growing-run labels and measure decay.
//! * [`fourier`]: `μ̂₄`, exact orthogonality and frame diagnostics.
//! * [`cli`]: the command-line front end.

mod error;
mod periodic;

pub mod acceptance;
pub mod adic;
pub mod cli;
pub mod constructions;
pub mod decision;
pub mod fourier;

pub use error::{Error, Result};
