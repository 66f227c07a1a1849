//! Renormalisation power counting for singular stochastic PDEs driven by
//! non-Gaussian noise.
//!
//! The crate mechanizes the combinatorial side of the renormalisation of
//! `Φ⁴₃`-type phase-coexistence models:
//!
//! - [`exact`] — exact arithmetic over `q + m·κ + n·δ` with comparison
//!   semantics "for all sufficiently small κ, δ > 0";
//! - [`trees`] — generation of the regularity-structure symbol set from its
//!   production rules, homogeneity assignment, and the symbol-level Wick and
//!   mass renormalisation maps;
//! - [`wick`] — joint cumulants, Wick products and Appell polynomials,
//!   averaged potentials with the pitchfork check, pairings, counterterms and
//!   the θ(ε) schedule;
//! - [`graphs`] — labelled chaos graphs, ε-allocation, exhaustive and reduced
//!   verification of the subset power-counting conditions, and the
//!   collapse/merge/absorb rewrites behind the divergence classification;
//! - [`numerics`] — lattice sampling of admissible non-Gaussian noise,
//!   empirical cumulants, stationary-solution moments, and deterministic
//!   estimation of renormalisation constants exhibiting the log divergence;
//! - [`cli`] — the batch command-line front end.
//!
//! Run `cargo run --example <name>` for worked examples of each capability,
//! or use the `renorm` binary for machine-readable reports.

pub mod cli;
pub mod error;
pub mod exact;
pub mod graphs;
pub mod numerics;
pub mod trees;
pub mod wick;

pub use exact::ExactValue;
