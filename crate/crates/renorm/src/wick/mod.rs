//! Cumulant/Wick combinatorics and the potential-averaging calculus.
//!
//! Everything here is pure: moments↔cumulants conversion, Wick products and
//! Appell polynomials, averaged potentials with the pitchfork check, pairings
//! with multiplicities, and the counterterm/θ-schedule formulas. Exact
//! rational arithmetic is the default; the same algorithms instantiate at
//! `f64` for the lattice layer.

pub mod counterterm;
pub mod cumulants;
pub mod pairings;
pub mod partitions;
pub mod polynomial;

use std::ops::{Add, Mul, Sub};

use num::FromPrimitive;
use num::{One, Zero};

pub use counterterm::{mass_counterterm, theta_log_coefficient, theta_schedule, LogLinear};
pub use cumulants::{
    cumulants_to_moments, moment_from_cumulants, moments_to_cumulants, multiset, wick_expand,
    CumulantTable, Multiset,
};
pub use pairings::{enumerate_pairings, pairing_multiplicity, Pairing};
pub use polynomial::{
    averaged_potential, check_pitchfork, gaussian_moments, wick_polynomial, MomentSequence,
    PitchforkReport, Polynomial, PotentialFamily,
};

/// Coefficient ring for the combinatorial algorithms: exact rationals by
/// default, `f64` in numeric mode.
pub trait Scalar:
    Clone
    + PartialEq
    + Zero
    + One
    + FromPrimitive
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count out of range for scalar")
    }
}

impl<T> Scalar for T where
    T: Clone
        + PartialEq
        + Zero
        + One
        + FromPrimitive
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
{
}
