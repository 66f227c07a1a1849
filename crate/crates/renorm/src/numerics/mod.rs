//! Desk-scale numerical layer: lattice sampling of admissible non-Gaussian
//! noise, empirical cumulants with jackknife errors, stationary-solution
//! moments, and deterministic estimation of the renormalisation constants on
//! a radial space-time grid.

pub mod config;
pub mod constants;
pub mod empirical;
mod fftn;
pub mod fit;
pub mod kernel;
pub mod lattice;
pub mod noise;
pub mod psi;
pub mod radial;

pub use config::{LatticeConfig, RadialConfig};
pub use constants::{estimate_constant, ConstantEngine};
pub use empirical::{
    covariance_integral, empirical_cumulants, far_lag_correlations, CumulantEstimate,
};
pub use fit::{fit_log_divergence, LogFit};
pub use noise::{sample_gaussian_surrogate, sample_noise, NoiseFieldSample};
pub use psi::estimate_psi_moments;
