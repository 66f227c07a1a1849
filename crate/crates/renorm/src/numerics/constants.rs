//! Deterministic estimation of the renormalisation constants `C_{k,l,π}`.
//!
//! For the smeared-Poisson model noise the joint cumulants have the closed
//! form `c_n(z_1..z_n) = ν A^n ε^{5n/2-5} ∫ Π_i φ_ε(z_i - w) dw` with
//! `φ_ε(z) = ε^{-5} ψ(t/ε², x/ε)`, so each cumulant block of the constant
//! graph becomes a convolution of powers of `G = K * φ_ε`:
//!
//! ```text
//! F_B(u) = ∫ G(u-c)^{l_j} G(-c)^{k_j} dc,
//! C_{k,l,π} = ε^{(k+l-4)/2} Π_B [ν A^{|B|} ε^{5|B|/2-5}] · ∫ K(-u) Π_B F_B(u) du,
//! ```
//!
//! all evaluated by spectral quadrature on the radial grid (no Monte Carlo).
//! `k_j` legs of a block attach to the origin, `l_j` to the integrated
//! vertex, matching the symbol `Ψ^k I(E^· Ψ^l)` whose constant this is.

use std::collections::BTreeMap;

use super::config::RadialConfig;
use super::kernel::KernelGrid;
use super::radial::{Plans, RField, RSpec};
use crate::error::NumericsError;
use crate::wick::Pairing;

/// Unit-scale bump `ψ(t, x) = (1-t²)²₊ (1-|x|²)²₊` and its exact integral in
/// 3+1 dimensions.
fn psi_bump(t: f64, r: f64) -> f64 {
    super::noise::bump(t, r * r)
}

fn psi_integral() -> f64 {
    // ∫(1-t²)² dt · ∫(1-r²)² 4πr² dr over the unit supports
    (16.0 / 15.0) * (32.0 * std::f64::consts::PI / 105.0)
}

/// Reusable state for estimating several constants on one grid: the
/// corrected kernel and its spectrum are ε-independent.
pub struct ConstantEngine {
    pub cfg: RadialConfig,
    pub kernel: KernelGrid,
    pub intensity: f64,
    plans: Plans,
    kernel_spec: RSpec,
    kernel_reversed: RField,
}

impl ConstantEngine {
    pub fn new(cfg: RadialConfig) -> ConstantEngine {
        ConstantEngine::with_intensity(cfg, 1.0)
    }

    pub fn with_intensity(cfg: RadialConfig, intensity: f64) -> ConstantEngine {
        let kernel = KernelGrid::build(&cfg);
        let mut plans = Plans::new(&kernel.grid);
        let kernel_spec = kernel.values.forward(&mut plans);
        let kernel_reversed = kernel.values.reverse_time();
        ConstantEngine { cfg, kernel, intensity, plans, kernel_spec, kernel_reversed }
    }

    /// `C_{k,l,π}^{(ε)}` by nested lattice convolutions.
    pub fn estimate(&mut self, pi: &Pairing, eps: f64) -> Result<f64, NumericsError> {
        self.cfg.validate(eps)?;
        let k: u32 = pi.left_sum();
        let l: u32 = pi.right_sum();
        let grid = self.kernel.grid.clone();

        // mollified noise kernel φ_ε, cell-averaged (in the transform's r·f
        // measure) over its small support; zero outside the support box
        let phi = RField::from_fn(&grid, |t, r| {
            if t.abs() > eps * eps + grid.ht || r > eps + grid.hr {
                return 0.0;
            }
            let scale = eps.powi(-5);
            let ns = 5;
            let mut acc = 0.0;
            for a in 0..ns {
                for b in 0..ns {
                    let dt = (a as f64 + 0.5) / ns as f64 - 0.5;
                    let dr = (b as f64 + 0.5) / ns as f64 - 0.5;
                    let (tt, rr) = (t + dt * grid.ht, (r + dr * grid.hr).max(0.0));
                    acc += psi_bump(tt / (eps * eps), rr / eps) * rr;
                }
            }
            scale * acc / (ns * ns) as f64 / r
        });
        let g = self.kernel_spec.convolve(&phi.forward(&mut self.plans)).inverse(&mut self.plans);
        let g_rev = g.reverse_time();

        // distinct block shapes and their multiplicities in π
        let mut shapes: BTreeMap<(u32, u32), u32> = BTreeMap::new();
        for &b in pi.blocks() {
            *shapes.entry(b).or_insert(0) += 1;
        }
        // spectra of the needed powers of G and its reversal
        let mut pow_specs: BTreeMap<(bool, u32), RSpec> = BTreeMap::new();
        for (&(outer, inner), _) in &shapes {
            pow_specs
                .entry((false, inner))
                .or_insert_with(|| g.powi(inner as i32).forward(&mut self.plans));
            pow_specs
                .entry((true, outer))
                .or_insert_with(|| g_rev.powi(outer as i32).forward(&mut self.plans));
        }

        let mut product: Option<RField> = None;
        for (&(outer, inner), &mult) in &shapes {
            let f_b = pow_specs[&(false, inner)]
                .convolve(&pow_specs[&(true, outer)])
                .inverse(&mut self.plans);
            for _ in 0..mult {
                product = Some(match product.take() {
                    None => f_b.clone(),
                    Some(p) => p.mul(&f_b),
                });
            }
        }
        let product = match product {
            Some(p) => p.mul(&self.kernel_reversed),
            // empty pairing: the "constant" degenerates to ∫K = 0-ish
            None => self.kernel_reversed.clone(),
        };
        let integral = product.integral();

        let amp = 1.0 / (self.intensity.sqrt() * psi_integral());
        let mut prefactor = eps.powi(k as i32 + l as i32 - 4).sqrt();
        for &(outer, inner) in pi.blocks() {
            let size = (outer + inner) as i32;
            prefactor *= self.intensity * amp.powi(size) * eps.powi(5 * size - 10).sqrt();
        }
        Ok(prefactor * integral)
    }
}

/// One-shot estimation of `C_{k,l,π}^{(ε)}` (builds the kernel each call;
/// use [`ConstantEngine`] for sweeps).
pub fn estimate_constant(
    k: u32,
    l: u32,
    pi: &Pairing,
    eps: f64,
    cfg: &RadialConfig,
) -> Result<f64, NumericsError> {
    if pi.left_sum() != k || pi.right_sum() != l {
        return Err(NumericsError::Config(format!(
            "pairing {} does not contract ({}, {})",
            pi, k, l
        )));
    }
    let mut engine = ConstantEngine::new(cfg.clone());
    engine.estimate(pi, eps)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coarse_cfg() -> RadialConfig {
        RadialConfig {
            hr: 1.0 / 32.0,
            ht: 1.0 / 1024.0,
            extent_t: 1.0,
            extent_r: 1.0,
            trunc_radius: 0.5,
            max_cells: 1 << 26,
        }
    }

    #[test]
    fn pairwise_constant_grows_with_log() {
        let mut engine = ConstantEngine::new(coarse_cfg());
        let pi = Pairing::pairwise(2);
        let c1 = engine.estimate(&pi, 0.25).unwrap();
        let c2 = engine.estimate(&pi, 0.125).unwrap();
        let c3 = engine.estimate(&pi, 0.0625).unwrap();
        assert!(c2 > c1 && c3 > c2, "{} {} {}", c1, c2, c3);
    }

    #[test]
    fn all_four_constant_settles() {
        let mut engine = ConstantEngine::new(coarse_cfg());
        let pi = Pairing::single(2, 2);
        let c1 = engine.estimate(&pi, 0.25).unwrap();
        let c2 = engine.estimate(&pi, 0.125).unwrap();
        let c3 = engine.estimate(&pi, 0.0625).unwrap();
        assert!((c3 - c2).abs() < 0.8 * (c2 - c1).abs(), "{} {} {}", c1, c2, c3);
    }

    #[test]
    fn resolution_guard() {
        let cfg = coarse_cfg();
        assert!(matches!(
            estimate_constant(2, 2, &Pairing::pairwise(2), 1.0 / 128.0, &cfg),
            Err(NumericsError::EpsBelowResolution { .. })
        ));
    }
}
