//! Moments of the stationary linearised solution `Ψ_ε = P * ζ_ε`.

use rustfft::num_complex::Complex64;

use super::fftn::{fft_nd, signed_index};
use super::noise::NoiseFieldSample;
use crate::error::NumericsError;
use crate::wick::MomentSequence;

/// Solve `∂_t Ψ = ΔΨ + ζ_ε` for the stationary (periodic) solution by
/// spectral division `Ψ̂(ω,k) = ζ̂(ω,k) / (iω + |k|²)`, with the spatial zero
/// mode removed, then pool point values into empirical moments `m_1..m_8`.
/// Stationarity needs `d = 3`.
pub fn estimate_psi_moments(
    samples: &[NoiseFieldSample],
) -> Result<MomentSequence<f64>, NumericsError> {
    if samples.is_empty() {
        return Err(NumericsError::TooFewSamples(1));
    }
    let cfg = samples[0].field.cfg.clone();
    if cfg.d != 3 {
        return Err(NumericsError::DimensionUnsupported(cfg.d));
    }
    let shape = cfg.shape();
    let mut raw = [0.0f64; 9];
    let mut count = 0usize;
    for s in samples {
        let mut spec = s.field.to_complex();
        fft_nd(&mut spec, &shape, false);
        let two_pi = std::f64::consts::TAU;
        for (flat, v) in spec.iter_mut().enumerate() {
            let kx = flat / (cfg.nx * cfg.nx) % cfg.nx;
            let ky = flat / cfg.nx % cfg.nx;
            let kz = flat % cfg.nx;
            let it = flat / (cfg.nx * cfg.nx * cfg.nx);
            if kx == 0 && ky == 0 && kz == 0 {
                *v = Complex64::new(0.0, 0.0);
                continue;
            }
            let omega = two_pi * signed_index(it, cfg.nt) as f64 / cfg.extent_t;
            let ksq = [kx, ky, kz]
                .iter()
                .map(|&n| {
                    let k = two_pi * signed_index(n, cfg.nx) as f64 / cfg.extent_x;
                    k * k
                })
                .sum::<f64>();
            *v /= Complex64::new(ksq, omega);
        }
        fft_nd(&mut spec, &shape, true);
        let n = spec.len() as f64;
        for v in &spec {
            let psi = v.re / n;
            let mut p = 1.0;
            for m in raw.iter_mut() {
                *m += p;
                p *= psi;
            }
        }
        count += spec.len();
    }
    let moments: Vec<f64> = raw.iter().map(|m| m / count as f64).collect();
    MomentSequence::new(moments).map_err(NumericsError::Wick)
}
