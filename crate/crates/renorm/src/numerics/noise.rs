//! Sampling of the rescaled noise field `ζ_ε`.
//!
//! The model field is a smeared, sign-symmetrized Poisson cloud: unit-scale
//! bumps `ψ(t,x) = (1-t²)²₊ (1-|x|²)²₊` at Poisson space-time points with
//! independent ±1 marks, normalized so the covariance integrates to one,
//! then rescaled to the microscopic scale ε by
//! `ζ_ε(t,x) = ε^{-s/2} ζ(t/ε², x/ε)` with `s = 2 + d`. The construction is
//! symmetric in law (global sign flip), stationary on the torus, and has
//! dependence range a fixed multiple of ε.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};
use rustfft::num_complex::Complex64;
use serde::Serialize;

use super::config::LatticeConfig;
use super::fftn::fft_nd;
use super::lattice::Field;
use crate::error::NumericsError;

/// Metadata travelling with each sample (part of the run manifest).
#[derive(Clone, Debug, Serialize)]
pub struct NoiseMeta {
    pub eps: f64,
    pub seed: u64,
    /// Unit-scale Poisson intensity ν.
    pub intensity: f64,
    pub points: usize,
    pub mollifier: &'static str,
}

#[derive(Clone, Debug)]
pub struct NoiseFieldSample {
    pub field: Field,
    pub meta: NoiseMeta,
}

/// Unit-scale bump and its lattice normalisation.
pub fn bump(t: f64, x2: f64) -> f64 {
    // t in bump time units, x2 = |x|² in bump space units
    let bt = 1.0 - t * t;
    let bx = 1.0 - x2;
    if bt <= 0.0 || bx <= 0.0 {
        0.0
    } else {
        bt * bt * bx * bx
    }
}

/// Discrete integral of the rescaled bump `ψ((t-t₀)/ε², (x-x₀)/ε)` over the
/// lattice, at a grid-aligned center. Used to normalize the covariance on the
/// lattice itself.
fn discrete_bump_integral(cfg: &LatticeConfig, eps: f64) -> f64 {
    let ht = cfg.ht();
    let rt = (eps * eps / ht).ceil() as i64;
    let rx = (eps / cfg.h).ceil() as i64;
    let mut sum = 0.0;
    let mut idx = vec![0i64; 1 + cfg.d];
    sum_box(cfg, eps, rt, rx, &mut idx, 0, &mut sum);
    sum * cfg.cell_volume()
}

fn sum_box(cfg: &LatticeConfig, eps: f64, rt: i64, rx: i64, idx: &mut Vec<i64>, axis: usize, sum: &mut f64) {
    let range = if axis == 0 { -rt..=rt } else { -rx..=rx };
    for v in range {
        idx[axis] = v;
        if axis + 1 < idx.len() {
            sum_box(cfg, eps, rt, rx, idx, axis + 1, sum);
        } else {
            let t = idx[0] as f64 * cfg.ht() / (eps * eps);
            let x2: f64 = idx[1..]
                .iter()
                .map(|&i| {
                    let x = i as f64 * cfg.h / eps;
                    x * x
                })
                .sum();
            *sum += bump(t, x2);
        }
    }
}

fn mix_seed(seed: u64, eps: f64) -> u64 {
    // distinct streams per (seed, eps)
    seed ^ (eps.to_bits().rotate_left(17))
}

/// Draw one sample of `ζ_ε` on the lattice torus.
pub fn sample_noise(
    cfg: &LatticeConfig,
    eps: f64,
    seed: u64,
) -> Result<NoiseFieldSample, NumericsError> {
    sample_noise_with_intensity(cfg, eps, seed, 1.0)
}

pub fn sample_noise_with_intensity(
    cfg: &LatticeConfig,
    eps: f64,
    seed: u64,
    intensity: f64,
) -> Result<NoiseFieldSample, NumericsError> {
    if eps < cfg.h {
        return Err(NumericsError::EpsBelowResolution { eps, h: cfg.h });
    }
    let s = (2 + cfg.d) as f64;
    let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(seed, eps));
    let volume = cfg.extent_t * cfg.extent_x.powi(cfg.d as i32);
    let lambda = intensity * eps.powf(-s) * volume;
    let points = Poisson::new(lambda)
        .map_err(|e| NumericsError::Config(format!("bad intensity: {}", e)))?
        .sample(&mut rng) as usize;

    // normalize against the lattice bump integral so the empirical
    // covariance integrates to one up to sampling error
    let s_psi = discrete_bump_integral(cfg, eps);
    let amp = eps.powf(-s / 2.0) / (intensity.sqrt() * s_psi / eps.powf(s));

    let mut field = Field::zeros(cfg);
    let ht = cfg.ht();
    let rt = (eps * eps / ht).ceil() as i64;
    let rx = (eps / cfg.h).ceil() as i64;
    for _ in 0..points {
        let sign: f64 = if rng.gen::<bool>() { 1.0 } else { -1.0 };
        let t0: f64 = rng.gen::<f64>() * cfg.extent_t;
        let mut x0 = [0.0f64; 3];
        for x in x0.iter_mut().take(cfg.d) {
            *x = rng.gen::<f64>() * cfg.extent_x;
        }
        paint_bump(&mut field, eps, sign * amp, t0, &x0[..cfg.d], rt, rx);
    }
    Ok(NoiseFieldSample {
        field,
        meta: NoiseMeta {
            eps,
            seed,
            intensity,
            points,
            mollifier: "(1-t^2)^2 (1-|x|^2)^2",
        },
    })
}

fn paint_bump(field: &mut Field, eps: f64, amp: f64, t0: f64, x0: &[f64], rt: i64, rx: i64) {
    let cfg = field.cfg.clone();
    let ht = cfg.ht();
    let it0 = (t0 / ht).round() as i64;
    let ix0: Vec<i64> = x0.iter().map(|&x| (x / cfg.h).round() as i64).collect();
    let mut idx = vec![0i64; 1 + cfg.d];
    paint_rec(field, &cfg, eps, amp, t0, x0, it0, &ix0, rt, rx, &mut idx, 0);
}

#[allow(clippy::too_many_arguments)]
fn paint_rec(
    field: &mut Field,
    cfg: &LatticeConfig,
    eps: f64,
    amp: f64,
    t0: f64,
    x0: &[f64],
    it0: i64,
    ix0: &[i64],
    rt: i64,
    rx: i64,
    idx: &mut Vec<i64>,
    axis: usize,
) {
    let (center, radius) = if axis == 0 { (it0, rt) } else { (ix0[axis - 1], rx) };
    for v in (center - radius)..=(center + radius) {
        idx[axis] = v;
        if axis + 1 < idx.len() {
            paint_rec(field, cfg, eps, amp, t0, x0, it0, ix0, rt, rx, idx, axis + 1);
        } else {
            let t = (idx[0] as f64 * cfg.ht() - t0) / (eps * eps);
            let x2: f64 = idx[1..]
                .iter()
                .zip(x0)
                .map(|(&i, &c)| {
                    let x = (i as f64 * cfg.h - c) / eps;
                    x * x
                })
                .sum();
            let v = bump(t, x2);
            if v != 0.0 {
                let flat = field.index_wrapped(idx);
                field.data[flat] += amp * v;
            }
        }
    }
}

/// Gaussian control field with the same covariance structure: white noise
/// smoothed by the same bump, normalized the same way. Its cumulants above
/// order two vanish.
pub fn sample_gaussian_surrogate(
    cfg: &LatticeConfig,
    eps: f64,
    seed: u64,
) -> Result<NoiseFieldSample, NumericsError> {
    if eps < cfg.h {
        return Err(NumericsError::EpsBelowResolution { eps, h: cfg.h });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(seed, eps).wrapping_add(0x9e3779b97f4a7c15));
    let shape = cfg.shape();
    let cellvol = cfg.cell_volume();
    // white noise density: variance 1/cellvol per cell
    let mut white: Vec<Complex64> = (0..cfg.cells())
        .map(|_| {
            let u: f64 = rng.sample(rand_distr::StandardNormal);
            Complex64::new(u / cellvol.sqrt(), 0.0)
        })
        .collect();
    // bump kernel on the lattice (rescaled, centered at 0)
    let mut kernel = Field::zeros(cfg);
    let ht = cfg.ht();
    let rt = (eps * eps / ht).ceil() as i64;
    let rx = (eps / cfg.h).ceil() as i64;
    let mut idx = vec![0i64; 1 + cfg.d];
    fill_kernel(&mut kernel, cfg, eps, rt, rx, &mut idx, 0);
    // white noise in density normalization is scale-free, so the amplitude
    // only has to undo the bump mass
    let amp = 1.0 / discrete_bump_integral(cfg, eps);

    let mut kspec = kernel.to_complex();
    fft_nd(&mut white, &shape, false);
    fft_nd(&mut kspec, &shape, false);
    for (w, k) in white.iter_mut().zip(&kspec) {
        *w *= k * cellvol;
    }
    fft_nd(&mut white, &shape, true);
    let n = cfg.cells() as f64;
    let mut field = Field::zeros(cfg);
    for (o, v) in field.data.iter_mut().zip(&white) {
        *o = v.re / n * amp;
    }
    Ok(NoiseFieldSample {
        field,
        meta: NoiseMeta { eps, seed, intensity: 0.0, points: 0, mollifier: "gaussian surrogate" },
    })
}

fn fill_kernel(
    field: &mut Field,
    cfg: &LatticeConfig,
    eps: f64,
    rt: i64,
    rx: i64,
    idx: &mut Vec<i64>,
    axis: usize,
) {
    let radius = if axis == 0 { rt } else { rx };
    for v in -radius..=radius {
        idx[axis] = v;
        if axis + 1 < idx.len() {
            fill_kernel(field, cfg, eps, rt, rx, idx, axis + 1);
        } else {
            let t = idx[0] as f64 * cfg.ht() / (eps * eps);
            let x2: f64 = idx[1..]
                .iter()
                .map(|&i| {
                    let x = i as f64 * cfg.h / eps;
                    x * x
                })
                .sum();
            let v = bump(t, x2);
            if v != 0.0 {
                let flat = field.index_wrapped(idx);
                field.data[flat] += v;
            }
        }
    }
}
