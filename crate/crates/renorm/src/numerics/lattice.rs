//! Real scalar fields on the space-time torus lattice.

use rustfft::num_complex::Complex64;

use super::config::LatticeConfig;
use super::fftn::fft_nd;

/// Row-major real field over the lattice of `cfg.shape()`.
#[derive(Clone, Debug)]
pub struct Field {
    pub cfg: LatticeConfig,
    pub data: Vec<f64>,
}

impl Field {
    pub fn zeros(cfg: &LatticeConfig) -> Field {
        Field { cfg: cfg.clone(), data: vec![0.0; cfg.cells()] }
    }

    pub fn shape(&self) -> Vec<usize> {
        self.cfg.shape()
    }

    /// Flat index from per-axis indices (already wrapped).
    pub fn index(&self, idx: &[usize]) -> usize {
        let shape = self.shape();
        let mut flat = 0;
        for (i, &x) in idx.iter().enumerate() {
            debug_assert!(x < shape[i]);
            flat = flat * shape[i] + x;
        }
        flat
    }

    /// Flat index with periodic wrapping of signed offsets.
    pub fn index_wrapped(&self, idx: &[i64]) -> usize {
        let shape = self.shape();
        let mut flat = 0usize;
        for (i, &x) in idx.iter().enumerate() {
            let n = shape[i] as i64;
            let w = x.rem_euclid(n) as usize;
            flat = flat * shape[i] + w;
        }
        flat
    }

    pub fn to_complex(&self) -> Vec<Complex64> {
        self.data.iter().map(|&v| Complex64::new(v, 0.0)).collect()
    }

    pub fn mean(&self) -> f64 {
        self.data.iter().sum::<f64>() / self.data.len() as f64
    }

    /// Circular autocorrelation `ρ(lag) = (1/N) Σ_z f(z) f(z+lag)` via FFT.
    pub fn autocorrelation(&self) -> Field {
        let shape = self.shape();
        let n = self.data.len() as f64;
        let mut spec = self.to_complex();
        fft_nd(&mut spec, &shape, false);
        for v in spec.iter_mut() {
            *v = Complex64::new(v.norm_sqr(), 0.0);
        }
        fft_nd(&mut spec, &shape, true);
        let data = spec.iter().map(|v| v.re / (n * n)).collect();
        Field { cfg: self.cfg.clone(), data }
    }
}
