//! Spectral convolution engine for radially symmetric space-time kernels.
//!
//! Fields live on a `(t, r)` grid: time is a torus of `nt` steps, the radial
//! coordinate holds `nr` interior points `r_j = (j+1)·hr` with a sine-series
//! boundary at `R = (nr+1)·hr`. For radial functions in three spatial
//! dimensions the Fourier transform reduces to a sine transform of `r·f(r)`,
//! so a 3+1-dimensional convolution becomes
//!
//! ```text
//! S_h(ω, k) = (4π / k) · S_f(ω, k) · S_g(ω, k)
//! ```
//!
//! with `S_f(ω, k) = ∫ dt e^{-iωt} ∫ dr  r f(t, r) sin(kr)`. The discrete
//! version (DST-I in `r`, FFT in `t`) is an exact convolution on the
//! reflected torus; extents are chosen so supports never reach the
//! boundaries. Everything the constant estimation integrates is radial, which
//! is what makes parabolic resolution `ht = hr²` affordable.

use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;

use serde::Serialize;

/// Grid parameters: `nt` time steps of `ht`, `nr` interior radial points of
/// `hr`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RadialGrid {
    pub nt: usize,
    pub nr: usize,
    pub ht: f64,
    pub hr: f64,
}

impl RadialGrid {
    pub fn t_extent(&self) -> f64 {
        self.nt as f64 * self.ht
    }

    pub fn r_boundary(&self) -> f64 {
        (self.nr + 1) as f64 * self.hr
    }

    pub fn radius(&self, j: usize) -> f64 {
        (j + 1) as f64 * self.hr
    }

    /// Signed physical time of row `t` (torus convention: second half is
    /// negative).
    pub fn time(&self, t: usize) -> f64 {
        let signed = super::fftn::signed_index(t, self.nt);
        signed as f64 * self.ht
    }

    pub fn wavenumber(&self, m: usize) -> f64 {
        std::f64::consts::PI * (m + 1) as f64 / self.r_boundary()
    }

    pub fn cells(&self) -> usize {
        self.nt * self.nr
    }

    /// Volume element of the cell at radial index `j`.
    pub fn cell_volume(&self, j: usize) -> f64 {
        let r = self.radius(j);
        4.0 * std::f64::consts::PI * r * r * self.hr * self.ht
    }
}

/// Real radial field, laid out `[t][r]`.
#[derive(Clone, Debug)]
pub struct RField {
    pub grid: RadialGrid,
    pub data: Vec<f64>,
}

/// Spectrum, laid out `[ω][k]` with the forward measure factors included.
#[derive(Clone, Debug)]
pub struct RSpec {
    pub grid: RadialGrid,
    pub data: Vec<Complex64>,
}

impl RField {
    pub fn zeros(grid: &RadialGrid) -> RField {
        RField { grid: grid.clone(), data: vec![0.0; grid.cells()] }
    }

    pub fn from_fn(grid: &RadialGrid, f: impl Fn(f64, f64) -> f64) -> RField {
        let mut out = RField::zeros(grid);
        for t in 0..grid.nt {
            let time = grid.time(t);
            for j in 0..grid.nr {
                out.data[t * grid.nr + j] = f(time, grid.radius(j));
            }
        }
        out
    }

    pub fn at(&self, t: usize, j: usize) -> f64 {
        self.data[t * self.grid.nr + j]
    }

    /// Pointwise product.
    pub fn mul(&self, other: &RField) -> RField {
        assert_eq!(self.grid, other.grid);
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a * b).collect();
        RField { grid: self.grid.clone(), data }
    }

    /// Pointwise integer power.
    pub fn powi(&self, n: i32) -> RField {
        let data = self.data.iter().map(|v| v.powi(n)).collect();
        RField { grid: self.grid.clone(), data }
    }

    /// `f(-t, r)` on the time torus.
    pub fn reverse_time(&self) -> RField {
        let mut out = RField::zeros(&self.grid);
        for t in 0..self.grid.nt {
            let rt = (self.grid.nt - t) % self.grid.nt;
            let (src, dst) = (t * self.grid.nr, rt * self.grid.nr);
            out.data[dst..dst + self.grid.nr].copy_from_slice(&self.data[src..src + self.grid.nr]);
        }
        out
    }

    /// `∫ f dz = Σ f(t, r_j) 4π r_j² hr ht`.
    pub fn integral(&self) -> f64 {
        let mut sum = 0.0;
        for t in 0..self.grid.nt {
            for j in 0..self.grid.nr {
                sum += self.at(t, j) * self.grid.cell_volume(j);
            }
        }
        sum
    }

    /// Forward transform: DST-I of `hr · r f` along `r`, then FFT with `ht`
    /// along `t`.
    pub fn forward(&self, plans: &mut Plans) -> RSpec {
        let (nt, nr) = (self.grid.nt, self.grid.nr);
        let mut data = vec![Complex64::default(); nt * nr];
        // radial pass (real input)
        for t in 0..nt {
            let row = &self.data[t * nr..(t + 1) * nr];
            let mut g: Vec<Complex64> = row
                .iter()
                .enumerate()
                .map(|(j, &v)| Complex64::new(self.grid.radius(j) * v * self.grid.hr, 0.0))
                .collect();
            plans.dst(&mut g);
            data[t * nr..(t + 1) * nr].copy_from_slice(&g);
        }
        // time pass
        plans.fft_columns(&mut data, nt, nr, false);
        for v in data.iter_mut() {
            *v *= self.grid.ht;
        }
        RSpec { grid: self.grid.clone(), data }
    }
}

impl RSpec {
    /// Multiply two spectra as a 3+1-dimensional convolution.
    pub fn convolve(&self, other: &RSpec) -> RSpec {
        assert_eq!(self.grid, other.grid);
        let nr = self.grid.nr;
        let mut data = vec![Complex64::default(); self.data.len()];
        for (i, out) in data.iter_mut().enumerate() {
            let k = self.grid.wavenumber(i % nr);
            *out = self.data[i] * other.data[i] * (4.0 * std::f64::consts::PI / k);
        }
        RSpec { grid: self.grid.clone(), data }
    }

    /// Inverse transform back to a real radial field.
    pub fn inverse(&self, plans: &mut Plans) -> RField {
        let (nt, nr) = (self.grid.nt, self.grid.nr);
        let mut work = self.data.clone();
        plans.fft_columns(&mut work, nt, nr, true);
        let t_norm = 1.0 / (self.grid.nt as f64 * self.grid.ht);
        let r_norm = 2.0 / self.grid.r_boundary();
        let mut out = RField::zeros(&self.grid);
        let mut row = vec![Complex64::default(); nr];
        for t in 0..nt {
            row.copy_from_slice(&work[t * nr..(t + 1) * nr]);
            for v in row.iter_mut() {
                *v *= t_norm;
            }
            plans.dst(&mut row);
            for j in 0..nr {
                out.data[t * nr + j] = row[j].re * r_norm / self.grid.radius(j);
            }
        }
        out
    }
}

/// FFT plans shared across transforms on one grid.
pub struct Plans {
    planner: FftPlanner<f64>,
    dst_len: usize,
}

impl Plans {
    pub fn new(grid: &RadialGrid) -> Plans {
        Plans { planner: FftPlanner::new(), dst_len: 2 * (grid.nr + 1) }
    }

    /// DST-I in place via an odd extension of length `2(nr+1)`.
    fn dst(&mut self, g: &mut [Complex64]) {
        let n = g.len();
        let l = self.dst_len;
        debug_assert_eq!(l, 2 * (n + 1));
        let fft = self.planner.plan_fft_forward(l);
        let mut buf = vec![Complex64::default(); l];
        for (j, &v) in g.iter().enumerate() {
            buf[j + 1] = v;
            buf[l - 1 - j] = -v;
        }
        fft.process(&mut buf);
        for (m, out) in g.iter_mut().enumerate() {
            // X[m+1] = -2i · DST[m]
            *out = buf[m + 1] * Complex64::new(0.0, 0.5);
        }
    }

    fn fft_columns(&mut self, data: &mut [Complex64], nt: usize, nr: usize, inverse: bool) {
        let fft = if inverse {
            self.planner.plan_fft_inverse(nt)
        } else {
            self.planner.plan_fft_forward(nt)
        };
        let mut lane = vec![Complex64::default(); nt];
        for j in 0..nr {
            for t in 0..nt {
                lane[t] = data[t * nr + j];
            }
            fft.process(&mut lane);
            for t in 0..nt {
                data[t * nr + j] = lane[t];
            }
        }
    }
}
