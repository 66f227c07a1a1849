//! Small n-dimensional complex FFT on row-major buffers.

use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;

/// In-place FFT along every axis. `shape` is row-major (last axis
/// contiguous); `inverse` applies the unnormalized inverse transform.
pub fn fft_nd(data: &mut [Complex64], shape: &[usize], inverse: bool) {
    assert_eq!(data.len(), shape.iter().product::<usize>());
    let mut planner = FftPlanner::new();
    for axis in 0..shape.len() {
        let n = shape[axis];
        if n <= 1 {
            continue;
        }
        let fft = if inverse { planner.plan_fft_inverse(n) } else { planner.plan_fft_forward(n) };
        let stride: usize = shape[axis + 1..].iter().product();
        let block = stride * n;
        let lanes = data.len() / block;
        let mut lane = vec![Complex64::default(); n];
        for outer in 0..lanes {
            for inner in 0..stride {
                let base = outer * block + inner;
                for i in 0..n {
                    lane[i] = data[base + i * stride];
                }
                fft.process(&mut lane);
                for i in 0..n {
                    data[base + i * stride] = lane[i];
                }
            }
        }
    }
}

/// Signed frequency index for position `i` on a ring of `n` sites.
pub fn signed_index(i: usize, n: usize) -> i64 {
    if i <= n / 2 {
        i as i64
    } else {
        i as i64 - n as i64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        let shape = [4usize, 6, 5];
        let n: usize = shape.iter().product();
        let orig: Vec<Complex64> =
            (0..n).map(|i| Complex64::new((i as f64).sin(), (i as f64 * 0.7).cos())).collect();
        let mut data = orig.clone();
        fft_nd(&mut data, &shape, false);
        fft_nd(&mut data, &shape, true);
        for (a, b) in data.iter().zip(&orig) {
            assert!((a / n as f64 - b).norm() < 1e-12);
        }
    }

    #[test]
    fn plane_wave_spectrum() {
        let shape = [8usize, 8];
        let mut data: Vec<Complex64> = (0..64)
            .map(|i| {
                let (t, x) = (i / 8, i % 8);
                Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * (3 * t + 2 * x) as f64 / 8.0)
            })
            .collect();
        fft_nd(&mut data, &shape, false);
        for (i, v) in data.iter().enumerate() {
            let expect = if i == 3 * 8 + 2 { 64.0 } else { 0.0 };
            assert!((v.norm() - expect).abs() < 1e-9, "bin {}", i);
        }
    }
}
