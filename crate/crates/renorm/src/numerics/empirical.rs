//! Empirical joint cumulants with jackknife errors, and the covariance
//! diagnostics of the noise contract (normalisation and finite range).

use std::collections::BTreeMap;

use serde::Serialize;

use super::noise::NoiseFieldSample;
use crate::error::NumericsError;
use crate::wick::{moments_to_cumulants, multiset, Multiset};

/// A lag configuration: one space-time offset (in cells) per variable; the
/// cumulant couples `ζ(z + off_0), .., ζ(z + off_{order-1})` pooled over `z`.
pub type LagConfig = Vec<Vec<i64>>;

#[derive(Clone, Debug, Serialize)]
pub struct CumulantEstimate {
    pub order: usize,
    pub lags: LagConfig,
    pub value: f64,
    pub stderr: f64,
}

/// Joint cumulants at the given lag configurations, from lattice-averaged
/// joint moments via the moment–partition recursion, with leave-one-sample-
/// out jackknife standard errors.
pub fn empirical_cumulants(
    samples: &[NoiseFieldSample],
    order: usize,
    lag_configs: &[LagConfig],
) -> Result<Vec<CumulantEstimate>, NumericsError> {
    if samples.len() < 2 {
        return Err(NumericsError::TooFewSamples(2));
    }
    if !(2..=6).contains(&order) {
        return Err(NumericsError::BadOrder(order));
    }
    let mut out = Vec::new();
    for lags in lag_configs {
        if lags.len() != order {
            return Err(NumericsError::Config(format!(
                "lag configuration has {} offsets, expected {}",
                lags.len(),
                order
            )));
        }
        // per-sample joint moments of every non-empty subset of variables
        let mut per_sample: Vec<BTreeMap<Multiset, f64>> = Vec::with_capacity(samples.len());
        for s in samples {
            per_sample.push(subset_moments(s, lags)?);
        }
        let full: Multiset = multiset(&(0..order as u32).collect::<Vec<_>>());
        let estimate = |skip: Option<usize>| -> Result<f64, NumericsError> {
            let mut avg: BTreeMap<Multiset, f64> = BTreeMap::new();
            let mut count = 0.0;
            for (i, m) in per_sample.iter().enumerate() {
                if Some(i) == skip {
                    continue;
                }
                count += 1.0;
                for (k, v) in m {
                    *avg.entry(k.clone()).or_insert(0.0) += v;
                }
            }
            for v in avg.values_mut() {
                *v /= count;
            }
            let table = moments_to_cumulants(&avg)?;
            Ok(table.get(&full))
        };
        let value = estimate(None)?;
        let n = samples.len() as f64;
        let jack: Vec<f64> =
            (0..samples.len()).map(|i| estimate(Some(i))).collect::<Result<_, _>>()?;
        let jbar = jack.iter().sum::<f64>() / n;
        let var = (n - 1.0) / n * jack.iter().map(|j| (j - jbar) * (j - jbar)).sum::<f64>();
        out.push(CumulantEstimate { order, lags: lags.clone(), value, stderr: var.sqrt() });
    }
    Ok(out)
}

fn subset_moments(
    sample: &NoiseFieldSample,
    lags: &LagConfig,
) -> Result<BTreeMap<Multiset, f64>, NumericsError> {
    let field = &sample.field;
    let order = lags.len();
    let axes = field.shape().len();
    for l in lags {
        if l.len() != axes {
            return Err(NumericsError::Config(format!(
                "offset has {} components, lattice has {} axes",
                l.len(),
                axes
            )));
        }
    }
    let shape = field.shape();
    let mut out: BTreeMap<Multiset, f64> = BTreeMap::new();
    // precompute flat offsets per variable relative to a base index
    let n = field.data.len();
    let mut idx = vec![0i64; axes];
    let mut values = vec![0.0f64; order];
    let mut sums = vec![0.0f64; 1 << order];
    let mut flat = 0usize;
    loop {
        for (v, lag) in values.iter_mut().zip(lags) {
            let mut shifted = idx.clone();
            for (a, d) in shifted.iter_mut().zip(lag) {
                *a += d;
            }
            *v = field.data[field.index_wrapped(&shifted)];
        }
        for (mask, slot) in sums.iter_mut().enumerate().skip(1) {
            let mut prod = 1.0;
            for (i, v) in values.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    prod *= v;
                }
            }
            *slot += prod;
        }
        // advance multi-index
        flat += 1;
        if flat >= n {
            break;
        }
        let mut axis = axes;
        loop {
            axis -= 1;
            idx[axis] += 1;
            if (idx[axis] as usize) < shape[axis] {
                break;
            }
            idx[axis] = 0;
            if axis == 0 {
                break;
            }
        }
    }
    for (mask, slot) in sums.iter().enumerate().skip(1) {
        let labels: Vec<u32> =
            (0..order as u32).filter(|i| mask >> i & 1 == 1).collect();
        out.insert(multiset(&labels), slot / n as f64);
    }
    Ok(out)
}

/// Empirical covariance integral `∫ρ̂` per sample (autocorrelation summed
/// over a parabolic lag window of a few ε), with the across-sample mean and
/// standard error. The window keeps the estimator's variance small; the
/// covariance vanishes beyond a fixed multiple of ε anyway.
pub fn covariance_integral(samples: &[NoiseFieldSample]) -> Result<(f64, f64), NumericsError> {
    if samples.is_empty() {
        return Err(NumericsError::TooFewSamples(1));
    }
    let mut vals = Vec::with_capacity(samples.len());
    for s in samples {
        let cfg = &s.field.cfg;
        let ac = s.field.autocorrelation();
        let eps = s.meta.eps;
        let wt = ((2.5 * eps * eps) / cfg.ht()).ceil() as i64;
        let wx = ((2.5 * eps) / cfg.h).ceil() as i64;
        let mut sum = 0.0;
        let shape = s.field.shape();
        let mut idx = vec![0i64; shape.len()];
        window_sum(&ac, &shape, wt, wx, &mut idx, 0, &mut sum);
        vals.push(sum * cfg.cell_volume());
    }
    Ok(mean_stderr(&vals))
}

fn window_sum(
    ac: &super::lattice::Field,
    shape: &[usize],
    wt: i64,
    wx: i64,
    idx: &mut Vec<i64>,
    axis: usize,
    sum: &mut f64,
) {
    let w = if axis == 0 { wt } else { wx };
    let n = shape[axis] as i64;
    let w = w.min((n - 1) / 2); // never wrap onto the same cell twice
    for v in -w..=w {
        idx[axis] = v;
        if axis + 1 < idx.len() {
            window_sum(ac, shape, wt, wx, idx, axis + 1, sum);
        } else {
            *sum += ac.data[ac.index_wrapped(idx)];
        }
    }
}

/// Empirical correlation (autocorrelation value with across-sample error) at
/// lags beyond a parabolic distance `c_eps · ε`, for the finite-range check.
pub fn far_lag_correlations(
    samples: &[NoiseFieldSample],
    c_eps: f64,
) -> Result<Vec<(Vec<i64>, f64, f64)>, NumericsError> {
    if samples.len() < 2 {
        return Err(NumericsError::TooFewSamples(2));
    }
    let cfg = samples[0].field.cfg.clone();
    let eps = samples[0].meta.eps;
    let dist = c_eps * eps;
    // probe lags: pure-time, pure-space and mixed, just beyond the range
    let lt = ((dist * dist) / cfg.ht()).ceil() as i64 + 1;
    let lx = (dist / cfg.h).ceil() as i64 + 1;
    let mut lags: Vec<Vec<i64>> = Vec::new();
    let axes = 1 + cfg.d;
    let mut pure_t = vec![0i64; axes];
    pure_t[0] = lt.min(cfg.nt as i64 / 2);
    lags.push(pure_t);
    for a in 1..axes {
        let mut l = vec![0i64; axes];
        l[a] = lx.min(cfg.nx as i64 / 2);
        lags.push(l);
    }
    let mut mixed = vec![0i64; axes];
    mixed[0] = (lt / 2 + 1).min(cfg.nt as i64 / 2);
    mixed[1] = lx.min(cfg.nx as i64 / 2);
    lags.push(mixed);

    let acs: Vec<super::lattice::Field> =
        samples.iter().map(|s| s.field.autocorrelation()).collect();
    let mut out = Vec::new();
    for lag in lags {
        let vals: Vec<f64> = acs.iter().map(|ac| ac.data[ac.index_wrapped(&lag)]).collect();
        let (mean, stderr) = mean_stderr(&vals);
        out.push((lag, mean, stderr));
    }
    Ok(out)
}

pub fn mean_stderr(vals: &[f64]) -> (f64, f64) {
    let n = vals.len() as f64;
    let mean = vals.iter().sum::<f64>() / n;
    if vals.len() < 2 {
        return (mean, f64::INFINITY);
    }
    let var = vals.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::config::LatticeConfig;
    use crate::numerics::noise::sample_noise;

    fn samples_1d() -> Vec<NoiseFieldSample> {
        let cfg = LatticeConfig::new(8.0, 2.0, 1.0 / 8.0, 1).unwrap();
        (0..8).map(|s| sample_noise(&cfg, 0.25, 100 + s).unwrap()).collect()
    }

    #[test]
    fn variance_is_positive() {
        let samples = samples_1d();
        let est = empirical_cumulants(&samples, 2, &[vec![vec![0, 0], vec![0, 0]]]).unwrap();
        assert!(est[0].value > 0.0);
        assert!(est[0].stderr.is_finite());
    }

    #[test]
    fn third_cumulant_is_small() {
        let samples = samples_1d();
        let est = empirical_cumulants(
            &samples,
            3,
            &[vec![vec![0, 0], vec![0, 0], vec![0, 0]], vec![vec![0, 0], vec![1, 0], vec![0, 1]]],
        )
        .unwrap();
        for e in est {
            assert!(e.value.abs() < 4.0 * e.stderr, "kappa3 = {} +- {}", e.value, e.stderr);
        }
    }

    #[test]
    fn covariance_integral_near_one() {
        let samples = samples_1d();
        let (mean, _stderr) = covariance_integral(&samples).unwrap();
        assert!((mean - 1.0).abs() < 0.1, "integral = {}", mean);
    }

    #[test]
    fn far_lags_uncorrelated() {
        let samples = samples_1d();
        for (lag, value, stderr) in far_lag_correlations(&samples, 4.0).unwrap() {
            assert!(value.abs() < 4.0 * stderr, "lag {:?}: {} +- {}", lag, value, stderr);
        }
    }

    #[test]
    fn errors_on_degenerate_input() {
        let samples = samples_1d();
        assert!(empirical_cumulants(&samples[..1], 2, &[]).is_err());
        assert!(empirical_cumulants(&samples, 7, &[]).is_err());
        assert!(
            empirical_cumulants(&samples, 2, &[vec![vec![0, 0]]]).is_err(),
            "wrong offset count"
        );
    }
}
