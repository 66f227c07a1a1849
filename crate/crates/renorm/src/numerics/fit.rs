//! Least-squares fit of constant estimates against `log(1/ε)`.

use serde::Serialize;

use crate::error::NumericsError;

#[derive(Clone, Debug, Serialize)]
pub struct LogFit {
    pub slope: f64,
    pub intercept: f64,
    /// Pearson correlation of value vs `log(1/ε)`.
    pub correlation: f64,
}

/// Fit `value ≈ slope · log(1/ε) + intercept` over at least four points with
/// distinct ε.
pub fn fit_log_divergence(pairs: &[(f64, f64)]) -> Result<LogFit, NumericsError> {
    if pairs.len() < 4 {
        return Err(NumericsError::TooFewPoints(4));
    }
    let mut xs: Vec<f64> = pairs.iter().map(|(e, _)| (1.0 / e).ln()).collect();
    let ys: Vec<f64> = pairs.iter().map(|(_, v)| *v).collect();
    let mut sorted = xs.clone();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    if sorted.windows(2).any(|w| (w[0] - w[1]).abs() < 1e-12) {
        return Err(NumericsError::DegenerateFit);
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    for x in xs.iter_mut() {
        *x -= mx;
    }
    let sxx: f64 = xs.iter().map(|x| x * x).sum();
    let syy: f64 = ys.iter().map(|y| (y - my) * (y - my)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| x * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let correlation = if syy == 0.0 { 0.0 } else { sxy / (sxx * syy).sqrt() };
    Ok(LogFit { slope, intercept, correlation })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_linear_data() {
        // value = 2·log(1/ε) + 1
        let pairs: Vec<(f64, f64)> = (2..=6)
            .map(|j| {
                let eps = 0.5f64.powi(j);
                (eps, 2.0 * (1.0 / eps).ln() + 1.0)
            })
            .collect();
        let fit = fit_log_divergence(&pairs).unwrap();
        assert!((fit.slope - 2.0).abs() < 1e-12);
        assert!((fit.intercept - 1.0).abs() < 1e-12);
        assert!((fit.correlation - 1.0).abs() < 1e-12);
    }

    #[test]
    fn input_validation() {
        assert!(matches!(
            fit_log_divergence(&[(0.5, 1.0), (0.25, 2.0), (0.125, 3.0)]),
            Err(NumericsError::TooFewPoints(4))
        ));
        assert!(matches!(
            fit_log_divergence(&[(0.5, 1.0), (0.5, 2.0), (0.125, 3.0), (0.0625, 4.0)]),
            Err(NumericsError::DegenerateFit)
        ));
    }
}
