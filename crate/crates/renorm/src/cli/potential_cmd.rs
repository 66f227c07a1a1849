//! `renorm potential`: pitchfork verdict, counterterm, θ schedule and the
//! boundedness of `λ₀ = ε⁻¹ â₀(θ) - C_ε` under the schedule.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::Args;
use num::rational::BigRational;
use num::Zero;
use serde::Deserialize;
use serde_json::json;

use super::{emit, parse_eps_list, parse_rational, RunManifest};
use crate::exact::rational_to_f64;
use crate::wick::{
    check_pitchfork, mass_counterterm, theta_log_coefficient, LogLinear, MomentSequence,
    PotentialFamily,
};

#[derive(Args)]
pub struct PotentialArgs {
    /// JSON file: {"coeffs": [[value, dtheta], ...]} for x^0, x^1, ...
    #[arg(long)]
    pub v_file: PathBuf,
    /// JSON file: {"moments": ["1", "0", "2/3", ...]}; symmetric law.
    #[arg(long, conflicts_with = "mu_from_noise")]
    pub mu_file: Option<PathBuf>,
    /// Estimate μ from the stationary solution of sampled noise at this ε
    /// instead of reading it from a file (moments are symmetrized and
    /// rationalized).
    #[arg(long, value_name = "EPS")]
    pub mu_from_noise: Option<f64>,
    /// JSON file: {"constants": {"k,l": [log_coeff, finite], ...}}. Missing
    /// entries default to zero except C_{2,2}, which gets --c-log/--c-finite.
    #[arg(long)]
    pub constants_file: Option<PathBuf>,
    /// Log coefficient of C_{2,2} when no constants file is given.
    #[arg(long, default_value = "1")]
    pub c_log: String,
    /// Finite part of C_{2,2} when no constants file is given.
    #[arg(long, default_value = "0")]
    pub c_finite: String,
    /// ε table for the schedule.
    #[arg(long, default_value = "2^-2..2^-6")]
    pub eps: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Deserialize)]
struct VFile {
    coeffs: Vec<[String; 2]>,
}

#[derive(Deserialize)]
struct MuFile {
    moments: Vec<String>,
}

#[derive(Deserialize)]
struct ConstantsFile {
    constants: BTreeMap<String, [String; 2]>,
}

pub fn run(args: PotentialArgs) -> Result<bool, String> {
    let v: VFile = read_json(&args.v_file)?;
    let family = PotentialFamily {
        coeffs: v
            .coeffs
            .iter()
            .map(|[a, b]| Ok((parse_rational(a)?, parse_rational(b)?)))
            .collect::<Result<_, String>>()?,
    };
    let moments: Vec<BigRational> = if let Some(path) = &args.mu_file {
        let mu: MuFile = read_json(path)?;
        mu.moments.iter().map(|m| parse_rational(m)).collect::<Result<_, _>>()?
    } else if let Some(eps) = args.mu_from_noise {
        empirical_mu_moments(eps, family.coeffs.len().saturating_sub(1))?
    } else {
        return Err("need --mu-file or --mu-from-noise".to_string());
    };
    let mu = MomentSequence::new_symmetric(moments).map_err(|e| e.to_string())?;

    let report = check_pitchfork(&family, &mu).map_err(|e| e.to_string())?;
    let m = report.a_hat.len().saturating_sub(1).max(1);

    // constants: C_{k,l} as a + b·log(1/ε)
    let mut constants: BTreeMap<(u32, u32), LogLinear> = BTreeMap::new();
    for k in 1..=m as u32 {
        for l in 1..=m as u32 {
            constants.insert((2 * k - 1, 2 * l + 1), LogLinear::zero());
            constants.insert((2 * k, 2 * l), LogLinear::zero());
        }
    }
    if let Some(path) = &args.constants_file {
        let file: ConstantsFile = read_json(path)?;
        for (key, [log_c, fin]) in &file.constants {
            let (a, b) = key
                .split_once(',')
                .ok_or_else(|| format!("bad constant key: {}", key))?;
            let k: u32 = a.trim().parse().map_err(|_| format!("bad constant key: {}", key))?;
            let l: u32 = b.trim().parse().map_err(|_| format!("bad constant key: {}", key))?;
            constants
                .insert((k, l), LogLinear::new(parse_rational(log_c)?, parse_rational(fin)?));
        }
    } else {
        constants.insert(
            (2, 2),
            LogLinear::new(parse_rational(&args.c_log)?, parse_rational(&args.c_finite)?),
        );
    }
    let c22_log = constants.get(&(2, 2)).map(|c| c.log_coeff.clone()).unwrap_or_default();

    // λ_j = â_j(0) for j >= 1
    let lambdas: Vec<BigRational> = report.a_hat[1..].to_vec();
    let c_eps = mass_counterterm(&lambdas, &constants).map_err(|e| e.to_string())?;
    let theta_coeff = theta_log_coefficient(&report.a_hat[1], &report.a_hat0_prime, &c22_log)
        .map_err(|e| e.to_string())?;

    // λ₀(ε) = ε⁻¹ â₀(θ(ε)) - C_ε with â₀(θ) = â₀'·θ: the log coefficients
    // cancel exactly when the schedule is θ = (9 â₁² C_log / â₀') ε |log ε|
    let lambda0_log_coeff =
        report.a_hat0_prime.clone() * theta_coeff.clone() - c_eps.log_coeff.clone();

    let epsilons = parse_eps_list(&args.eps)?;
    let a0p = rational_to_f64(&report.a_hat0_prime);
    let tc = rational_to_f64(&theta_coeff);
    let mut schedule = Vec::new();
    let mut lambda0_values: Vec<f64> = Vec::new();
    for &eps in &epsilons {
        let theta = tc * eps * eps.ln().abs();
        let lambda0 = a0p * theta / eps - c_eps.eval(eps);
        schedule.push(json!({
            "eps": eps,
            "theta": theta,
            "lambda0": lambda0,
        }));
        lambda0_values.push(lambda0);
    }
    let increments: Vec<f64> =
        lambda0_values.windows(2).map(|w| (w[1] - w[0]).abs()).collect();
    let max_increment = increments.iter().cloned().fold(0.0, f64::max);
    let bounded = lambda0_log_coeff.is_zero();

    let manifest = RunManifest::new("potential")
        .with("v_file", args.v_file.display())
        .with(
            "mu_source",
            args.mu_file
                .as_ref()
                .map(|p| p.display().to_string())
                .unwrap_or_else(|| format!("noise eps={:?}", args.mu_from_noise)),
        )
        .with("eps", &args.eps);
    let content = serde_json::to_string_pretty(&json!({
        "manifest": manifest,
        "a_hat": report.a_hat.iter().map(|a| a.to_string()).collect::<Vec<_>>(),
        "a_hat0_prime": report.a_hat0_prime.to_string(),
        "pitchfork_verdict": report.verdict,
        "a_hat3_fourth_derivative": (crate::exact::big(6) * &report.a_hat[1]).to_string(),
        "lambda": lambdas.iter().map(|a| a.to_string()).collect::<Vec<_>>(),
        "c_eps": {
            "log_coeff": c_eps.log_coeff.to_string(),
            "constant": c_eps.constant.to_string(),
        },
        "theta_log_coefficient": theta_coeff.to_string(),
        "lambda0_log_coefficient": lambda0_log_coeff.to_string(),
        "log_divergence_cancels": bounded,
        "schedule": schedule,
        "lambda0_increments": increments,
        "lambda0_max_increment": max_increment,
    }))
    .unwrap();
    emit(args.out.as_deref(), &content)?;
    Ok(report.verdict && bounded)
}

/// Pool the stationary-solution moments from sampled noise, symmetrize and
/// rationalize them (denominator 10^12) so the exact pitchfork machinery can
/// run on empirical input.
fn empirical_mu_moments(eps: f64, order: usize) -> Result<Vec<BigRational>, String> {
    use crate::numerics::{estimate_psi_moments, sample_noise, LatticeConfig};
    let h = 2.0 / 24.0;
    let cfg = LatticeConfig::new(2.0, 48.0 * h * h, h, 3).map_err(|e| e.to_string())?;
    let samples: Vec<_> = (0..4)
        .map(|s| sample_noise(&cfg, eps, 500 + s).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    let mu = estimate_psi_moments(&samples).map_err(|e| e.to_string())?;
    let den: i64 = 1_000_000_000_000;
    Ok((0..=order.max(2))
        .map(|n| {
            if n == 0 {
                crate::exact::big(1)
            } else if n % 2 == 1 {
                // the law is symmetric by construction; drop sampling noise
                crate::exact::big(0)
            } else {
                let m = mu.moment(n).unwrap_or(0.0);
                crate::exact::ratio((m * den as f64).round() as i64, den)
            }
        })
        .collect())
}

fn read_json<T: serde::de::DeserializeOwned>(path: &std::path::Path) -> Result<T, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("reading {}: {}", path.display(), e))?;
    serde_json::from_str(&text).map_err(|e| format!("parsing {}: {}", path.display(), e))
}
