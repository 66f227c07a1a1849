//! `renorm constants`: lattice estimates of `C_{k,l,π}` over an ε sweep,
//! with the log fit and the symbolic classification side by side.

use std::path::PathBuf;

use clap::Args;

use super::{emit, parse_eps_list, RunManifest};
use crate::graphs::{classify_divergence, Divergence};
use crate::numerics::config::{config_f64, parse_config};
use crate::numerics::{fit_log_divergence, ConstantEngine, RadialConfig};
use crate::wick::{enumerate_pairings, Pairing};

#[derive(Args)]
pub struct ConstantsArgs {
    /// Indices as `k,l`.
    #[arg(long)]
    pub kl: String,
    /// Pairing: `pairwise`, `all4`, or `idx:N` into the enumeration order.
    #[arg(long, default_value = "pairwise")]
    pub pairing: String,
    /// ε sweep, e.g. `2^-2..2^-6` or `0.25,0.125`.
    #[arg(long, default_value = "2^-2..2^-6")]
    pub eps: String,
    /// Text config file overriding grid parameters.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Largest admissible k+l.
    #[arg(long, default_value_t = 8)]
    pub max_kl: u32,
}

pub fn run(args: ConstantsArgs) -> Result<bool, String> {
    let (k, l) = parse_kl(&args.kl)?;
    if k + l > args.max_kl {
        return Err(format!("k+l = {} outside the configured range (max {})", k + l, args.max_kl));
    }
    if (k + l) % 2 != 0 {
        return Err("constants exist for k+l even (odd joint cumulants vanish)".to_string());
    }
    let pairing = parse_pairing(&args.pairing, k, l)?;
    if !pairing.all_blocks_even() {
        return Err(format!("pairing {} has odd blocks; its constant vanishes", pairing));
    }
    let epsilons = parse_eps_list(&args.eps)?;
    let rcfg = radial_config(args.config.as_deref())?;

    let manifest = RunManifest::new("constants")
        .with("kl", format!("{},{}", k, l))
        .with("pairing", pairing.to_string())
        .with("eps", &args.eps)
        .with("hr", rcfg.hr)
        .with("ht", rcfg.ht)
        .with("trunc_radius", rcfg.trunc_radius);

    let mut engine = ConstantEngine::new(rcfg);
    let mut rows = Vec::new();
    for &eps in &epsilons {
        let value = engine.estimate(&pairing, eps).map_err(|e| e.to_string())?;
        rows.push((eps, value));
    }

    let classification = classify_divergence(k, l, &pairing, 0, None)
        .map(|d| match d {
            Divergence::LogDivergent => "log-divergent".to_string(),
            Divergence::Finite { theta } => format!("finite (theta = {})", theta),
        })
        .unwrap_or_else(|e| format!("unclassified: {}", e));

    let mut csv = manifest.csv_header();
    csv.push_str(&format!("# classification: {}\n", classification));
    // the quadrature is deterministic, so the statistical error column is 0
    csv.push_str("eps,k,l,pairing_id,estimate,stderr\n");
    for (eps, v) in &rows {
        csv.push_str(&format!("{},{},{},{},{},0\n", eps, k, l, pairing, v));
    }
    if rows.len() >= 4 {
        let fit = fit_log_divergence(&rows).map_err(|e| e.to_string())?;
        csv.push_str(&format!(
            "# fit: slope = {:.6e}, intercept = {:.6e}, correlation = {:.4}\n",
            fit.slope, fit.intercept, fit.correlation
        ));
    }
    emit(args.out.as_deref(), &csv)?;
    Ok(true)
}

fn parse_kl(s: &str) -> Result<(u32, u32), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected k,l: {}", s))?;
    Ok((
        a.trim().parse().map_err(|_| format!("bad k: {}", a))?,
        b.trim().parse().map_err(|_| format!("bad l: {}", b))?,
    ))
}

fn parse_pairing(s: &str, k: u32, l: u32) -> Result<Pairing, String> {
    match s {
        "pairwise" => {
            if k != l {
                return Err("pairwise needs k = l".to_string());
            }
            Ok(Pairing::pairwise(k))
        }
        "all4" | "single" => Ok(Pairing::single(k, l)),
        other => {
            let idx: usize = other
                .strip_prefix("idx:")
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| format!("bad pairing: {}", other))?;
            enumerate_pairings(k, l)
                .into_iter()
                .nth(idx)
                .ok_or_else(|| format!("pairing index {} out of range", idx))
        }
    }
}

fn radial_config(path: Option<&std::path::Path>) -> Result<RadialConfig, String> {
    let mut cfg = RadialConfig::default();
    if let Some(p) = path {
        let text = std::fs::read_to_string(p).map_err(|e| e.to_string())?;
        let map = parse_config(&text).map_err(|e| e.to_string())?;
        cfg.hr = config_f64(&map, "radial.hr", cfg.hr).map_err(|e| e.to_string())?;
        cfg.ht = config_f64(&map, "radial.ht", cfg.ht).map_err(|e| e.to_string())?;
        cfg.extent_t =
            config_f64(&map, "radial.extent_t", cfg.extent_t).map_err(|e| e.to_string())?;
        cfg.extent_r =
            config_f64(&map, "radial.extent_r", cfg.extent_r).map_err(|e| e.to_string())?;
        cfg.trunc_radius =
            config_f64(&map, "radial.trunc_radius", cfg.trunc_radius).map_err(|e| e.to_string())?;
    }
    Ok(cfg)
}
