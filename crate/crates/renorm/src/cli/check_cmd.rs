//! `renorm check`: expand a symbol (or a `(k, l)` pair) into chaos graphs,
//! allocate ε, run both checkers, and report verdicts with exact sides.

use std::path::PathBuf;

use clap::Args;
use serde::Serialize;
use serde_json::json;

use super::{emit, RunManifest};
use crate::graphs::{
    allocate_epsilon, check_assumption_bruteforce, check_assumption_reduced, classify_divergence,
    first_order_graph, graph_homogeneity, second_order_chaos_terms, zeroth_chaos_constant_graph,
    BumpMode, ChaosOneVariant, CheckOptions, CheckReport, Divergence, LabelledGraph,
};
use crate::trees::{classify_family, parse_symbol, Family};
use crate::wick::Pairing;

#[derive(Args)]
pub struct CheckArgs {
    /// Symbol in the canonical grammar, e.g. "E(Psi^5)" or "Psi^2*I(Psi^2)".
    #[arg(long, conflicts_with = "second_order")]
    pub symbol: Option<String>,
    /// Second-order indices `k l`.
    #[arg(long, num_args = 2, value_names = ["K", "L"])]
    pub second_order: Option<Vec<u32>>,
    /// Restrict to chaos components of this order.
    #[arg(long)]
    pub chaos: Option<u32>,
    /// Check the bare (un-mass-renormalised) constant graphs for the 0th
    /// chaos instead of skipping subtraction bookkeeping.
    #[arg(long)]
    pub no_mass_renorm: bool,
    /// Barred-arrow degree bump: auto applies 3+δ exactly on the marginal
    /// full-Wick family.
    #[arg(long, value_parser = ["auto", "on", "off"], default_value = "auto")]
    pub bump: String,
    #[arg(long, value_parser = ["json", "dot"], default_value = "json")]
    pub format: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Serialize)]
struct GraphVerdict {
    graph_id: String,
    provenance: serde_json::Value,
    multiplicity: Option<u64>,
    chaos_order: Option<u32>,
    alpha: String,
    brute: CheckReport,
    reduced: Option<CheckReport>,
    checkers_agree: Option<bool>,
    classification: Option<Divergence>,
}

fn bump_mode(s: &str) -> BumpMode {
    match s {
        "on" => BumpMode::On,
        "off" => BumpMode::Off,
        _ => BumpMode::Auto,
    }
}

pub fn run(args: CheckArgs) -> Result<bool, String> {
    let options = CheckOptions { bump: bump_mode(&args.bump), ..Default::default() };
    let mut manifest = RunManifest::new("check")
        .with("bump", &args.bump)
        .with("no_mass_renorm", args.no_mass_renorm);

    let family = if let Some(sym_text) = &args.symbol {
        let sym = parse_symbol(sym_text).map_err(|e| e.to_string())?;
        manifest = manifest.with("symbol", sym_text);
        classify_family(&sym).ok_or_else(|| {
            format!("unknown symbol: {} is not in a recognized family", sym)
        })?
    } else if let Some(kl) = &args.second_order {
        manifest = manifest.with("second_order", format!("{},{}", kl[0], kl[1]));
        Family::Second { k: kl[0], l: kl[1], delta_tau: ((kl[0] + kl[1]) % 2) as u8 }
    } else {
        return Err("need --symbol or --second-order".to_string());
    };

    let mut verdicts: Vec<GraphVerdict> = Vec::new();
    match family {
        Family::First { k, n } => {
            let g = first_order_graph(k, n).map_err(|e| e.to_string())?;
            let g = allocate_epsilon(&g).map_err(|e| e.to_string())?;
            verdicts.push(verdict(format!("first_order_{}_{}", k, n), &g, None, None, &options)?);
        }
        Family::Second { k, l, .. } => {
            let terms = second_order_chaos_terms(k, l).map_err(|e| e.to_string())?;
            for term in terms {
                if let Some(c) = args.chaos {
                    if term.chaos_order() != c {
                        continue;
                    }
                }
                if args.no_mass_renorm && term.chaos_order() == 0 {
                    // the bare constant graph, exactly as the subtraction sees it
                    let pairing =
                        Pairing::new(term.pairing.blocks().to_vec());
                    let g = zeroth_chaos_constant_graph(k, l, &pairing)
                        .map_err(|e| e.to_string())?;
                    let g = allocate_epsilon(&g).map_err(|e| e.to_string())?;
                    let class = classify_divergence(k, l, &pairing, 0, None).ok();
                    verdicts.push(verdict(
                        format!("chaos0_{}", pairing),
                        &g,
                        Some(term.multiplicity),
                        class,
                        &options,
                    )?);
                    continue;
                }
                let g = allocate_epsilon(&term.graph).map_err(|e| e.to_string())?;
                let class = classification_for(&term, k, l);
                verdicts.push(verdict(
                    format!("chaos{}_p{}q{}n{}_{}", term.chaos_order(), term.p, term.q, term.n, term.pairing),
                    &g,
                    Some(term.multiplicity),
                    class,
                    &options,
                )?);
            }
        }
    }

    if args.format == "dot" {
        // DOT export of the expanded graphs only
        let mut dot = String::new();
        match family {
            Family::First { k, n } => {
                let g = allocate_epsilon(&first_order_graph(k, n).map_err(|e| e.to_string())?)
                    .map_err(|e| e.to_string())?;
                dot.push_str(&g.to_dot());
            }
            Family::Second { k, l, .. } => {
                for term in second_order_chaos_terms(k, l).map_err(|e| e.to_string())? {
                    dot.push_str(&term.graph.to_dot());
                }
            }
        }
        emit(args.out.as_deref(), &dot)?;
        return Ok(verdicts.iter().all(|v| v.brute.pass));
    }

    let overall_pass = verdicts.iter().all(|v| v.brute.pass);
    let content = serde_json::to_string_pretty(&json!({
        "manifest": manifest,
        "graphs": verdicts,
        "overall_pass": overall_pass,
    }))
    .unwrap();
    emit(args.out.as_deref(), &content)?;
    Ok(overall_pass)
}

fn classification_for(term: &crate::graphs::ChaosTerm, k: u32, l: u32) -> Option<Divergence> {
    match term.chaos_order() {
        0 => classify_divergence(k, l, &term.pairing, 0, None).ok(),
        1 => {
            let variant =
                if term.q == 1 { ChaosOneVariant::NoiseOuter } else { ChaosOneVariant::NoiseInner };
            classify_divergence(k, l, &term.pairing, 1, Some(variant)).ok()
        }
        _ => None,
    }
}

fn verdict(
    id: String,
    g: &LabelledGraph,
    multiplicity: Option<u64>,
    classification: Option<Divergence>,
    options: &CheckOptions,
) -> Result<GraphVerdict, String> {
    let brute = check_assumption_bruteforce(g, options).map_err(|e| e.to_string())?;
    let reduced = check_assumption_reduced(g, options).ok();
    let agree = reduced.as_ref().map(|r| r.pass == brute.pass);
    let chaos_order = match &g.provenance {
        crate::graphs::Provenance::SecondOrder { p, q, .. } => Some(p + q),
        _ => None,
    };
    Ok(GraphVerdict {
        graph_id: id,
        provenance: serde_json::to_value(&g.provenance).unwrap(),
        multiplicity,
        chaos_order,
        alpha: graph_homogeneity(g).to_string(),
        brute,
        reduced,
        checkers_agree: agree,
        classification,
    })
}
