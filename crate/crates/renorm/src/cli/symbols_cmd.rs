//! `renorm symbols`: list the generated symbol set with homogeneities.

use std::path::PathBuf;

use clap::Args;
use serde::Serialize;
use serde_json::json;

use super::{emit, parse_rational, RunManifest};
use crate::exact::ExactValue;
use crate::trees::{generate_symbols, Family};

#[derive(Args)]
pub struct SymbolsArgs {
    /// Maximal nonlinearity index m (the equation carries powers up to
    /// 2m+1).
    #[arg(long)]
    pub m: u32,
    /// Homogeneity cap as a rational, default 3/2.
    #[arg(long, default_value = "3/2")]
    pub cap: String,
    /// Keep only symbols of negative homogeneity (the closed-form families).
    #[arg(long)]
    pub negative_only: bool,
    #[arg(long, value_parser = ["text", "json"], default_value = "text")]
    pub format: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Serialize)]
struct SymbolRow {
    symbol: String,
    homogeneity: String,
    in_u: bool,
    in_v: bool,
    family: Option<Family>,
}

pub fn run(args: SymbolsArgs) -> Result<bool, String> {
    let cap = ExactValue::from_rational(parse_rational(&args.cap)?);
    let generated = generate_symbols(args.m, &cap).map_err(|e| e.to_string())?;
    let manifest = RunManifest::new("symbols")
        .with("m", args.m)
        .with("cap", &args.cap)
        .with("negative_only", args.negative_only);

    let zero = ExactValue::zero();
    let rows: Vec<SymbolRow> = generated
        .entries
        .iter()
        .filter(|(_, info)| {
            !args.negative_only
                || info.homogeneity.compare(&zero) == std::cmp::Ordering::Less
        })
        .map(|(sym, info)| SymbolRow {
            symbol: sym.to_string(),
            homogeneity: info.homogeneity.to_string(),
            in_u: info.in_u,
            in_v: info.in_v,
            family: info.family,
        })
        .collect();

    let content = if args.format == "json" {
        serde_json::to_string_pretty(&json!({
            "manifest": manifest,
            "count": rows.len(),
            "symbols": rows,
        }))
        .unwrap()
    } else {
        let mut s = format!("# {} symbols (m = {}, cap = {})\n", rows.len(), args.m, args.cap);
        for r in &rows {
            let tag = match (r.in_u, r.in_v) {
                (true, true) => "UV",
                (true, false) => "U ",
                (false, true) => " V",
                (false, false) => "  ",
            };
            s.push_str(&format!("{}  {:<50} {}\n", tag, r.symbol, r.homogeneity));
        }
        s
    };
    emit(args.out.as_deref(), &content)?;
    Ok(true)
}
