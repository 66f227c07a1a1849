//! Batch command-line front end. Every command prints its report to stdout
//! (and optionally to a file); exit code 0 means all checks passed, 1 means
//! violations or a failed verdict, 2 is a usage error.

mod check_cmd;
mod constants_cmd;
mod manifest;
mod noise_cmd;
mod potential_cmd;
mod symbols_cmd;

use clap::{Parser, Subcommand};

pub use manifest::RunManifest;

#[derive(Parser)]
#[command(
    name = "renorm",
    version,
    about = "Power counting and renormalisation combinatorics for singular SPDEs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate the symbol set with homogeneities.
    Symbols(symbols_cmd::SymbolsArgs),
    /// Expand a symbol into chaos graphs and verify the moment-bound
    /// conditions.
    Check(check_cmd::CheckArgs),
    /// Estimate renormalisation constants on the lattice and fit the log
    /// divergence.
    Constants(constants_cmd::ConstantsArgs),
    /// Pitchfork check, counterterm and θ schedule for a potential family.
    Potential(potential_cmd::PotentialArgs),
    /// Sample the noise and report empirical cumulants and contract checks.
    Noise(noise_cmd::NoiseArgs),
}

/// Entry point for the binary; returns the process exit code.
pub fn run() -> i32 {
    init_thread_pool();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // clap handles --help/--version with code 0 via its own classify
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let result = match cli.command {
        Command::Symbols(args) => symbols_cmd::run(args),
        Command::Check(args) => check_cmd::run(args),
        Command::Constants(args) => constants_cmd::run(args),
        Command::Potential(args) => potential_cmd::run(args),
        Command::Noise(args) => noise_cmd::run(args),
    };
    match result {
        Ok(pass) => {
            if pass {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {}", e);
            2
        }
    }
}

fn init_thread_pool() {
    if let Ok(v) = std::env::var("RENORM_THREADS") {
        if let Ok(n) = v.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

/// Shared output plumbing: print to stdout and optionally write to a file.
pub(crate) fn emit(out: Option<&std::path::Path>, content: &str) -> Result<(), String> {
    println!("{}", content);
    if let Some(path) = out {
        std::fs::write(path, content).map_err(|e| format!("writing {}: {}", path.display(), e))?;
    }
    Ok(())
}

pub(crate) fn parse_rational(s: &str) -> Result<num::rational::BigRational, String> {
    use num::bigint::BigInt;
    use std::str::FromStr;
    let s = s.trim();
    let (num_s, den_s) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n = BigInt::from_str(num_s).map_err(|_| format!("bad rational: {}", s))?;
    let d = BigInt::from_str(den_s).map_err(|_| format!("bad rational: {}", s))?;
    if d == BigInt::from(0) {
        return Err(format!("zero denominator: {}", s));
    }
    Ok(num::rational::BigRational::new(n, d))
}

/// `2^-2..2^-6` or a comma list of floats.
pub(crate) fn parse_eps_list(s: &str) -> Result<Vec<f64>, String> {
    if let Some((a, b)) = s.split_once("..") {
        let pa = parse_pow2(a)?;
        let pb = parse_pow2(b)?;
        let (lo, hi) = (pa.min(pb), pa.max(pb));
        return Ok((lo..=hi).map(|j| 2f64.powi(j)).rev().collect());
    }
    s.split(',')
        .map(|t| {
            let t = t.trim();
            parse_pow2(t).map(|j| 2f64.powi(j)).or_else(|_| {
                t.parse::<f64>().map_err(|_| format!("bad epsilon: {}", t))
            })
        })
        .collect()
}

fn parse_pow2(s: &str) -> Result<i32, String> {
    let s = s.trim();
    let rest = s.strip_prefix("2^").ok_or_else(|| format!("not a power of two: {}", s))?;
    rest.parse::<i32>().map_err(|_| format!("bad exponent: {}", s))
}
