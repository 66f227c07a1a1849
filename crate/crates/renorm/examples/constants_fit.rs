//! Estimate the pairwise and all-four (2,2) renormalisation constants on a
//! coarse grid and fit the logarithmic divergence. The acceptance suite runs
//! the same sweep on the production grid; this example trades accuracy for a
//! few seconds of runtime.
//!
//! ```sh
//! cargo run --release --example constants_fit
//! ```

use renorm::numerics::{fit_log_divergence, ConstantEngine, RadialConfig};
use renorm::wick::Pairing;

fn main() {
    let cfg = RadialConfig {
        hr: 1.0 / 64.0,
        ht: 1.0 / 2048.0,
        extent_t: 2.25,
        extent_r: 1.8,
        trunc_radius: 1.0,
        max_cells: 1 << 26,
    };
    let mut engine = ConstantEngine::new(cfg);

    println!("pairwise C_(2,2) (log-divergent):");
    let mut pairs = Vec::new();
    for j in 2..=5 {
        let eps = 0.5f64.powi(j);
        let c = engine.estimate(&Pairing::pairwise(2), eps).unwrap();
        println!("  eps = 2^-{}  C = {:.6e}", j, c);
        pairs.push((eps, c));
    }
    let fit = fit_log_divergence(&pairs).unwrap();
    println!(
        "  fit: C = {:.3e} * log(1/eps) + {:.3e}, correlation {:.4}",
        fit.slope, fit.intercept, fit.correlation
    );

    println!("\nall-four C_(2,2) (finite limit):");
    let mut prev: Option<f64> = None;
    for j in 1..=4 {
        let eps = 0.5f64.powi(j);
        let c = engine.estimate(&Pairing::single(2, 2), eps).unwrap();
        match prev {
            Some(p) => println!("  eps = 2^-{}  C = {:.6e}  |diff| = {:.2e}", j, c, (c - p).abs()),
            None => println!("  eps = 2^-{}  C = {:.6e}", j, c),
        }
        prev = Some(c);
    }
}
