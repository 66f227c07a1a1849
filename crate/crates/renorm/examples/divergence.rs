//! Classify the renormalisation constants by running the collapse → merge →
//! absorb rewrite chain symbolically.
//!
//! ```sh
//! cargo run --example divergence
//! ```

use renorm::graphs::{classify_divergence, ChaosOneVariant, Divergence};
use renorm::wick::enumerate_pairings;

fn main() {
    println!("zeroth-chaos constants C_(k,l,pi):");
    for (k, l) in [(2u32, 2u32), (1, 3), (3, 3), (2, 4), (4, 4)] {
        for pi in enumerate_pairings(k, l) {
            if !pi.all_blocks_even() {
                continue;
            }
            let d = classify_divergence(k, l, &pi, 0, None).unwrap();
            println!("  ({},{}) {:<24} {}", k, l, pi.to_string(), describe(&d));
        }
    }

    println!("\nfirst-chaos components (noise on the inner side):");
    for (k, l) in [(2u32, 3u32), (2, 5), (4, 3)] {
        for pi in enumerate_pairings(k, l - 1) {
            if !pi.all_blocks_even() {
                continue;
            }
            let d = classify_divergence(k, l, &pi, 1, Some(ChaosOneVariant::NoiseInner)).unwrap();
            println!("  ({},{}) {:<24} {}", k, l, pi.to_string(), describe(&d));
        }
    }
}

fn describe(d: &Divergence) -> String {
    match d {
        Divergence::LogDivergent => "log-divergent".to_string(),
        Divergence::Finite { theta } => format!("finite, residual eps^({})", theta),
    }
}
