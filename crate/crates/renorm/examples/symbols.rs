//! Generate the regularity-structure symbol set from its production rules
//! and list the negative-homogeneity families.
//!
//! ```sh
//! cargo run --example symbols
//! ```

use renorm::exact::ExactValue;
use renorm::trees::{generate_symbols, Family};

fn main() {
    let cap = ExactValue::from_ratio(3, 2);
    for m in 1..=3 {
        let generated = generate_symbols(m, &cap).unwrap();
        println!("m = {}: {} symbols below the cap", m, generated.len());
    }

    let generated = generate_symbols(2, &cap).unwrap();
    println!("\nnegative-homogeneity symbols for m = 2:");
    for (sym, info) in generated.negative() {
        let family = match info.family {
            Some(Family::First { k, n }) => format!("first family (k={}, n={})", k, n),
            Some(Family::Second { k, l, delta_tau }) => {
                format!("second family (k={}, l={}, delta_tau={})", k, l, delta_tau)
            }
            None => "outside the closed-form families".to_string(),
        };
        println!("  {:<42} {:<22} {}", sym.to_string(), info.homogeneity.to_string(), family);
    }

    // the closed forms match the tree-level homogeneity rules exactly
    let fam = Family::Second { k: 2, l: 3, delta_tau: 1 };
    let sym = fam.symbol();
    println!("\n{} has homogeneity {} = {}", sym, sym.homogeneity(), fam.homogeneity());
}
