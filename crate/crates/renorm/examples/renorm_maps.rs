//! The two renormalisation maps acting on symbols: Wick renormalisation
//! substitutes Wick polynomials for plain powers, mass renormalisation
//! subtracts the constants through the generators.
//!
//! ```sh
//! cargo run --example renorm_maps
//! ```

use std::collections::BTreeMap;

use renorm::exact::{big, ratio};
use renorm::trees::{apply_mass_renorm, apply_wick_renorm, parse_symbol};
use renorm::wick::MomentSequence;

fn main() {
    let mu =
        MomentSequence::new(vec![big(1), big(0), ratio(2, 5), big(0), ratio(13, 25)]).unwrap();

    for text in ["Psi^2", "Psi^2*I(Psi^2)", "Xi", "E(Psi^4)"] {
        let tau = parse_symbol(text).unwrap();
        let image = apply_wick_renorm(&tau, &mu).unwrap();
        println!("M_Wick {} = {}", tau, image);
    }

    let mut constants = BTreeMap::new();
    constants.insert((2, 2), ratio(1, 2)); // C_{2,2}
    constants.insert((1, 3), ratio(1, 5)); // C_{1,3}
    println!();
    for text in ["Psi^2*I(Psi^2)", "Psi^2*I(Psi^3)", "Psi*I(Psi^3)", "Xi"] {
        let tau = parse_symbol(text).unwrap();
        let image = apply_mass_renorm(&tau, &constants).unwrap();
        println!("M_0 {} = {}", tau, image);
    }
}
