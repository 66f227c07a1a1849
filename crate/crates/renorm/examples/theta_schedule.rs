//! The counterterm and the θ schedule: with the pitchfork conditions in
//! place, choosing θ(ε) = (9 â₁² C_log / â₀') ε |log ε| cancels the log
//! divergence of λ₀ = ε⁻¹ â₀(θ) - C_ε.
//!
//! ```sh
//! cargo run --example theta_schedule
//! ```

use std::collections::BTreeMap;

use renorm::exact::{big, ratio, rational_to_f64};
use renorm::wick::{mass_counterterm, theta_log_coefficient, theta_schedule, LogLinear};

fn main() {
    // pitchfork data: a1 > 0, a0 = 0, a0' < 0
    let a1 = ratio(1, 1);
    let a0_prime = ratio(-2, 1);
    let c_log = ratio(3, 4);
    let c_finite = ratio(1, 10);

    let mut constants: BTreeMap<(u32, u32), LogLinear> = BTreeMap::new();
    constants.insert((1, 3), LogLinear::constant(ratio(1, 7)));
    constants.insert((2, 2), LogLinear::new(c_log.clone(), c_finite));
    let c_eps = mass_counterterm(&[a1.clone()], &constants).unwrap();
    println!("C_eps = {} * log(1/eps) + {}", c_eps.log_coeff, c_eps.constant);

    let coeff = theta_log_coefficient(&a1, &a0_prime, &c_log).unwrap();
    println!("theta(eps) = ({}) * eps |log eps| + O(eps)", coeff);

    let lambda0_log = a0_prime.clone() * coeff - c_eps.log_coeff.clone();
    println!("lambda_0 log coefficient after cancellation: {}", lambda0_log);

    println!("\n   eps       theta(eps)    lambda_0(eps)");
    let a0p = rational_to_f64(&a0_prime);
    for j in 2..=6 {
        let eps = 0.5f64.powi(j);
        let theta =
            theta_schedule(rational_to_f64(&a1), a0p, rational_to_f64(&c_log), eps).unwrap();
        let lambda0 = a0p * theta / eps - c_eps.eval(eps);
        println!("  2^-{}   {:+.6}    {:+.6}", j, theta, lambda0);
    }
    println!("\nwithout the schedule, lambda_0 would drift by {} * log 2 per halving", {
        let drift = big(9) * &a1 * &a1 * &c_log;
        drift.to_string()
    });
}
