//! Cumulant/Wick calculus: moments to cumulants and back, Wick polynomials
//! for a non-Gaussian law, potential averaging, and the pitchfork check.
//!
//! ```sh
//! cargo run --example wick_calculus
//! ```

use renorm::exact::{big, ratio};
use renorm::wick::{
    averaged_potential, check_pitchfork, cumulants_to_moments, moments_to_cumulants,
    wick_polynomial, CumulantTable, MomentSequence, PotentialFamily,
};

fn main() {
    // a symmetric non-Gaussian law via its cumulants: kappa_2 = 1, kappa_4 = 3/2
    let table = CumulantTable::univariate(&[big(0), big(1), big(0), ratio(3, 2)]);
    let moments = cumulants_to_moments(&table);
    println!("moments of the law:");
    for n in 1..=4usize {
        println!("  m_{} = {}", n, moments[&vec![0u32; n]]);
    }
    let back = moments_to_cumulants(&moments).unwrap();
    assert_eq!(back.get(&vec![0, 0, 0, 0]), ratio(3, 2));
    println!("roundtrip recovers kappa_4 = {}", back.get(&vec![0, 0, 0, 0]));

    let mu = MomentSequence::new_symmetric(
        (0..=8usize).map(|n| moments.get(&vec![0u32; n]).cloned().unwrap_or_else(|| big(0))).collect(),
    )
    .unwrap();
    println!("\nWick powers of the law (Hermite polynomials deformed by kappa_4):");
    for n in 0..=4usize {
        println!("  W_{} = {}", n, wick_polynomial(n, &mu).unwrap());
    }

    // averaging against the law inverts the Wick map: <W_n> = x^n
    let w4 = wick_polynomial(4, &mu).unwrap();
    println!("\n<W_4> = {}", averaged_potential(&w4, &mu).unwrap());

    // pitchfork verdict for V_theta = W_4/4 - (theta/2) x^2
    let mut coeffs = vec![(big(0), big(0)); 5];
    for i in 0..=4 {
        coeffs[i].0 = w4.coeff(i) * ratio(1, 4);
    }
    coeffs[2].1 = ratio(-1, 2);
    let family = PotentialFamily { coeffs };
    let report = check_pitchfork(&family, &mu).unwrap();
    println!(
        "\npitchfork: a_hat = {:?}, a_hat_0' = {}, verdict = {}",
        report.a_hat.iter().map(|a| a.to_string()).collect::<Vec<_>>(),
        report.a_hat0_prime,
        report.verdict
    );
}
