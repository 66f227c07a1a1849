//! Sample the smeared-Poisson noise and verify the admissibility contract:
//! odd cumulants vanish, the covariance integrates to one, correlations die
//! beyond a few ε, and the stationary solution's second moment grows as the
//! scale shrinks.
//!
//! ```sh
//! cargo run --release --example noise_cumulants
//! ```

use renorm::numerics::{
    covariance_integral, empirical_cumulants, estimate_psi_moments, far_lag_correlations,
    sample_noise, LatticeConfig,
};

fn main() {
    let cfg = LatticeConfig::new(2.0, 64.0 * (2.0 / 24.0) * (2.0 / 24.0), 2.0 / 24.0, 3).unwrap();
    let eps = 0.25;
    println!("lattice {}x{}^3, eps = {}", cfg.nt, cfg.nx, eps);

    let samples: Vec<_> = (0..6).map(|s| sample_noise(&cfg, eps, 1000 + s).unwrap()).collect();
    println!("points per sample: {}", samples[0].meta.points);

    let zero = vec![0i64; 4];
    let mut dt = zero.clone();
    dt[0] = 2;
    let mut dx = zero.clone();
    dx[1] = 1;
    let k2 = empirical_cumulants(&samples, 2, &[vec![zero.clone(), zero.clone()]]).unwrap();
    println!("\nkappa_2(0,0) = {:.4} +- {:.4}", k2[0].value, k2[0].stderr);
    let k3 = empirical_cumulants(
        &samples,
        3,
        &[
            vec![zero.clone(), zero.clone(), zero.clone()],
            vec![zero.clone(), dt.clone(), dx.clone()],
        ],
    )
    .unwrap();
    for e in &k3 {
        println!(
            "kappa_3{:?} = {:+.5} +- {:.5}  ({} sigma)",
            e.lags,
            e.value,
            e.stderr,
            (e.value / e.stderr).abs().round()
        );
    }

    let (integral, err) = covariance_integral(&samples).unwrap();
    println!("\ncovariance integral = {:.4} +- {:.4} (target 1)", integral, err);

    for (lag, v, s) in far_lag_correlations(&samples, 4.0).unwrap() {
        println!("far lag {:?}: {:+.2e} +- {:.2e}", lag, v, s);
    }

    // the second moment of the stationary solution diverges as eps -> 0
    let coarse = estimate_psi_moments(&samples).unwrap();
    let fine_samples: Vec<_> =
        (0..6).map(|s| sample_noise(&cfg, eps / 2.0, 2000 + s).unwrap()).collect();
    let fine = estimate_psi_moments(&fine_samples).unwrap();
    println!(
        "\nPsi second moment: m2(eps = {}) = {:.4}, m2(eps = {}) = {:.4}",
        eps,
        coarse.moment(2).unwrap(),
        eps / 2.0,
        fine.moment(2).unwrap()
    );
}
