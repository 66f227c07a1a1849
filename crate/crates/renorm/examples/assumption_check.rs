//! Verify the subset power-counting conditions: first-order graphs pass
//! after ε-allocation, the bare pairwise (2,2) constant graph fails with the
//! famous equal-sides witness, and the exhaustive and reduced checkers agree.
//!
//! ```sh
//! cargo run --example assumption_check
//! ```

use renorm::graphs::{
    allocate_epsilon, check_assumption_bruteforce, check_assumption_reduced, first_order_graph,
    second_order_chaos_terms, zeroth_chaos_constant_graph, CheckOptions,
};
use renorm::wick::Pairing;

fn main() {
    let opts = CheckOptions::default();

    let g = allocate_epsilon(&first_order_graph(2, 0).unwrap()).unwrap();
    let report = check_assumption_bruteforce(&g, &opts).unwrap();
    println!("allocated E(Psi^5): pass = {}", report.pass);

    // without allocation the five degree-3 legs sit exactly at criticality
    let raw = first_order_graph(2, 0).unwrap();
    let report = check_assumption_bruteforce(&raw, &opts).unwrap();
    println!("unallocated E(Psi^5): pass = {} ({} violations)", report.pass, report.violations.len());

    // the un-mass-renormalised pairwise (2,2) constant graph: both sides 25
    let g = allocate_epsilon(&zeroth_chaos_constant_graph(2, 2, &Pairing::pairwise(2)).unwrap())
        .unwrap();
    let report = check_assumption_bruteforce(&g, &opts).unwrap();
    let witness = report
        .violations
        .iter()
        .find(|v| v.subset.len() == g.vertex_count() - 1)
        .unwrap();
    println!(
        "bare C_(2,2),pairwise graph: condition {} fails at H_0 with {} vs {}",
        witness.condition, witness.lhs, witness.rhs
    );

    // both checkers give the same verdict on every chaos component
    let mut agree = 0;
    for (k, l) in [(2u32, 2u32), (2, 3), (3, 3), (4, 4)] {
        for term in second_order_chaos_terms(k, l).unwrap() {
            let g = allocate_epsilon(&term.graph).unwrap();
            let brute = check_assumption_bruteforce(&g, &opts).unwrap();
            let reduced = check_assumption_reduced(&g, &opts).unwrap();
            assert_eq!(brute.pass, reduced.pass);
            agree += 1;
        }
    }
    println!("brute-force and reduced checkers agree on {} graphs", agree);
}
