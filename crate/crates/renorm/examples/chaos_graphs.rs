//! Expand a second-order symbol into its chaos components and export one of
//! the graphs as DOT.
//!
//! ```sh
//! cargo run --example chaos_graphs
//! ```

use renorm::graphs::{allocate_epsilon, graph_homogeneity, second_order_chaos_terms};

fn main() {
    let (k, l) = (2u32, 3u32);
    println!("chaos components of the (k, l) = ({}, {}) second-order symbol:", k, l);
    let terms = second_order_chaos_terms(k, l).unwrap();
    for term in &terms {
        let g = allocate_epsilon(&term.graph).unwrap();
        println!(
            "  chaos {}: p={} q={} n={} pairing={} multiplicity={} alpha={} prefactor=eps^({})",
            term.chaos_order(),
            term.p,
            term.q,
            term.n,
            term.pairing,
            term.multiplicity,
            graph_homogeneity(&g),
            g.eps_prefactor,
        );
    }

    let top = terms.iter().find(|t| t.n == 0).unwrap();
    println!("\nDOT export of the full-Wick component:\n{}", top.graph.to_dot());
}
