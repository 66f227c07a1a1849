//! ε-allocation onto noise edges and the graph homogeneity α.

use super::{LabelledGraph, Provenance, Role};
use crate::error::GraphError;
use crate::exact::ExactValue;

/// One `(1/2 - δ)` power of ε moved from the prefactor into an edge, lowering
/// its degree from 3 to `5/2 + δ`.
fn reduce_edge(g: &mut LabelledGraph, edge: usize) {
    let piece = ExactValue::new(crate::exact::ratio(1, 2), 0, -1); // 1/2 - δ
    let e = &mut g.edges[edge];
    debug_assert!(e.smoothed);
    e.degree -= &piece;
    e.eps_absorbed += &piece;
    g.eps_prefactor -= &piece;
}

/// Distribute the positive ε powers coming from the `E` operators onto
/// noise-adjacent edges.
///
/// First order: `2k-2` of the `2k+1-n` legs are reduced to `5/2 + δ`, the
/// remaining `3-n` stay at degree 3, and the prefactor keeps `(2k-2)·δ`.
///
/// Second order: the `p+q+n-4-δ_τ` half-pieces split as
/// `(p+p'-2-1_{l odd})` to the inner (`v★`) side and `(q+q'-1-1_{k even})`
/// to the outer side; contracted legs are reduced before external ones, so
/// `2+1_{l odd}` inner and `1+1_{k even}` outer legs end at degree 3, and the
/// leftover prefactor is `(p+q+n-4-δ_τ)·δ ≥ 0`.
pub fn allocate_epsilon(g: &LabelledGraph) -> Result<LabelledGraph, GraphError> {
    let mut out = g.clone();
    match g.provenance.clone() {
        Provenance::FirstOrder { k, .. } => {
            let legs: Vec<usize> = leg_indices(g, None);
            let reduce = (2 * k as i64 - 2).max(0) as usize;
            debug_assert!(reduce <= legs.len());
            for &e in legs.iter().take(reduce) {
                reduce_edge(&mut out, e);
            }
        }
        Provenance::SecondOrder { k, l, .. } => {
            let v_up = g.v_star_upper().ok_or(GraphError::UnrecognizedShape)?;
            let v_low = g.v_star_lower().ok_or(GraphError::UnrecognizedShape)?;
            let inner_pieces = l as i64 - 2 - (l % 2) as i64;
            let outer_pieces = k as i64 - 1 - ((k + 1) % 2) as i64;
            if inner_pieces < 0 {
                return Err(GraphError::NegativePieces(inner_pieces));
            }
            if outer_pieces < 0 {
                return Err(GraphError::NegativePieces(outer_pieces));
            }
            allocate_side(&mut out, v_up, inner_pieces as usize)?;
            allocate_side(&mut out, v_low, outer_pieces as usize)?;
        }
        Provenance::Constant { .. } | Provenance::Synthetic(_) => {
            return Err(GraphError::UnrecognizedShape)
        }
    }
    if !out.eps_prefactor.is_componentwise_nonneg() {
        return Err(GraphError::OverAbsorb);
    }
    out.allocated = true;
    Ok(out)
}

/// Noise-leg edge indices attached to `target` (or anywhere if `None`),
/// contracted legs first, in deterministic edge order.
fn leg_indices(g: &LabelledGraph, target: Option<usize>) -> Vec<usize> {
    let mut contracted = Vec::new();
    let mut external = Vec::new();
    for (i, e) in g.edges.iter().enumerate() {
        if !e.counts() {
            continue;
        }
        if let Some(t) = target {
            if e.head != t {
                continue;
            }
        }
        match g.roles[e.tail] {
            Role::ContractedNoise => contracted.push(i),
            Role::ExternalNoise => external.push(i),
            _ => {}
        }
    }
    contracted.extend(external);
    contracted
}

fn allocate_side(g: &mut LabelledGraph, star: usize, pieces: usize) -> Result<(), GraphError> {
    let legs = leg_indices(g, Some(star));
    if pieces > legs.len() {
        return Err(GraphError::NegativePieces(pieces as i64 - legs.len() as i64));
    }
    for &e in legs.iter().take(pieces) {
        reduce_edge(g, e);
    }
    Ok(())
}

/// The scaling exponent of the moment bound:
/// `α = 5 |H_in ∖ H_⋆| + (5/2) |H_ex| - Σ_e a_e`, with contracted noise
/// counting as internal and hyper-edge degrees included in the sum.
pub fn graph_homogeneity(g: &LabelledGraph) -> ExactValue {
    let mut internal_not_star = 0i64;
    let mut external = 0i64;
    for r in &g.roles {
        match r {
            Role::VStarUpper | Role::Internal | Role::ContractedNoise => internal_not_star += 1,
            Role::ExternalNoise => external += 1,
            Role::Root | Role::VStarLower => {}
        }
    }
    let mut alpha = ExactValue::from_int(5 * internal_not_star)
        + &ExactValue::from_ratio(5 * external, 2);
    for e in &g.edges {
        if e.counts() {
            alpha -= &e.degree;
        }
    }
    for h in &g.hyper_edges {
        alpha -= &h.degree();
    }
    alpha
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{first_order_graph, second_order_chaos_terms};

    #[test]
    fn first_order_allocation_degrees() {
        // E Ψ⁵ (k=2, n=0): degrees {3,3,3, 5/2+δ, 5/2+δ}, prefactor ε^{2δ}
        let g = allocate_epsilon(&first_order_graph(2, 0).unwrap()).unwrap();
        let mut threes = 0;
        let mut reduced = 0;
        for e in g.edges.iter().filter(|e| e.counts()) {
            if e.degree == ExactValue::from_int(3) {
                threes += 1;
            } else if e.degree == ExactValue::new(crate::exact::ratio(5, 2), 0, 1) {
                reduced += 1;
            }
        }
        assert_eq!((threes, reduced), (3, 2));
        assert_eq!(g.eps_prefactor, ExactValue::delta(2));
    }

    #[test]
    fn first_order_alpha_closed_form() {
        for k in 1..=6u32 {
            for n in 0..=3u32 {
                if 2 * k + 1 <= n {
                    continue;
                }
                let g = allocate_epsilon(&first_order_graph(k, n).unwrap()).unwrap();
                let alpha = graph_homogeneity(&g);
                let expected = ExactValue::new(
                    crate::exact::ratio(-(3 - n as i64), 2),
                    0,
                    -(2 * k as i64 - 2),
                );
                assert_eq!(alpha, expected, "(k,n)=({},{})", k, n);
            }
        }
    }

    #[test]
    fn second_order_alpha_closed_form() {
        for (k, l) in [(2u32, 2u32), (1, 3), (2, 3), (3, 3), (2, 4), (4, 3), (4, 4), (2, 5)] {
            let delta_tau = ((k + l) % 2) as i64;
            for term in second_order_chaos_terms(k, l).unwrap() {
                let g = allocate_epsilon(&term.graph).unwrap();
                let alpha = graph_homogeneity(&g);
                let pieces = (term.p + term.q + term.n) as i64 - 4 - delta_tau;
                let expected =
                    ExactValue::new(crate::exact::ratio(-delta_tau, 2), 0, -pieces);
                assert_eq!(alpha, expected, "(k,l)=({},{}) term p={} q={} n={}", k, l, term.p, term.q, term.n);
                assert_eq!(g.eps_prefactor, ExactValue::delta(pieces));
                assert!(g.eps_prefactor.is_componentwise_nonneg());
            }
        }
    }

    #[test]
    fn standard_phi43_graphs_get_no_epsilon() {
        // (1,3), (2,2), (2,3) top chaos: nothing to assign
        for (k, l) in [(1u32, 3u32), (2, 2), (2, 3)] {
            for term in second_order_chaos_terms(k, l).unwrap() {
                let g = allocate_epsilon(&term.graph).unwrap();
                if term.n == 0 {
                    assert!(g.eps_prefactor.is_zero());
                    assert!(g
                        .edges
                        .iter()
                        .filter(|e| e.counts())
                        .all(|e| e.eps_absorbed.is_zero()));
                }
            }
        }
    }

    #[test]
    fn single_leg_alpha() {
        // a lone Ψ graph: α = 5/2 - 3 = -1/2
        let g = allocate_epsilon(&first_order_graph(1, 2).unwrap()).unwrap();
        assert_eq!(graph_homogeneity(&g), ExactValue::from_ratio(-1, 2));
    }
}
